#include "reebsweep/sweep.h"

#include "reebsweep/errors.h"

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <cmath>
#include <string>

namespace reebsweep {

namespace {

bool event_less(const LabeledInterval& a, const LabeledInterval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    if (a.label.is_pair() != b.label.is_pair()) return !a.label.is_pair();
    if (a.label != b.label) return a.label < b.label;
    return a.hi < b.hi;
}

std::string describe(const LabeledInterval& i) {
    return "I_" + i.label.to_string() + " = [" + format_number(i.lo) + "," + format_number(i.hi) + "]";
}

nlohmann::json bound_json(const CellBound& b) {
    if (!b.finite()) return nullptr;
    return b.value;
}

}  // namespace

std::vector<LabeledInterval> sort_events(std::span<const LabeledInterval> balls,
                                         std::span<const LabeledInterval> pairs) {
    std::vector<LabeledInterval> events;
    events.reserve(balls.size() + pairs.size());
    events.insert(events.end(), balls.begin(), balls.end());
    events.insert(events.end(), pairs.begin(), pairs.end());
    std::sort(events.begin(), events.end(), event_less);
    return events;
}

SweepState::SweepState(std::size_t point_count, SweepOptions options)
    : point_count_(point_count), options_(options) {
    cells_.emplace_back();
    finger_ = cells_.begin();
    counters_.cells_created = 1;
}

PointId SweepState::find(Cell& cell, PointId p) {
    ++counters_.find_set;
    return cell.uf.find(p);
}

bool SweepState::fault_here(const std::optional<std::size_t>& at) const {
    return !fault_spent_ && at && *at == counters_.events;
}

void SweepState::advance_finger(double level) {
    while (!finger_->range.contains(level)) {
        ++finger_;
        ++counters_.finger_advances;
        if (finger_ == cells_.end()) throw InvariantViolation("finger ran past the last cell");
    }
}

void SweepState::process(const LabeledInterval& event) {
    if (!std::isfinite(event.lo) || !std::isfinite(event.hi) || event.lo > event.hi) {
        throw ContractViolation("event " + describe(event) + " is not a finite closed interval");
    }
    if (event.lo < last_left_) {
        throw ContractViolation("event " + describe(event) + " arrived out of left-endpoint order");
    }
    last_left_ = event.lo;
    advance_finger(event.lo);
    if (event.label.is_pair()) {
        process_pair(event);
    } else {
        process_ball(event);
    }
    if (options_.check_bounds) check_edge_bounds(event);
    ++counters_.events;
}

void SweepState::process_ball(const LabeledInterval& ball) {
    const PointId p = ball.label.p;
    std::size_t touched = 0;
    for (CellIt cell = finger_; cell != cells_.end() && cell->range.intersects(ball); ++cell) {
        ++touched;
        if (!cell->range.inside(ball)) {
            if (fault_here(options_.faults.skip_split_at_event)) {
                fault_spent_ = true;
            } else {
                cell = split_cell(cell, ball);
            }
        }
        if (cell->uf.contains(p)) {
            throw InvariantViolation("point " + std::to_string(p) + " already stored in a cell of " +
                                     describe(ball));
        }
        cell->uf.make_set(p);
        ++counters_.make_set;
        if (cell != cells_.begin()) {
            Cell& pred = *std::prev(cell);
            if (pred.uf.contains(p)) cell->link_pred.add_edge(find(pred, p), p);
        }
    }
    counters_.max_cells_touched = std::max<std::uint64_t>(counters_.max_cells_touched, touched);
    if (options_.check_bounds && touched > 2 * std::max<std::size_t>(point_count_, 1)) {
        throw InvariantViolation(describe(ball) + " intersected " + std::to_string(touched) +
                                 " cells, more than 2n");
    }
}

void SweepState::process_pair(const LabeledInterval& pair) {
    const PointId p = pair.label.p;
    const PointId q = pair.label.q;
    // Later cells of the range are never touched by the steps before them,
    // so they can be listed up front and their lookups issued ahead of time.
    span_.clear();
    for (CellIt cell = finger_; cell != cells_.end() && cell->range.intersects(pair); ++cell) {
        span_.push_back(cell);
    }
    bool first = true;
    const std::size_t touched = span_.size();
    std::size_t neighbor_sum = 0;
    for (std::size_t k = 0; k < span_.size(); ++k) {
        if (k + kPrefetchDistance < span_.size()) {
            span_[k + kPrefetchDistance]->uf.prefetch(p);
            span_[k + kPrefetchDistance]->uf.prefetch(q);
        }
        CellIt cell = span_[k];
        if (!cell->uf.contains(p) || !cell->uf.contains(q)) {
            throw ContractViolation(describe(pair) + " reaches a cell " + cell->range.to_string() +
                                    " that does not store both of its points");
        }
        const PointId rp = find(*cell, p);
        const PointId rq = find(*cell, q);
        if (options_.check_bounds) {
            const auto next = std::next(cell);
            if (next != cells_.end()) neighbor_sum += next->link_pred.left_degree(rp);
        }
        if (rp == rq) continue;
        if (fault_here(options_.faults.drop_union_at_event)) {
            fault_spent_ = true;
            continue;
        }
        union_step(cell, pair, first, rp, rq);
        first = false;
    }
    counters_.max_cells_touched = std::max<std::uint64_t>(counters_.max_cells_touched, touched);
    counters_.max_pair_neighbor_sum =
        std::max<std::uint64_t>(counters_.max_pair_neighbor_sum, neighbor_sum);
    if (!options_.check_bounds) return;
    const std::size_t n = std::max<std::size_t>(point_count_, 1);
    if (touched > 2 * n) {
        throw InvariantViolation(describe(pair) + " intersected " + std::to_string(touched) +
                                 " cells, more than 2n");
    }
    if (neighbor_sum > 3 * n - 1) {
        throw InvariantViolation(describe(pair) + " summed " + std::to_string(neighbor_sum) +
                                 " successor neighbors, more than 3n-1");
    }
}

SweepState::CellIt SweepState::union_step(CellIt cell, const LabeledInterval& pair, bool first,
                                          PointId root_p, PointId root_q) {
    if (!cell->range.inside(pair)) {
        if (fault_here(options_.faults.skip_split_at_event)) {
            fault_spent_ = true;
        } else {
            cell = split_cell(cell, pair);
        }
    }
    const auto merged = cell->uf.unite_roots(root_p, root_q);
    ++counters_.unions;
    counters_.neighbor_merge_length += cell->link_pred.merge_right_roots(merged.survivor, merged.absorbed);
    const auto next = std::next(cell);
    if (next != cells_.end()) {
        counters_.neighbor_merge_length +=
            next->link_pred.merge_left_roots(merged.survivor, merged.absorbed);
    }
    if (first && cell != cells_.begin() && same_partition_as_pred(cell)) {
        std::prev(cell)->range.hi = cell->range.hi;
        cell = delete_cell(cell);
    }
    return cell;
}

bool SweepState::same_partition_as_pred(CellIt cell) const {
    const Cell& pred = *std::prev(cell);
    if (pred.uf.size() != cell->uf.size() || pred.uf.set_count() != cell->uf.set_count()) return false;
    // With equal point sets, a perfect matching in the link graph means equal blocks.
    const LinkGraph& g = cell->link_pred;
    if (g.edge_count() != cell->uf.set_count() || !g.is_perfect_matching()) return false;
    bool same_points = true;
    cell->uf.for_each_member([&](PointId p) { same_points = same_points && pred.uf.contains(p); });
    return same_points;
}

SweepState::CellIt SweepState::delete_cell(CellIt cell) {
    if (cell == cells_.begin() || std::next(cell) == cells_.end()) {
        throw InvariantViolation("delete_cell needs both neighbors");
    }
    const CellIt pred = std::prev(cell);
    const CellIt succ = std::next(cell);
    succ->link_pred = LinkGraph::compose(cell->link_pred, succ->link_pred);
    if (finger_ == cell) finger_ = pred;
    cells_.erase(cell);
    ++counters_.deletes;
    return pred;
}

SweepState::CellIt SweepState::split_cell(CellIt cell, const LabeledInterval& interval) {
    if (!cell->range.intersects(interval) || cell->range.inside(interval)) {
        throw ContractViolation("split_cell needs a cell that meets but is not inside the interval");
    }
    ++counters_.splits;
    counters_.find_set += cell->uf.size();
    cell->uf.compress_all();

    const CellRange whole = cell->range;
    const bool has_left = whole.lo.value < interval.lo;
    const bool has_right = whole.hi.value > interval.hi;
    const std::vector<PointId> roots = cell->uf.roots();

    CellRange middle = whole;
    if (has_left) middle.lo = CellBound::closed(interval.lo);
    if (has_right) middle.hi = CellBound::closed(interval.hi);

    if (has_left) {
        Cell left;
        left.range = CellRange{whole.lo, CellBound::open(interval.lo)};
        left.uf = cell->uf;
        left.link_pred = std::move(cell->link_pred);
        cells_.insert(cell, std::move(left));
        cell->link_pred = LinkGraph::identity(roots);
        ++counters_.cells_created;
    }
    if (has_right) {
        Cell right;
        right.range = CellRange{CellBound::open(interval.hi), whole.hi};
        right.uf = cell->uf;
        right.link_pred = LinkGraph::identity(roots);
        cells_.insert(std::next(cell), std::move(right));
        ++counters_.cells_created;
    }
    cell->range = middle;
    return cell;
}

void SweepState::check_edge_bounds(const LabeledInterval& event) {
    CellIt cell = finger_;
    if (cell != cells_.begin()) --cell;
    for (; cell != cells_.end(); ++cell) {
        const std::uint64_t edges = cell->link_pred.edge_count();
        counters_.max_link_edges = std::max(counters_.max_link_edges, edges);
        if (edges > std::max<std::size_t>(point_count_, 1)) {
            throw InvariantViolation("link graph into " + cell->range.to_string() + " has " +
                                     std::to_string(edges) + " edges, more than n");
        }
        if (cell->range.lo.value > event.hi) break;
    }
}

nlohmann::json SweepState::to_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (const Cell& cell : cells_) {
        nlohmann::json link = nlohmann::json::array();
        for (const auto& [l, r] : cell.link_pred.edges()) link.push_back({l, r});
        out.push_back({{"lo", bound_json(cell.range.lo)},
                       {"lo_closed", cell.range.lo.inclusive},
                       {"hi", bound_json(cell.range.hi)},
                       {"hi_closed", cell.range.hi.inclusive},
                       {"partition", cell.uf.partition()},
                       {"roots", cell.uf.roots()},
                       {"link_pred", link}});
    }
    return {{"cells", out}};
}

void validate_inputs(const IntervalInputs& inputs) {
    if (inputs.balls.empty() && !inputs.pairs.empty()) {
        throw InputError("pair intervals given without any ball intervals");
    }
    absl::flat_hash_map<PointId, const LabeledInterval*> ball_of;
    for (const auto& b : inputs.balls) {
        if (b.label.is_pair()) throw InputError("ball list contains pair " + describe(b));
        if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || b.lo > b.hi) {
            throw InputError("invalid interval " + describe(b));
        }
        if (!ball_of.try_emplace(b.label.p, &b).second) {
            throw InputError("point " + std::to_string(b.label.p) + " has two ball intervals");
        }
    }
    for (const auto& t : inputs.pairs) {
        if (!t.label.is_pair() || t.label.p == t.label.q) {
            throw InputError("pair list contains non-pair " + describe(t));
        }
        if (!std::isfinite(t.lo) || !std::isfinite(t.hi) || t.lo > t.hi) {
            throw InputError("invalid interval " + describe(t));
        }
        auto ip = ball_of.find(t.label.p);
        auto iq = ball_of.find(t.label.q);
        if (ip == ball_of.end() || iq == ball_of.end()) {
            throw InputError(describe(t) + " refers to a point without a ball interval");
        }
        const double lo = std::max(ip->second->lo, iq->second->lo);
        const double hi = std::min(ip->second->hi, iq->second->hi);
        if (t.lo < lo || t.hi > hi) {
            throw InputError(describe(t) + " is not contained in both of its ball intervals");
        }
    }
}

SweepState sweep(const IntervalInputs& inputs, SweepOptions options, const SweepObserver& observer) {
    validate_inputs(inputs);
    const auto events = sort_events(inputs.balls, inputs.pairs);
    SweepState state(inputs.balls.size(), options);
    for (std::size_t i = 0; i < events.size(); ++i) {
        state.process(events[i]);
        if (observer) observer(state, std::span<const LabeledInterval>(events.data(), i + 1));
    }
    return state;
}

}  // namespace reebsweep
