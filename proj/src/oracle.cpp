#include "reebsweep/oracle.h"

#include "reebsweep/sweep.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace reebsweep {

namespace {

// Deliberately separate from UnionFindForest: ordered map, no ranks.
class MapDsu {
public:
    void add(PointId p) { parent_.emplace(p, p); }
    bool has(PointId p) const { return parent_.count(p) != 0; }
    PointId find(PointId p) {
        PointId r = p;
        while (parent_.at(r) != r) r = parent_.at(r);
        while (parent_.at(p) != r) {
            const PointId next = parent_.at(p);
            parent_.at(p) = r;
            p = next;
        }
        return r;
    }
    void unite(PointId a, PointId b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_.at(std::max(a, b)) = std::min(a, b);
    }
    Partition blocks() {
        std::map<PointId, std::vector<PointId>> by_root;
        for (const auto& [p, _] : parent_) by_root[find(p)].push_back(p);
        Partition out;
        for (auto& [r, block] : by_root) out.push_back(std::move(block));
        canonicalize(out);
        return out;
    }

private:
    std::map<PointId, PointId> parent_;
};

std::string partition_string(const Partition& p) {
    if (p.empty()) return "{}";
    std::ostringstream s;
    s << "{";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s << ",";
        for (PointId x : p[i]) s << x << (x == p[i].back() ? "" : " ");
    }
    s << "}";
    return s.str();
}

bool intersect(const std::vector<PointId>& a, const std::vector<PointId>& b) {
    std::vector<PointId> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return !out.empty();
}

std::vector<CellLink> link_by_intersection(const std::vector<ReebCell>& cells) {
    std::vector<CellLink> links;
    for (std::size_t c = 0; c + 1 < cells.size(); ++c) {
        const auto& lower = cells[c].components;
        const auto& upper = cells[c + 1].components;
        for (std::size_t i = 0; i < lower.size(); ++i) {
            for (std::size_t j = 0; j < upper.size(); ++j) {
                if (intersect(lower[i], upper[j])) links.push_back({c, i, j});
            }
        }
    }
    return links;
}

double level_in(const CellRange& r) { return r.sample_levels().front(); }

}  // namespace

namespace {

// Classes on a connected range [a, b] or (a, b) containing no endpoint in its
// interior: exactly the intervals covering [a, b] are active there.
Partition partition_over(double a, double b, std::span<const LabeledInterval> balls,
                         std::span<const LabeledInterval> pairs) {
    MapDsu dsu;
    for (const auto& i : balls) {
        if (i.lo <= a && b <= i.hi) dsu.add(i.label.p);
    }
    for (const auto& i : pairs) {
        if (i.lo <= a && b <= i.hi && dsu.has(i.label.p) && dsu.has(i.label.q)) dsu.unite(i.label.p, i.label.q);
    }
    return dsu.blocks();
}

// Every endpoint as a closed point and every gap between consecutive
// endpoints, in increasing order.  Gaps are evaluated symbolically, so two
// adjacent doubles still bound a nonempty gap.
std::vector<ReebCell> elementary_pieces(std::span<const LabeledInterval> balls,
                                        std::span<const LabeledInterval> pairs) {
    std::vector<double> ends;
    for (const auto& i : balls) ends.insert(ends.end(), {i.lo, i.hi});
    for (const auto& i : pairs) ends.insert(ends.end(), {i.lo, i.hi});
    std::sort(ends.begin(), ends.end());
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());

    std::vector<ReebCell> pieces;
    auto gap = [&](double a, double b) {
        pieces.push_back({{CellBound::open(a), CellBound::open(b)}, partition_over(a, b, balls, pairs)});
    };
    if (ends.empty()) {
        gap(-kInf, kInf);
        return pieces;
    }
    gap(-kInf, ends.front());
    for (std::size_t k = 0; k < ends.size(); ++k) {
        pieces.push_back({{CellBound::closed(ends[k]), CellBound::closed(ends[k])},
                          partition_over(ends[k], ends[k], balls, pairs)});
        gap(ends[k], k + 1 < ends.size() ? ends[k + 1] : kInf);
    }
    return pieces;
}

double witness_of(const CellRange& r) {
    if (r.lo.inclusive) return r.lo.value;
    if (r.hi.inclusive) return r.hi.value;
    return r.sample_levels().front();
}

bool piece_inside(const CellRange& piece, const CellRange& cell) {
    if (piece.lo.inclusive) return cell.contains(piece.lo.value);
    return cell.lo.value <= piece.lo.value && piece.hi.value <= cell.hi.value &&
           !(cell.lo.value == cell.hi.value);
}

}  // namespace

LevelPartition partition_at(double x, std::span<const LabeledInterval> balls,
                            std::span<const LabeledInterval> pairs) {
    return {x, partition_over(x, x, balls, pairs)};
}

ReebGraph naive_reeb(std::span<const LabeledInterval> balls, std::span<const LabeledInterval> pairs) {
    std::vector<ReebCell> cells;
    for (auto& piece : elementary_pieces(balls, pairs)) {
        if (!cells.empty() && cells.back().components == piece.components) {
            cells.back().range.hi = piece.range.hi;
        } else {
            cells.push_back(std::move(piece));
        }
    }
    auto links = link_by_intersection(cells);
    return ReebGraph::from_cells(std::move(cells), std::move(links));
}

ReebGraph naive_reeb(std::span<const LabeledInterval> events) {
    std::vector<LabeledInterval> balls;
    std::vector<LabeledInterval> pairs;
    for (const auto& e : events) (e.label.is_pair() ? pairs : balls).push_back(e);
    return naive_reeb(balls, pairs);
}

std::optional<GraphMismatch> compare_graphs(const ReebGraph& expected, const ReebGraph& actual) {
    const auto& ec = expected.cells();
    const auto& ac = actual.cells();
    const std::size_t common = std::min(ec.size(), ac.size());
    for (std::size_t c = 0; c < common; ++c) {
        if (ec[c].range != ac[c].range) {
            return GraphMismatch{level_in(ec[c].range), "cell " + std::to_string(c) + " is " +
                                                             ac[c].range.to_string() + ", expected " +
                                                             ec[c].range.to_string()};
        }
        if (ec[c].components != ac[c].components) {
            return GraphMismatch{level_in(ec[c].range),
                                 "cell " + std::to_string(c) + " " + ec[c].range.to_string() +
                                     " has components " + partition_string(ac[c].components) +
                                     ", expected " + partition_string(ec[c].components)};
        }
    }
    if (ec.size() != ac.size()) {
        const auto& longer = ec.size() > ac.size() ? ec : ac;
        return GraphMismatch{level_in(longer[common].range),
                             "cell count " + std::to_string(ac.size()) + ", expected " +
                                 std::to_string(ec.size())};
    }
    std::set<CellLink> e_links(expected.links().begin(), expected.links().end());
    std::set<CellLink> a_links(actual.links().begin(), actual.links().end());
    if (e_links != a_links) {
        std::vector<CellLink> diff;
        std::set_symmetric_difference(e_links.begin(), e_links.end(), a_links.begin(), a_links.end(),
                                      std::back_inserter(diff));
        const CellLink& l = diff.front();
        const bool missing = e_links.count(l) != 0;
        return GraphMismatch{ec[l.cell].range.hi.value,
                             std::string(missing ? "missing" : "unexpected") + " edge between cell " +
                                 std::to_string(l.cell) + " component " +
                                 std::to_string(l.lower_component) + " and cell " +
                                 std::to_string(l.cell + 1) + " component " +
                                 std::to_string(l.upper_component)};
    }
    return std::nullopt;
}

bool StateReport::ok() const {
    return std::all_of(clauses.begin(), clauses.end(), [](const ClauseResult& c) { return c.passed; });
}

nlohmann::json StateReport::to_json() const {
    static constexpr const char* names[] = {"i", "ii", "iii", "iv"};
    nlohmann::json out = nlohmann::json::object();
    for (std::size_t k = 0; k < clauses.size(); ++k) {
        const ClauseResult& c = clauses[k];
        nlohmann::json entry = {{"passed", c.passed}};
        if (!c.passed) {
            entry["detail"] = c.detail;
            if (c.witness) entry["witness"] = *c.witness;
            entry["expected"] = c.expected;
            entry["actual"] = c.actual;
        }
        out[names[k]] = entry;
    }
    out["ok"] = ok();
    return out;
}

StateReport check_state(const SweepState& state, std::span<const LabeledInterval> processed) {
    StateReport report;
    std::vector<LabeledInterval> balls;
    std::vector<LabeledInterval> pairs;
    for (const auto& e : processed) (e.label.is_pair() ? pairs : balls).push_back(e);

    std::vector<const Cell*> cells;
    for (const Cell& c : state.cells()) cells.push_back(&c);
    std::vector<Partition> stored;
    for (const Cell* c : cells) stored.push_back(c->uf.partition());

    auto fail = [](ClauseResult& clause, std::optional<double> x, std::string detail,
                   Partition expected = {}, Partition actual = {}) {
        if (!clause.passed) return;
        clause.passed = false;
        clause.witness = x;
        clause.detail = std::move(detail);
        clause.expected = std::move(expected);
        clause.actual = std::move(actual);
    };

    // The cells must tile the line in order.
    for (std::size_t k = 0; k < cells.size(); ++k) {
        const CellRange& r = cells[k]->range;
        const bool first_ok = k > 0 || r.lo == CellBound::open(-kInf);
        const bool last_ok = k + 1 < cells.size() || r.hi == CellBound::open(kInf);
        bool glued = true;
        if (k + 1 < cells.size()) {
            const CellBound& next = cells[k + 1]->range.lo;
            glued = next.value == r.hi.value && next.inclusive != r.hi.inclusive;
        }
        if (!first_ok || !last_ok || !glued) {
            fail(report.clauses[0], std::nullopt, "cells do not tile the line at cell " + r.to_string());
        }
    }

    // (i) Every elementary piece of the processed endpoints lies in one cell
    // and carries that cell's partition.
    {
        const auto pieces = elementary_pieces(balls, pairs);
        std::size_t k = 0;
        for (const ReebCell& piece : pieces) {
            while (k < cells.size() && !piece_inside(piece.range, cells[k]->range) &&
                   cells[k]->range.hi.value <= piece.range.lo.value) {
                ++k;
            }
            if (k == cells.size() || !piece_inside(piece.range, cells[k]->range)) {
                fail(report.clauses[0], witness_of(piece.range),
                     "piece " + piece.range.to_string() + " is not inside a single cell");
                break;
            }
            if (piece.components != stored[k]) {
                fail(report.clauses[0], witness_of(piece.range),
                     "cell " + cells[k]->range.to_string() + " disagrees with the level partition on " +
                         piece.range.to_string(),
                     piece.components, stored[k]);
            }
        }
    }

    // (ii)
    for (std::size_t k = 0; k + 1 < cells.size(); ++k) {
        if (stored[k] == stored[k + 1]) {
            fail(report.clauses[1], cells[k]->range.hi.value,
                 "cells " + cells[k]->range.to_string() + " and " + cells[k + 1]->range.to_string() +
                     " store the same partition",
                 stored[k], stored[k + 1]);
        }
    }

    // (iii)
    for (std::size_t k = 0; k + 1 < cells.size(); ++k) {
        const UnionFindForest& lower = cells[k]->uf;
        const UnionFindForest& upper = cells[k + 1]->uf;
        std::set<std::pair<PointId, PointId>> expected;
        lower.for_each_member([&](PointId p) {
            if (upper.contains(p)) expected.emplace(lower.root_of(p), upper.root_of(p));
        });
        const auto stored_edges = cells[k + 1]->link_pred.edges();
        std::set<std::pair<PointId, PointId>> actual(stored_edges.begin(), stored_edges.end());
        if (expected != actual || actual.size() != stored_edges.size()) {
            fail(report.clauses[2], cells[k]->range.hi.value,
                 "link graph between " + cells[k]->range.to_string() + " and " +
                     cells[k + 1]->range.to_string() + " has " + std::to_string(actual.size()) +
                     " edges, expected " + std::to_string(expected.size()),
                 stored[k], stored[k + 1]);
        }
    }

    // (iv) Refinement is transitive and every point of a later cell is stored
    // in each earlier cell not left of the last event, so consecutive pairs suffice.
    if (!processed.empty()) {
        const LabeledInterval& last = processed.back();
        for (std::size_t k = 0; k + 1 < cells.size(); ++k) {
            if (cells[k]->range.entirely_left_of(last)) continue;
            const UnionFindForest& lower = cells[k]->uf;
            const UnionFindForest& upper = cells[k + 1]->uf;
            std::map<PointId, PointId> lower_root_of_block;
            bool ok = true;
            upper.for_each_member([&](PointId r) {
                if (!ok) return;
                if (!lower.contains(r)) {
                    ok = false;
                    return;
                }
                auto [it, inserted] = lower_root_of_block.emplace(upper.root_of(r), lower.root_of(r));
                if (it->second != lower.root_of(r)) ok = false;
            });
            if (!ok) {
                fail(report.clauses[3], cells[k]->range.hi.value,
                     "cell " + cells[k + 1]->range.to_string() + " does not refine " +
                         cells[k]->range.to_string(),
                     stored[k], stored[k + 1]);
            }
        }
    }
    return report;
}

}  // namespace reebsweep
