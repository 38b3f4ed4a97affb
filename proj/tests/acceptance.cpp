// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "reebsweep/approx.h"
#include "reebsweep/bench.h"
#include "reebsweep/errors.h"
#include "reebsweep/oracle.h"
#include "reebsweep/reeb_graph.h"
#include "reebsweep/sweep.h"
#include "test_support.h"

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>
#include <string>

using namespace reebsweep;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Largest per-event values seen anywhere, checked against the bounds at the end.
struct BoundLog {
    std::size_t instances = 0;
    std::size_t violations = 0;
    std::string first_violation;

    void record(const SweepState& s) {
        ++instances;
        const auto n = static_cast<std::uint64_t>(s.point_count());
        const auto& c = s.counters();
        if (c.max_cells_touched > 2 * n || c.max_link_edges > n || (n > 0 && c.max_pair_neighbor_sum > 3 * n - 1)) {
            note("counters exceed the bounds at n=" + std::to_string(n));
        }
    }
    void note(const std::string& what) {
        if (violations++ == 0) first_violation = what;
    }
};

BoundLog bounds;

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
    if (!ok) ++failures;
}

SweepState checked_sweep(const IntervalInputs& in, SweepOptions opt = {}, const SweepObserver& obs = {}) {
    try {
        SweepState s = sweep(in, opt, obs);
        bounds.record(s);
        return s;
    } catch (const InvariantViolation& e) {
        bounds.note(e.what());
        throw;
    }
}

std::string families(const SweepState& s) {
    std::ostringstream o;
    for (const Cell& c : s.cells()) {
        o << '|';
        for (const auto& block : c.uf.partition()) {
            o << '{';
            for (PointId p : block) o << "pqrs"[p];
            o << '}';
        }
    }
    return o.str() + '|';
}

void four_point_example() {
    const auto start = Clock::now();
    const auto points = testing::four_points();
    const AffineFunctional f = AffineFunctional::projection(2, 1);
    const IntervalInputs in = build_inputs(points, 1.0, f);
    std::vector<std::string> problems;

    const auto events = sort_events(in.balls, in.pairs);
    const std::vector<Label> order{Label::ball(1), Label::ball(0), Label::pair(0, 1),
                                   Label::ball(2), Label::pair(1, 2), Label::pair(0, 2),
                                   Label::ball(3), Label::pair(0, 3), Label::pair(2, 3)};
    bool order_ok = events.size() == order.size();
    for (std::size_t i = 0; order_ok && i < order.size(); ++i) order_ok = events[i].label == order[i];
    if (!order_ok) problems.push_back("event order");

    struct Drawn {
        Label label;
        double lo, hi;
    };
    const std::vector<Drawn> drawn{{Label::pair(0, 1), 0.1, 0.5},
                                   {Label::pair(1, 2), 0.3, 0.6},
                                   {Label::pair(0, 2), 0.75, 1.55},
                                   {Label::pair(0, 3), 1.0, 2.0},
                                   {Label::pair(2, 3), 1.09, 2.21}};
    double worst_drawn = 0.0;
    double worst_sampled = 0.0;
    for (const Drawn& d : drawn) {
        const auto it = std::find_if(in.pairs.begin(), in.pairs.end(),
                                     [&](const LabeledInterval& e) { return e.label == d.label; });
        if (it == in.pairs.end()) {
            problems.push_back("missing pair " + d.label.to_string());
            continue;
        }
        worst_drawn = std::max({worst_drawn, std::abs(it->lo - d.lo), std::abs(it->hi - d.hi)});
        const auto [lo, hi] = testing::sampled_lens_extent(points[d.label.p], points[d.label.q], 1.0, f, 1000000);
        worst_sampled = std::max({worst_sampled, std::abs(it->lo - lo), std::abs(it->hi - hi)});
    }
    if (worst_drawn > 1e-2) problems.push_back("pair extents off the drawn values");
    if (worst_sampled > 1e-9) problems.push_back("pair extents off the sampled lens");

    const SweepState s = checked_sweep(in);
    const std::string fam = families(s);
    const std::string want = "||{q}|{p}{q}|{pq}|{pqr}|{p}{qr}|{p}{r}|{pr}|{prs}|{rs}|{r}{s}|{s}||";
    if (fam != want) problems.push_back("families " + fam);
    if (s.cells().size() != 13) problems.push_back(std::to_string(s.cells().size()) + " cells");
    const Betti b = betti(extract(s));
    if (!(b == Betti{1, 1})) problems.push_back("betti (" + std::to_string(b.b0) + "," + std::to_string(b.b1) + ")");

    const double secs = seconds_since(start);
    if (secs >= 1.0) problems.push_back("took " + std::to_string(secs) + " s");
    std::ostringstream d;
    d << "13 cells, b=(" << b.b0 << "," << b.b1 << "), drawn err " << worst_drawn << ", sampled err "
      << worst_sampled << ", " << secs << " s";
    for (const auto& p : problems) d << "; " << p;
    report(problems.empty(), "four-point-golden", d.str());
}

void oracle_equivalence() {
    const auto start = Clock::now();
    std::size_t runs = 0;
    std::size_t mismatches = 0;
    std::string first;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        for (std::size_t n = 3; n <= 12; ++n) {
            const auto inst = testing::random_instance(seed * 16 + n, n);
            const IntervalInputs in = build_inputs(inst.points, inst.eps, inst.f);
            ++runs;
            const auto m = compare_graphs(naive_reeb(in.balls, in.pairs), extract(checked_sweep(in)));
            if (m && mismatches++ == 0) {
                first = "seed " + std::to_string(seed) + " n " + std::to_string(n) + ": " + m->detail;
            }
        }
    }
    const double secs = seconds_since(start);
    std::ostringstream d;
    d << runs << " instances, " << mismatches << " mismatches, " << secs << " s";
    if (!first.empty()) d << "; first: " << first;
    report(mismatches == 0 && secs < 120.0, "oracle-equivalence", d.str());
}

bool fault_detected(const IntervalInputs& in, FaultInjection faults) {
    SweepOptions opt;
    opt.faults = faults;
    bool detected = false;
    try {
        sweep(in, opt, [&](const SweepState& s, std::span<const LabeledInterval> done) {
            if (!check_state(s, done).ok()) detected = true;
        });
    } catch (const std::logic_error&) {
        detected = true;
    }
    return detected;
}

void invariant_suite() {
    std::size_t snapshots = 0;
    std::size_t failed = 0;
    std::string first;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const std::size_t n = 1 + seed % 20;
        const auto inst = testing::random_instance(seed + 7000, n, seed % 7 == 6 ? 3 : 2);
        const IntervalInputs in = build_inputs(inst.points, inst.eps, inst.f);
        checked_sweep(in, {}, [&](const SweepState& s, std::span<const LabeledInterval> done) {
            ++snapshots;
            const StateReport r = check_state(s, done);
            for (std::size_t c = 0; c < r.clauses.size(); ++c) {
                if (r.clauses[c].passed) continue;
                if (failed++ == 0) {
                    first = "seed " + std::to_string(seed) + " clause " + std::to_string(c + 1) + ": " +
                            r.clauses[c].detail;
                }
            }
        });
    }
    const IntervalInputs fig = build_inputs(testing::four_points(), 1.0, AffineFunctional::projection(2, 1));
    const bool dropped = fault_detected(fig, {.drop_union_at_event = 2, .skip_split_at_event = {}});
    const bool skipped = fault_detected(fig, {.drop_union_at_event = {}, .skip_split_at_event = 1});
    std::ostringstream d;
    d << "200 instances, " << snapshots << " snapshots, " << failed << " clause failures; dropped union "
      << (dropped ? "detected" : "missed") << ", skipped split " << (skipped ? "detected" : "missed");
    if (!first.empty()) d << "; first: " << first;
    report(failed == 0 && dropped && skipped, "invariant-suite", d.str());
}

void component_bijection() {
    std::size_t wrong = 0;
    std::string first;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const std::size_t n = 1 + seed % 40;
        const std::size_t dim = 2 + seed % 3;
        const auto inst = testing::random_instance(seed + 20000, n, dim);
        const IntervalInputs in = build_inputs(inst.points, inst.eps, inst.f);
        const std::size_t got = betti(extract(checked_sweep(in))).b0;
        const std::size_t want = ball_component_count(inst.points, inst.eps);
        if (got != want && wrong++ == 0) {
            first = "seed " + std::to_string(seed) + ": b0 " + std::to_string(got) + " vs " + std::to_string(want);
        }
    }
    std::ostringstream d;
    d << "1000 instances, " << wrong << " mismatches";
    if (!first.empty()) d << "; first: " << first;
    report(wrong == 0, "component-bijection", d.str());
}

void complexity() {
    const auto start = Clock::now();
    const std::vector<std::size_t> ns{100, 200, 400, 800};
    const std::vector<std::uint64_t> seeds{1, 2, 3};
    bool ok = true;
    std::ostringstream d;
    for (const std::string regime : {"sparse", "dense"}) {
        std::vector<ScalingRow> rows;
        try {
            rows = run_scaling(regime == "sparse" ? sparse_grid(ns) : dense_grid(ns), seeds);
        } catch (const InvariantViolation& e) {
            bounds.note(e.what());
            ok = false;
            d << regime << ": " << e.what() << "; ";
            continue;
        }
        for (const ScalingRow& r : rows) {
            ++bounds.instances;
            const std::uint64_t n = r.n;
            if (r.counters.max_cells_touched > 2 * n || r.counters.max_link_edges > n ||
                r.counters.max_pair_neighbor_sum > 3 * n - 1) {
                bounds.note("bench counters exceed the bounds at n=" + std::to_string(n));
            }
        }
        const double spread = ops_ratio_spread(rows);
        const double slope = time_slope(rows);
        double c = 0.0;
        for (const ScalingRow& r : rows) c = std::max(c, r.ops_ratio());
        const bool regime_ok = spread <= 3.0 && slope >= 0.9 && slope <= 1.2;
        ok = ok && regime_ok;
        d << regime << ": C " << c << ", spread " << spread << ", slope " << slope
          << (regime_ok ? "" : " (out of range)") << "; ";
    }
    const double secs = seconds_since(start);
    d << secs << " s";
    report(ok && secs < 600.0, "complexity", d.str());
}

void approximation() {
    const AffineFunctional height = AffineFunctional::projection(2, 1);
    std::vector<std::string> problems;
    std::ostringstream d;

    ShapeSampler circle;
    circle.shape = Shape::circle;
    circle.samples = 60;
    circle.evenly_spaced = true;
    circle.seed = 1;
    const double eps = 0.2;
    const auto rc = run_experiment(circle, eps, height);
    if (!rc.hypotheses_met()) problems.push_back("circle hypotheses unmet");
    if (!(rc.computed.betti == Betti{1, 1})) problems.push_back("circle betti");
    if (std::abs(rc.computed_min + 1.0) > eps + 1e-9 || std::abs(rc.computed_max - 1.0) > eps + 1e-9) {
        problems.push_back("circle extrema");
    }
    d << "circle (" << rc.computed.betti.b0 << "," << rc.computed.betti.b1 << ") range [" << rc.computed_min
      << "," << rc.computed_max << "]";

    ShapeSampler clusters;
    clusters.shape = Shape::two_clusters;
    clusters.radius = 0.3;
    clusters.separation = 1.6;
    clusters.samples = 600;
    clusters.seed = 2;
    const auto rk = run_experiment(clusters, 0.1, height);
    if (!rk.hypotheses_met()) problems.push_back("clusters hypotheses unmet");
    if (!(rk.computed.betti == Betti{2, 0})) problems.push_back("clusters betti");
    d << ", clusters (" << rk.computed.betti.b0 << "," << rk.computed.betti.b1 << ")";

    ShapeSampler eight;
    eight.shape = Shape::figure_eight;
    eight.samples = 300;
    eight.evenly_spaced = true;
    eight.seed = 3;
    const auto re = run_experiment(eight, 0.1, height);
    if (!re.hypotheses_met()) problems.push_back("figure-eight hypotheses unmet");
    if (re.computed.betti.b1 != 2) problems.push_back("figure-eight b1");
    d << ", figure-eight b1=" << re.computed.betti.b1;

    for (const auto* r : {&rc, &rk, &re}) {
        if (r->verdict() != "pass") problems.push_back(to_string(r->sampler.shape) + " verdict " + r->verdict());
    }
    for (const auto& p : problems) d << "; " << p;
    report(problems.empty(), "approximation", d.str());
}

}  // namespace

int main() {
    const auto start = Clock::now();
    four_point_example();
    oracle_equivalence();
    invariant_suite();
    component_bijection();
    complexity();
    approximation();
    std::ostringstream d;
    d << bounds.instances << " instances with bounds asserted, " << bounds.violations << " violations";
    if (!bounds.first_violation.empty()) d << "; first: " << bounds.first_violation;
    report(bounds.violations == 0, "claim-bounds", d.str());
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << " in "
              << seconds_since(start) << " s" << std::endl;
    return failures == 0 ? 0 : 1;
}
