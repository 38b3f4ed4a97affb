#include "reebsweep/bench.h"

#include "reebsweep/cell_bound.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <random>

namespace reebsweep {

namespace {

constexpr int kSimpsonIntervals = 2000;

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

double pair_overlap_probability(double length, double height, double eps) {
    const double reach2 = 4.0 * eps * eps;
    // Density of |dy| is 2 (H - b) / H^2; for fixed b the |dx| part integrates in closed form.
    auto integrand = [&](double b) {
        const double a = std::min(length, std::sqrt(std::max(0.0, reach2 - b * b)));
        const double px = 2.0 * (length * a - 0.5 * a * a) / (length * length);
        return 2.0 * (height - b) / (height * height) * px;
    };
    const double h = height / kSimpsonIntervals;
    double sum = integrand(0.0) + integrand(height);
    for (int i = 1; i < kSimpsonIntervals; ++i) sum += (i % 2 ? 4.0 : 2.0) * integrand(i * h);
    return sum * h / 3.0;
}

double box_length_for_target(std::size_t n, double target_pairs, double height, double eps) {
    if (n < 2) return 1.0;
    const double all_pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    const double p = std::clamp(target_pairs / all_pairs, 0.0, 1.0);
    double lo = 1e-9;
    double hi = 1.0;
    while (pair_overlap_probability(hi, height, eps) > p && hi < 1e12) hi *= 2.0;
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (pair_overlap_probability(mid, height, eps) > p) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<Point> generate_instance(const InstanceSpec& spec) {
    const double length = box_length_for_target(spec.n, spec.target_pairs, spec.height, spec.eps);
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> ux(0.0, length);
    std::uniform_real_distribution<double> uy(0.0, spec.height);
    std::vector<Point> points;
    points.reserve(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        const double x = ux(rng);
        const double y = uy(rng);
        points.push_back({static_cast<PointId>(i), {x, y}});
    }
    return points;
}

std::vector<ScalingRow> run_scaling(const std::vector<GridPoint>& grid,
                                    const std::vector<std::uint64_t>& seeds,
                                    const ScalingOptions& options) {
    using Clock = std::chrono::steady_clock;
    std::vector<ScalingRow> rows;
    for (const GridPoint& g : grid) {
        for (std::uint64_t seed : seeds) {
            InstanceSpec spec{g.n, g.target_pairs, 1.0, g.height, seed};
            const auto points = generate_instance(spec);
            const auto f = AffineFunctional::projection(2, 1);
            const auto inputs = build_inputs(points, spec.eps, f);

            ScalingRow row;
            row.n = g.n;
            row.target_pairs = g.target_pairs;
            row.t = inputs.pairs.size();
            row.seed = seed;
            row.eps = spec.eps;
            row.box_length = box_length_for_target(g.n, g.target_pairs, spec.height, spec.eps);
            row.box_height = spec.height;

            SweepOptions counted;
            counted.check_bounds = options.check_bounds;
            const SweepState state = sweep(inputs, counted);
            row.counters = state.counters();
            row.final_cells = state.cells().size();

            SweepOptions timed;
            timed.check_bounds = false;
            row.wall_seconds = kInf;
            double spent = 0.0;
            for (std::size_t r = 0; r < std::max<std::size_t>(1, options.timing_repeats) ||
                                    spent < options.min_timing_seconds;
                 ++r) {
                const auto start = Clock::now();
                const SweepState s = sweep(inputs, timed);
                const std::chrono::duration<double> took = Clock::now() - start;
                row.wall_seconds = std::min(row.wall_seconds, took.count());
                spent += took.count();
            }
            rows.push_back(row);
        }
    }
    return rows;
}

void write_csv(std::ostream& out, const std::vector<ScalingRow>& rows) {
    out << "n,target_t,t,seed,eps,box_length,box_height,cells,events,make_set,unions,find_set,splits,deletes,"
           "finger_advances,neighbor_merge_length,max_cells_touched,max_link_edges,"
           "max_pair_neighbor_sum,uf_ops,ops_ratio,wall_seconds,time_ratio\n";
    for (const ScalingRow& r : rows) {
        const SweepCounters& c = r.counters;
        out << r.n << ',' << r.target_pairs << ',' << r.t << ',' << r.seed << ',' << r.eps << ','
            << r.box_length << ',' << r.box_height << ',' << r.final_cells << ',' << c.events << ',' << c.make_set << ','
            << c.unions << ',' << c.find_set << ',' << c.splits << ',' << c.deletes << ','
            << c.finger_advances << ',' << c.neighbor_merge_length << ',' << c.max_cells_touched
            << ',' << c.max_link_edges << ',' << c.max_pair_neighbor_sum << ','
            << c.union_find_ops() << ',' << r.ops_ratio() << ',' << r.wall_seconds << ','
            << r.time_ratio() << '\n';
    }
}

double ops_ratio_spread(const std::vector<ScalingRow>& rows) {
    std::map<std::size_t, std::vector<double>> by_n;
    for (const auto& r : rows) by_n[r.n].push_back(r.ops_ratio());
    double lo = kInf;
    double hi = 0.0;
    for (auto& [n, ratios] : by_n) {
        double mean = 0.0;
        for (double x : ratios) mean += x;
        mean /= static_cast<double>(ratios.size());
        lo = std::min(lo, mean);
        hi = std::max(hi, mean);
    }
    return by_n.empty() ? 1.0 : hi / lo;
}

double time_slope(const std::vector<ScalingRow>& rows) {
    std::map<std::size_t, std::pair<std::vector<double>, std::vector<double>>> by_n;
    for (const auto& r : rows) {
        by_n[r.n].first.push_back(std::log(r.work()));
        by_n[r.n].second.push_back(std::log(r.wall_seconds));
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (auto& [n, v] : by_n) {
        xs.push_back(median(v.first));
        ys.push_back(median(v.second));
    }
    if (xs.size() < 2) return 0.0;
    const double k = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= k;
    my /= k;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
}

std::vector<GridPoint> sparse_grid(const std::vector<std::size_t>& ns) {
    std::vector<GridPoint> g;
    for (std::size_t n : ns) g.push_back({n, 5.0 * static_cast<double>(n), 16.0});
    return g;
}

std::vector<GridPoint> dense_grid(const std::vector<std::size_t>& ns) {
    std::vector<GridPoint> g;
    for (std::size_t n : ns) g.push_back({n, 0.25 * static_cast<double>(n) * static_cast<double>(n), 1.0});
    return g;
}

}  // namespace reebsweep
