#pragma once

#include "reebsweep/geometry.h"
#include "reebsweep/sweep.h"

#include <cstdint>
#include <ostream>
#include <vector>

namespace reebsweep {

/// Random planar instance: n points uniform in [0, length] x [0, height]
/// with eps chosen so the expected number of intersecting pairs is about t.
struct InstanceSpec {
    std::size_t n = 0;
    double target_pairs = 0.0;
    double eps = 1.0;
    double height = 1.0;
    std::uint64_t seed = 0;
};

/// Probability that two uniform points of a length x height box are within distance 2 eps.
double pair_overlap_probability(double length, double height, double eps);

/// Box length for which n points produce about `target_pairs` intersecting pairs.
double box_length_for_target(std::size_t n, double target_pairs, double height, double eps);

std::vector<Point> generate_instance(const InstanceSpec& spec);

struct GridPoint {
    std::size_t n = 0;
    double target_pairs = 0.0;
    /// Box height; f is the height coordinate.
    double height = 1.0;
};

struct ScalingRow {
    std::size_t n = 0;
    double target_pairs = 0.0;
    /// Pairs actually produced.
    std::size_t t = 0;
    std::uint64_t seed = 0;
    double eps = 0.0;
    double box_length = 0.0;
    double box_height = 0.0;
    std::size_t final_cells = 0;
    SweepCounters counters;
    /// Best of the timing repeats, bounds checks off.
    double wall_seconds = 0.0;

    double work() const { return static_cast<double>(n) * static_cast<double>(n + t); }
    double ops_ratio() const { return static_cast<double>(counters.union_find_ops()) / work(); }
    double time_ratio() const { return wall_seconds / work(); }
};

struct ScalingOptions {
    std::size_t timing_repeats = 3;
    /// Keep repeating short runs until this much time has been spent.
    double min_timing_seconds = 0.25;
    /// Counter pass with the per-event bounds asserted.
    bool check_bounds = true;
};

/// Two passes per instance: counters with bound checks on, then timing with them off.
std::vector<ScalingRow> run_scaling(const std::vector<GridPoint>& grid,
                                    const std::vector<std::uint64_t>& seeds,
                                    const ScalingOptions& options = {});

void write_csv(std::ostream& out, const std::vector<ScalingRow>& rows);

/// max / min over rows of the mean ops ratio per n.
double ops_ratio_spread(const std::vector<ScalingRow>& rows);

/// Least-squares slope of log(wall time) against log(n (n + t)), using the
/// per-n medians.
double time_slope(const std::vector<ScalingRow>& rows);

/// t = 5n in a box of height 16 and t = n^2 / 4 in a box of height 1, for each n.
std::vector<GridPoint> sparse_grid(const std::vector<std::size_t>& ns);
std::vector<GridPoint> dense_grid(const std::vector<std::size_t>& ns);

}  // namespace reebsweep
