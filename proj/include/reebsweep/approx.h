#pragma once

#include "reebsweep/geometry.h"
#include "reebsweep/reeb_graph.h"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace reebsweep {

enum class Shape { circle, annulus, two_clusters, figure_eight };

std::string to_string(Shape shape);
Shape shape_from_string(const std::string& name);

/// Planar test shapes with known Reeb graphs, sampled with bounded noise.
///
/// circle:        radius `radius` around the origin.
/// annulus:       radii `inner_radius` <= r <= `radius`.
/// two_clusters:  two disks of radius `radius`, centres `separation` apart on the x axis.
/// figure_eight:  two regular 48-gons with circumradius `radius`, centred at
///                (0, ±radius) and sharing the vertex at the origin.
struct ShapeSampler {
    Shape shape = Shape::circle;
    double radius = 1.0;
    double inner_radius = 0.5;
    double separation = 4.0;
    std::size_t samples = 60;
    /// Every sample lies within `noise` of the shape.
    double noise = 0.0;
    std::uint64_t seed = 0;
    /// Curves only: equal arc-length spacing (with a seeded phase) instead of iid samples.
    bool evenly_spaced = false;

    std::vector<Point> sample() const;
    /// Points on the shape used to test that it is covered by the eps-balls.
    std::vector<std::vector<double>> probe_points() const;
    double distance_to_shape(std::span<const double> x) const;
};

struct ReebSummary {
    Betti betti;
    std::vector<double> critical_values;
};

/// Reeb graph of the shape itself under a planar affine f.
ReebSummary shape_ground_truth(const ShapeSampler& sampler, const AffineFunctional& f);

/// Critical values of g after pruning extremal leaves shorter than `min_span`:
/// minimum leaves ending in a merge and maximum leaves ending in a split.
/// Births and merges report the lower end of their vertex, deaths and
/// splits the upper end.
std::vector<double> significant_critical_values(const ReebGraph& g, double min_span);

struct ExperimentReport {
    ShapeSampler sampler;
    double eps = 0.0;
    double lipschitz = 0.0;
    /// k (eps + delta).
    double bound = 0.0;

    ReebSummary truth;
    ReebSummary computed;
    double computed_min = 0.0;
    double computed_max = 0.0;
    std::size_t pair_count = 0;
    std::size_t cell_count = 0;
    /// Largest distance from a computed critical value to the nearest true one.
    double max_displacement = 0.0;

    bool covering_ok = false;
    bool noise_ok = false;
    bool hypotheses_met() const { return covering_ok && noise_ok; }
    bool betti_match() const { return truth.betti == computed.betti; }
    bool displacement_ok() const;
    /// "pass", "fail" or "hypotheses unmet".
    std::string verdict() const;

    nlohmann::json to_json() const;
};

ExperimentReport run_experiment(const ShapeSampler& sampler, double eps, const AffineFunctional& f);

struct ExperimentConfig {
    ShapeSampler sampler;
    double eps = 0.1;
    std::vector<double> direction{0.0, 1.0};
    double offset = 0.0;
};

/// {"shape": ..., "radius": ..., "inner_radius": ..., "separation": ...,
///  "samples": ..., "noise": ..., "seed": ..., "evenly_spaced": ...,
///  "eps": ..., "direction": [...], "offset": ...}
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);

/// Fixed-width summary, one row per report.
std::string summary_table(const std::vector<ExperimentReport>& reports);

}  // namespace reebsweep
