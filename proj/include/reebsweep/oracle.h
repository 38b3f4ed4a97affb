#pragma once

#include "reebsweep/geometry.h"
#include "reebsweep/reeb_graph.h"
#include "reebsweep/union_find.h"

#include <json.hpp>

#include <array>
#include <optional>
#include <span>
#include <string>

namespace reebsweep {

class SweepState;

/// Level x together with the classes of ~_x on the points whose ball
/// interval contains x.
struct LevelPartition {
    double level = 0.0;
    Partition classes;
};

/// Brute force: a fresh union-find over the active points, unioned over the
/// active pair intervals.
LevelPartition partition_at(double x, std::span<const LabeledInterval> balls,
                            std::span<const LabeledInterval> pairs);

/// Reeb graph straight from the definition: partitions at every endpoint and
/// on every open gap between endpoints, equal neighbors fused, consecutive
/// pieces linked by block intersection.  Accepts events of both kinds in one list.
ReebGraph naive_reeb(std::span<const LabeledInterval> balls, std::span<const LabeledInterval> pairs);
ReebGraph naive_reeb(std::span<const LabeledInterval> events);

struct GraphMismatch {
    double level = 0.0;
    std::string detail;
};

/// First difference between two graphs, cell by cell (bounds, component
/// families, edge sets), with a level inside the offending cell.
std::optional<GraphMismatch> compare_graphs(const ReebGraph& expected, const ReebGraph& actual);

struct ClauseResult {
    bool passed = true;
    std::optional<double> witness;
    std::string detail;
    Partition expected;
    Partition actual;
};

/// One entry per clause: (i) cell partitions match the level partitions,
/// (ii) consecutive cells differ, (iii) link edges are exactly the
/// intersecting blocks, (iv) right of the last event, later cells refine
/// earlier ones.
struct StateReport {
    std::array<ClauseResult, 4> clauses;
    bool ok() const;
    nlohmann::json to_json() const;
};

/// Checks the invariants of a sweep snapshot against the events processed so far.
StateReport check_state(const SweepState& state, std::span<const LabeledInterval> processed);

}  // namespace reebsweep
