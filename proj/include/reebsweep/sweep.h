#pragma once

#include "reebsweep/cell_bound.h"
#include "reebsweep/geometry.h"
#include "reebsweep/link_graph.h"
#include "reebsweep/union_find.h"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <list>
#include <optional>
#include <span>
#include <vector>

namespace reebsweep {

/// One interval of the partition of the real line.
struct Cell {
    CellRange range;
    UnionFindForest uf;
    /// G(pred, this).  Empty for the first cell.
    LinkGraph link_pred;
};

struct SweepCounters {
    std::uint64_t events = 0;
    std::uint64_t make_set = 0;
    std::uint64_t unions = 0;
    std::uint64_t find_set = 0;
    std::uint64_t splits = 0;
    std::uint64_t deletes = 0;
    std::uint64_t finger_advances = 0;
    /// Summed lengths of the neighbor lists merged during unions.
    std::uint64_t neighbor_merge_length = 0;
    std::uint64_t cells_created = 0;

    // Largest values seen for the per-event bounds.
    std::uint64_t max_cells_touched = 0;
    std::uint64_t max_link_edges = 0;
    /// Only measured with check_bounds.
    std::uint64_t max_pair_neighbor_sum = 0;

    std::uint64_t union_find_ops() const { return make_set + unions + find_set; }
};

/// Test hooks that deliberately corrupt one event.
struct FaultInjection {
    std::optional<std::size_t> drop_union_at_event;
    std::optional<std::size_t> skip_split_at_event;
};

struct SweepOptions {
    /// Assert the per-event cell, edge and neighbor-list bounds.
    bool check_bounds = true;
    FaultInjection faults;
};

/// Ball events first on ties of the left endpoint, then by label.
std::vector<LabeledInterval> sort_events(std::span<const LabeledInterval> balls,
                                         std::span<const LabeledInterval> pairs);

/// Mutable sweep over events sorted by left endpoint.
///
/// The cell list always partitions the real line; each cell stores the level
/// partition shared by all its levels and the link graph to its predecessor.
/// A finger tracks the cell containing the current left endpoint and only
/// moves right, so locating the first affected cell is amortized over the run.
class SweepState {
public:
    /// `point_count` is |A|, used for the per-event bounds.
    explicit SweepState(std::size_t point_count, SweepOptions options = {});

    SweepState(SweepState&&) noexcept = default;
    SweepState& operator=(SweepState&&) noexcept = default;
    SweepState(const SweepState&) = delete;
    SweepState& operator=(const SweepState&) = delete;

    /// Events must arrive with nondecreasing left endpoints, a point's ball
    /// before any of its pairs.
    void process(const LabeledInterval& event);

    const std::list<Cell>& cells() const { return cells_; }
    const SweepCounters& counters() const { return counters_; }
    std::size_t point_count() const { return point_count_; }

    /// Debug dump: bounds, partitions and link edges of every cell.
    nlohmann::json to_json() const;

private:
    using CellIt = std::list<Cell>::iterator;

    void process_ball(const LabeledInterval& ball);
    void process_pair(const LabeledInterval& pair);
    CellIt union_step(CellIt cell, const LabeledInterval& pair, bool first, PointId root_p,
                      PointId root_q);
    CellIt delete_cell(CellIt cell);
    CellIt split_cell(CellIt cell, const LabeledInterval& interval);
    bool same_partition_as_pred(CellIt cell) const;

    PointId find(Cell& cell, PointId p);
    void advance_finger(double level);
    void check_edge_bounds(const LabeledInterval& event);
    bool fault_here(const std::optional<std::size_t>& at) const;

    static constexpr std::size_t kPrefetchDistance = 16;

    std::list<Cell> cells_;
    CellIt finger_;
    std::vector<CellIt> span_;
    std::size_t point_count_;
    SweepOptions options_;
    SweepCounters counters_;
    double last_left_ = -kInf;
    bool fault_spent_ = false;
};

using SweepObserver =
    std::function<void(const SweepState&, std::span<const LabeledInterval> processed)>;

/// Validates the inputs, sorts them and runs every event.  `observer` is
/// called after each event with the events processed so far.
SweepState sweep(const IntervalInputs& inputs, SweepOptions options = {},
                 const SweepObserver& observer = {});

/// Throws InputError unless the inputs satisfy the interval contract.
void validate_inputs(const IntervalInputs& inputs);

}  // namespace reebsweep
