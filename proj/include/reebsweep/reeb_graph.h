#pragma once

#include "reebsweep/cell_bound.h"
#include "reebsweep/geometry.h"
#include "reebsweep/union_find.h"

#include <json.hpp>

#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace reebsweep {

class SweepState;

struct ReebCell {
    CellRange range;
    /// Canonical: blocks sorted, ordered by smallest member.
    Partition components;

    friend bool operator==(const ReebCell&, const ReebCell&) = default;
};

struct ReebVertex {
    std::size_t id = 0;
    std::size_t cell = 0;
    std::size_t component = 0;
    std::vector<PointId> members;
    /// Function values covered by the vertex; same as its cell range.
    CellRange extent;

    friend bool operator==(const ReebVertex&, const ReebVertex&) = default;
};

enum class EdgeKind { regular, merge, split };

/// Connects a vertex of cell k (lower) to one of cell k+1 (upper).
struct ReebEdge {
    std::size_t lower = 0;
    std::size_t upper = 0;
    EdgeKind kind = EdgeKind::regular;

    friend bool operator==(const ReebEdge&, const ReebEdge&) = default;
};

/// (cell k, component i) -- (cell k+1, component j)
struct CellLink {
    std::size_t cell = 0;
    std::size_t lower_component = 0;
    std::size_t upper_component = 0;

    friend auto operator<=>(const CellLink&, const CellLink&) = default;
};

class ReebGraph {
public:
    ReebGraph() = default;

    /// Builds vertices, edges and critical values from cells and their links.
    /// Throws InvariantViolation if a link does not join intersecting components.
    static ReebGraph from_cells(std::vector<ReebCell> cells, std::vector<CellLink> links);

    const std::vector<ReebCell>& cells() const { return cells_; }
    const std::vector<ReebVertex>& vertices() const { return vertices_; }
    const std::vector<ReebEdge>& edges() const { return edges_; }
    const std::vector<CellLink>& links() const { return links_; }
    /// Finite cell boundaries in increasing order.
    const std::vector<double>& critical_values() const { return critical_values_; }

    /// Vertex id of component `component` in cell `cell`.
    std::size_t vertex_of(std::size_t cell, std::size_t component) const;

    friend bool operator==(const ReebGraph& a, const ReebGraph& b) {
        return a.cells_ == b.cells_ && a.links_ == b.links_;
    }

private:
    std::vector<ReebCell> cells_;
    std::vector<CellLink> links_;
    std::vector<ReebVertex> vertices_;
    std::vector<ReebEdge> edges_;
    std::vector<double> critical_values_;
    std::vector<std::size_t> first_vertex_;
};

struct Betti {
    std::size_t b0 = 0;
    std::size_t b1 = 0;
    friend bool operator==(const Betti&, const Betti&) = default;
};

/// One vertex per (cell, component); one edge per link-graph edge.
ReebGraph extract(const SweepState& state);

/// b0 = components, b1 = |E| - |V| + b0.
Betti betti(const ReebGraph& g);

/// Components of the ball intersection graph (balls meet iff |p - q| <= 2 eps).
std::size_t ball_component_count(std::span<const Point> points, double eps);

/// b0 of g equals the component count of the eps-ball intersection graph.
bool component_count_check(std::span<const Point> points, double eps, const ReebGraph& g);

nlohmann::json to_json(const ReebGraph& g);
ReebGraph reeb_graph_from_json(const nlohmann::json& j);
void write_json(std::ostream& out, const ReebGraph& g);
void write_dot(std::ostream& out, const ReebGraph& g);

std::string to_string(EdgeKind kind);

}  // namespace reebsweep
