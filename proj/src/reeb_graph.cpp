#include "reebsweep/reeb_graph.h"

#include "reebsweep/errors.h"
#include "reebsweep/sweep.h"

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <numeric>

namespace reebsweep {

namespace {

// Plain disjoint-set over 0..n-1 for component counts.
class IndexDsu {
public:
    explicit IndexDsu(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[std::max(a, b)] = std::min(a, b);
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

bool blocks_intersect(const std::vector<PointId>& a, const std::vector<PointId>& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i == *j) return true;
        if (*i < *j) {
            ++i;
        } else {
            ++j;
        }
    }
    return false;
}

nlohmann::json bound_value(const CellBound& b) {
    if (!b.finite()) return nullptr;
    return b.value;
}

CellBound bound_from(const nlohmann::json& value, const nlohmann::json& closed, double infinity) {
    if (value.is_null()) return CellBound::open(infinity);
    return CellBound{value.get<double>(), closed.get<bool>()};
}

std::string vertex_label(const ReebVertex& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.members.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v.members[i]);
    }
    s += "} ";
    s += v.extent.to_string();
    return s;
}

}  // namespace

std::string to_string(EdgeKind kind) {
    switch (kind) {
        case EdgeKind::merge: return "merge";
        case EdgeKind::split: return "split";
        case EdgeKind::regular: break;
    }
    return "regular";
}

ReebGraph ReebGraph::from_cells(std::vector<ReebCell> cells, std::vector<CellLink> links) {
    ReebGraph g;
    g.cells_ = std::move(cells);
    std::sort(links.begin(), links.end());
    links.erase(std::unique(links.begin(), links.end()), links.end());
    g.links_ = std::move(links);

    for (std::size_t c = 0; c < g.cells_.size(); ++c) {
        auto& cell = g.cells_[c];
        canonicalize(cell.components);
        g.first_vertex_.push_back(g.vertices_.size());
        for (std::size_t k = 0; k < cell.components.size(); ++k) {
            g.vertices_.push_back({g.vertices_.size(), c, k, cell.components[k], cell.range});
        }
        if (c + 1 < g.cells_.size()) g.critical_values_.push_back(cell.range.hi.value);
    }
    g.first_vertex_.push_back(g.vertices_.size());

    std::vector<std::size_t> up(g.vertices_.size(), 0);
    std::vector<std::size_t> down(g.vertices_.size(), 0);
    for (const CellLink& l : g.links_) {
        if (l.cell + 1 >= g.cells_.size() ||
            l.lower_component >= g.cells_[l.cell].components.size() ||
            l.upper_component >= g.cells_[l.cell + 1].components.size()) {
            throw InvariantViolation("Reeb link refers to a missing component");
        }
        if (!blocks_intersect(g.cells_[l.cell].components[l.lower_component],
                              g.cells_[l.cell + 1].components[l.upper_component])) {
            throw InvariantViolation("Reeb link joins disjoint components");
        }
        const std::size_t a = g.vertex_of(l.cell, l.lower_component);
        const std::size_t b = g.vertex_of(l.cell + 1, l.upper_component);
        g.edges_.push_back({a, b, EdgeKind::regular});
        ++up[a];
        ++down[b];
    }
    for (ReebEdge& e : g.edges_) {
        if (down[e.upper] > 1) {
            e.kind = EdgeKind::merge;
        } else if (up[e.lower] > 1) {
            e.kind = EdgeKind::split;
        }
    }
    return g;
}

std::size_t ReebGraph::vertex_of(std::size_t cell, std::size_t component) const {
    return first_vertex_.at(cell) + component;
}

ReebGraph extract(const SweepState& state) {
    std::vector<ReebCell> cells;
    std::vector<CellLink> links;
    cells.reserve(state.cells().size());
    // Component index of each root, per cell.
    absl::flat_hash_map<PointId, std::size_t> prev_index;
    absl::flat_hash_map<PointId, std::size_t> index;
    for (const Cell& cell : state.cells()) {
        ReebCell rc{cell.range, cell.uf.partition()};
        index.clear();
        for (std::size_t k = 0; k < rc.components.size(); ++k) {
            index[cell.uf.root_of(rc.components[k].front())] = k;
        }
        if (!cells.empty()) {
            for (const auto& [l, r] : cell.link_pred.edges()) {
                links.push_back({cells.size() - 1, prev_index.at(l), index.at(r)});
            }
        }
        cells.push_back(std::move(rc));
        std::swap(prev_index, index);
    }
    return ReebGraph::from_cells(std::move(cells), std::move(links));
}

Betti betti(const ReebGraph& g) {
    IndexDsu dsu(g.vertices().size());
    std::size_t b0 = g.vertices().size();
    for (const ReebEdge& e : g.edges()) {
        if (dsu.unite(e.lower, e.upper)) --b0;
    }
    return {b0, g.edges().size() + b0 - g.vertices().size()};
}

std::size_t ball_component_count(std::span<const Point> points, double eps) {
    IndexDsu dsu(points.size());
    std::size_t components = points.size();
    const double reach = 4.0 * eps * eps;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (squared_distance(points[i].coords, points[j].coords) <= reach && dsu.unite(i, j)) {
                --components;
            }
        }
    }
    return components;
}

bool component_count_check(std::span<const Point> points, double eps, const ReebGraph& g) {
    return betti(g).b0 == ball_component_count(points, eps);
}

nlohmann::json to_json(const ReebGraph& g) {
    nlohmann::json cells = nlohmann::json::array();
    for (const ReebCell& c : g.cells()) {
        cells.push_back({{"lo", bound_value(c.range.lo)},
                         {"lo_closed", c.range.lo.inclusive},
                         {"hi", bound_value(c.range.hi)},
                         {"hi_closed", c.range.hi.inclusive},
                         {"components", c.components}});
    }
    nlohmann::json edges = nlohmann::json::array();
    nlohmann::json kinds = nlohmann::json::array();
    for (std::size_t i = 0; i < g.links().size(); ++i) {
        const CellLink& l = g.links()[i];
        edges.push_back({l.cell, l.lower_component, l.cell + 1, l.upper_component});
        kinds.push_back(to_string(g.edges()[i].kind));
    }
    return {{"cells", cells},
            {"edges", edges},
            {"edge_kinds", kinds},
            {"critical_values", g.critical_values()}};
}

ReebGraph reeb_graph_from_json(const nlohmann::json& j) {
    std::vector<ReebCell> cells;
    for (const auto& c : j.at("cells")) {
        ReebCell rc;
        rc.range.lo = bound_from(c.at("lo"), c.at("lo_closed"), -kInf);
        rc.range.hi = bound_from(c.at("hi"), c.at("hi_closed"), kInf);
        rc.components = c.at("components").get<Partition>();
        cells.push_back(std::move(rc));
    }
    std::vector<CellLink> links;
    for (const auto& e : j.at("edges")) {
        const auto lower_cell = e.at(0).get<std::size_t>();
        if (e.at(2).get<std::size_t>() != lower_cell + 1) {
            throw InputError("Reeb edge must join consecutive cells");
        }
        links.push_back({lower_cell, e.at(1).get<std::size_t>(), e.at(3).get<std::size_t>()});
    }
    return ReebGraph::from_cells(std::move(cells), std::move(links));
}

void write_json(std::ostream& out, const ReebGraph& g) {
    out << to_json(g).dump(2) << '\n';
    if (!out) throw std::runtime_error("failed to write Reeb graph JSON");
}

void write_dot(std::ostream& out, const ReebGraph& g) {
    if (g.vertices().empty()) {
        out << "digraph reeb {}\n";
    } else {
        // Vertices come in cell order, i.e. by increasing extent; BT puts low values at the bottom
        // and each cell's vertices share a rank.
        out << "digraph reeb {\n  rankdir=BT;\n";
        for (const ReebVertex& v : g.vertices()) {
            out << "  v" << v.id << " [label=\"" << vertex_label(v) << "\"];\n";
        }
        for (std::size_t c = 0; c < g.cells().size(); ++c) {
            if (g.cells()[c].components.size() < 2) continue;
            out << "  {rank=same;";
            for (std::size_t i = 0; i < g.cells()[c].components.size(); ++i) out << " v" << g.vertex_of(c, i) << ';';
            out << "}\n";
        }
        for (const ReebEdge& e : g.edges()) {
            out << "  v" << e.lower << " -> v" << e.upper;
            if (e.kind != EdgeKind::regular) out << " [label=\"" << to_string(e.kind) << "\"]";
            out << ";\n";
        }
        out << "}\n";
    }
    if (!out) throw std::runtime_error("failed to write Reeb graph DOT");
}

}  // namespace reebsweep
