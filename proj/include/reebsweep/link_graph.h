#pragma once

#include "reebsweep/geometry.h"

#include <absl/container/flat_hash_map.h>
#include <absl/container/inlined_vector.h>

#include <utility>
#include <vector>

namespace reebsweep {

/// Bipartite graph G(J, J') between the roots of two consecutive cells.
/// Edges are stored from both sides; every neighbor list is sorted by
/// point id and free of duplicates.
class LinkGraph {
public:
    using Neighbors = absl::InlinedVector<PointId, 2>;

    /// Identity on `roots`, used between the pieces of a split cell.
    static LinkGraph identity(const std::vector<PointId>& roots);

    /// G(A, C) = G(A, B) ∘ G(B, C) where `left` must be a bijection on roots.
    /// Throws InvariantViolation otherwise.
    static LinkGraph compose(const LinkGraph& left, const LinkGraph& right);

    void add_edge(PointId left_root, PointId right_root);

    /// Re-labels left root `absorbed` as `survivor`, merging neighbor lists.
    /// Returns the summed length of the two lists that were merged.
    std::size_t merge_left_roots(PointId survivor, PointId absorbed);
    std::size_t merge_right_roots(PointId survivor, PointId absorbed);

    const Neighbors* left_neighbors(PointId left_root) const;
    const Neighbors* right_neighbors(PointId right_root) const;
    std::size_t left_degree(PointId left_root) const;
    void prefetch_left(PointId left_root) const { left_.prefetch(left_root); }

    std::size_t edge_count() const { return edges_; }
    std::size_t left_vertex_count() const { return left_.size(); }
    std::size_t right_vertex_count() const { return right_.size(); }

    /// Every vertex on either side has exactly one neighbor.
    bool is_perfect_matching() const;

    /// Sorted (left root, right root) list.
    std::vector<std::pair<PointId, PointId>> edges() const;

private:
    using Adjacency = absl::flat_hash_map<PointId, Neighbors>;
    std::size_t merge_roots(Adjacency& own, Adjacency& other, PointId survivor, PointId absorbed);

    Adjacency left_;
    Adjacency right_;
    std::size_t edges_ = 0;
};

}  // namespace reebsweep
