#include "reebsweep/link_graph.h"

#include "reebsweep/errors.h"

#include <algorithm>

namespace reebsweep {

namespace {

void insert_sorted(LinkGraph::Neighbors& list, PointId v) {
    auto it = std::lower_bound(list.begin(), list.end(), v);
    if (it == list.end() || *it != v) list.insert(it, v);
}

void erase_sorted(LinkGraph::Neighbors& list, PointId v) {
    auto it = std::lower_bound(list.begin(), list.end(), v);
    if (it != list.end() && *it == v) list.erase(it);
}

}  // namespace

LinkGraph LinkGraph::identity(const std::vector<PointId>& roots) {
    LinkGraph g;
    g.left_.reserve(roots.size());
    g.right_.reserve(roots.size());
    for (PointId r : roots) {
        g.left_[r] = Neighbors{r};
        g.right_[r] = Neighbors{r};
    }
    g.edges_ = roots.size();
    return g;
}

LinkGraph LinkGraph::compose(const LinkGraph& left, const LinkGraph& right) {
    if (!left.is_perfect_matching()) {
        throw InvariantViolation("compose: left link graph is not a bijection on roots");
    }
    LinkGraph g;
    g.left_.reserve(right.left_.size());
    for (const auto& [a, mids] : left.left_) {
        auto it = right.left_.find(mids.front());
        if (it != right.left_.end()) g.left_[a] = it->second;
    }
    g.right_.reserve(right.right_.size());
    for (const auto& [c, mids] : right.right_) {
        Neighbors mapped;
        for (PointId b : mids) {
            auto it = left.right_.find(b);
            if (it == left.right_.end()) {
                throw InvariantViolation("compose: middle root missing from left link graph");
            }
            mapped.push_back(it->second.front());
        }
        std::sort(mapped.begin(), mapped.end());
        mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());
        g.right_[c] = std::move(mapped);
    }
    g.edges_ = right.edges_;
    return g;
}

void LinkGraph::add_edge(PointId left_root, PointId right_root) {
    Neighbors& l = left_[left_root];
    const std::size_t before = l.size();
    insert_sorted(l, right_root);
    if (l.size() == before) return;
    insert_sorted(right_[right_root], left_root);
    ++edges_;
}

std::size_t LinkGraph::merge_roots(Adjacency& own, Adjacency& other, PointId survivor,
                                   PointId absorbed) {
    auto dead = own.find(absorbed);
    if (dead == own.end()) return 0;
    Neighbors moved = std::move(dead->second);
    own.erase(dead);
    if (moved.empty()) return 0;
    Neighbors& keep = own[survivor];
    const std::size_t traversed = keep.size() + moved.size();

    if (keep.empty()) {
        keep = moved;
    } else if (moved.size() == 1) {
        insert_sorted(keep, moved.front());
    } else {
        Neighbors merged;
        merged.reserve(traversed);
        std::set_union(keep.begin(), keep.end(), moved.begin(), moved.end(),
                       std::back_inserter(merged));
        keep = std::move(merged);
    }
    edges_ -= traversed - keep.size();

    for (PointId v : moved) {
        Neighbors& back = other.at(v);
        erase_sorted(back, absorbed);
        insert_sorted(back, survivor);
    }
    return traversed;
}

std::size_t LinkGraph::merge_left_roots(PointId survivor, PointId absorbed) {
    return merge_roots(left_, right_, survivor, absorbed);
}

std::size_t LinkGraph::merge_right_roots(PointId survivor, PointId absorbed) {
    return merge_roots(right_, left_, survivor, absorbed);
}

const LinkGraph::Neighbors* LinkGraph::left_neighbors(PointId left_root) const {
    auto it = left_.find(left_root);
    return it == left_.end() ? nullptr : &it->second;
}

const LinkGraph::Neighbors* LinkGraph::right_neighbors(PointId right_root) const {
    auto it = right_.find(right_root);
    return it == right_.end() ? nullptr : &it->second;
}

std::size_t LinkGraph::left_degree(PointId left_root) const {
    auto it = left_.find(left_root);
    return it == left_.end() ? 0 : it->second.size();
}

bool LinkGraph::is_perfect_matching() const {
    if (left_.size() != edges_ || right_.size() != edges_) return false;
    for (const auto& [r, n] : left_) {
        if (n.size() != 1) return false;
    }
    for (const auto& [r, n] : right_) {
        if (n.size() != 1) return false;
    }
    return true;
}

std::vector<std::pair<PointId, PointId>> LinkGraph::edges() const {
    std::vector<std::pair<PointId, PointId>> out;
    out.reserve(edges_);
    for (const auto& [l, ns] : left_) {
        for (PointId r : ns) out.emplace_back(l, r);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace reebsweep
