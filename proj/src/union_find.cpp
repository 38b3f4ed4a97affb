#include "reebsweep/union_find.h"

#include "reebsweep/errors.h"

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <bit>

namespace reebsweep {

void canonicalize(Partition& partition) {
    for (auto& block : partition) std::sort(block.begin(), block.end());
    std::sort(partition.begin(), partition.end());
}

static_assert(sizeof(UnionFindForest::Node) == 4);

void UnionFindForest::NodeTable::rehash(std::size_t capacity) {
    std::vector<Slot> old(capacity);
    old.swap(slots_);
    shift_ = 64 - static_cast<unsigned>(std::countr_zero(capacity));
    const std::size_t mask = capacity - 1;
    for (const Slot& s : old) {
        if (s.key == kNoPoint) continue;
        std::size_t i = home(s.key);
        while (slots_[i].key != kNoPoint) i = (i + 1) & mask;
        slots_[i] = s;
    }
}

bool UnionFindForest::NodeTable::insert(PointId p, Node node) {
    if (4 * (size_ + 1) > 3 * slots_.size()) rehash(slots_.empty() ? 8 : 2 * slots_.size());
    const std::size_t mask = slots_.size() - 1;
    std::size_t i = home(p);
    for (; slots_[i].key != kNoPoint; i = (i + 1) & mask) {
        if (slots_[i].key == p) return false;
    }
    slots_[i] = {p, node};
    ++size_;
    return true;
}

void UnionFindForest::make_set(PointId p) {
    if (p < 0 || p > kMaxPointId) throw ContractViolation("make_set: point id " + std::to_string(p) + " out of range");
    if (!nodes_.insert(p, Node{p, 0})) throw InvariantViolation("make_set: point " + std::to_string(p) + " already stored");
    ++sets_;
}

PointId UnionFindForest::find(PointId p) {
    Node* start = nodes_.find(p);
    if (!start) throw ContractViolation("find: point " + std::to_string(p) + " not stored");
    PointId root = p;
    for (const Node* cur = start; cur->parent != root;) {
        root = cur->parent;
        cur = nodes_.find(root);
    }
    for (Node* cur = start; cur->parent != root;) {
        const PointId next = cur->parent;
        cur->parent = root;
        cur = nodes_.find(next);
    }
    return root;
}

PointId UnionFindForest::root_of(PointId p) const {
    const Node* n = nodes_.find(p);
    if (!n) throw ContractViolation("root_of: point " + std::to_string(p) + " not stored");
    PointId root = p;
    while (n->parent != root) {
        root = n->parent;
        n = nodes_.find(root);
    }
    return root;
}

UnionFindForest::UnionResult UnionFindForest::unite_roots(PointId ra, PointId rb) {
    Node* pa = nodes_.find(ra);
    Node* pb = nodes_.find(rb);
    if (!pa || !pb || pa->parent != ra || pb->parent != rb || ra == rb) {
        throw ContractViolation("unite_roots needs two distinct roots");
    }
    Node& a = *pa;
    Node& b = *pb;
    --sets_;
    if (a.rank < b.rank || (a.rank == b.rank && rb < ra)) {
        a.parent = rb;
        if (a.rank == b.rank) ++b.rank;
        return {rb, ra};
    }
    b.parent = ra;
    if (a.rank == b.rank) ++a.rank;
    return {ra, rb};
}

void UnionFindForest::compress_all() {
    nodes_.for_each([&](PointId id, Node& n) {
        if (n.parent != id) n.parent = root_of(id);
    });
}

const UnionFindForest::Node* UnionFindForest::node(PointId p) const { return nodes_.find(p); }

std::vector<PointId> UnionFindForest::members() const {
    std::vector<PointId> out;
    out.reserve(nodes_.size());
    nodes_.for_each([&](PointId id, const Node&) { out.push_back(id); });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<PointId> UnionFindForest::roots() const {
    std::vector<PointId> out;
    nodes_.for_each([&](PointId id, const Node& n) {
        if (n.parent == id) out.push_back(id);
    });
    std::sort(out.begin(), out.end());
    return out;
}

Partition UnionFindForest::partition() const {
    absl::flat_hash_map<PointId, std::size_t> block_of;
    Partition out;
    nodes_.for_each([&](PointId id, const Node&) {
        const PointId r = root_of(id);
        auto [it, inserted] = block_of.try_emplace(r, out.size());
        if (inserted) out.emplace_back();
        out[it->second].push_back(id);
    });
    canonicalize(out);
    return out;
}

bool same_partition(const UnionFindForest& a, const UnionFindForest& b) {
    if (a.size() != b.size() || a.set_count() != b.set_count()) return false;
    absl::flat_hash_map<PointId, PointId> a_to_b;
    absl::flat_hash_map<PointId, PointId> b_to_a;
    bool ok = true;
    a.for_each_member([&](PointId p) {
        if (!ok) return;
        if (!b.contains(p)) {
            ok = false;
            return;
        }
        const PointId ra = a.root_of(p);
        const PointId rb = b.root_of(p);
        auto [i1, n1] = a_to_b.try_emplace(ra, rb);
        auto [i2, n2] = b_to_a.try_emplace(rb, ra);
        if (i1->second != rb || i2->second != ra) ok = false;
    });
    return ok;
}

}  // namespace reebsweep
