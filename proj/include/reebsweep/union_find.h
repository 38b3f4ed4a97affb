#pragma once

#include "reebsweep/geometry.h"

#include <cstdint>
#include <utility>
#include <vector>

namespace reebsweep {

using Partition = std::vector<std::vector<PointId>>;

/// Sorts each block and orders blocks by their smallest element.
void canonicalize(Partition& partition);

/// Union-find over an arbitrary subset of point ids, with union by rank and
/// path compression.
class UnionFindForest {
public:
    /// Packed into one word; ids must be below kMaxPointId.
    struct Node {
        PointId parent : 27;
        std::uint32_t rank : 5;
    };
    static constexpr PointId kMaxPointId = (PointId{1} << 26) - 1;

    struct UnionResult {
        PointId survivor;
        PointId absorbed;
    };

    bool contains(PointId p) const { return nodes_.find(p) != nullptr; }
    bool empty() const { return nodes_.empty(); }
    std::size_t size() const { return nodes_.size(); }
    std::size_t set_count() const { return sets_; }

    /// Adds {p}.  Throws InvariantViolation if p is already stored.
    void make_set(PointId p);

    /// Root of p's tree; compresses the path.  Throws ContractViolation if p is absent.
    PointId find(PointId p);

    /// Root of p's tree without touching the structure.
    PointId root_of(PointId p) const;

    /// Merges the trees rooted at roots ra != rb.  The higher rank survives;
    /// on equal ranks the smaller id does and its rank grows by one.
    UnionResult unite_roots(PointId ra, PointId rb);

    /// Cache hint for an upcoming find(p).
    void prefetch(PointId p) const { nodes_.prefetch(p); }

    /// find on every stored point, leaving every tree with height at most one.
    void compress_all();

    const Node* node(PointId p) const;

    std::vector<PointId> members() const;
    std::vector<PointId> roots() const;
    Partition partition() const;

    template <class F>
    void for_each_member(F&& fn) const {
        nodes_.for_each([&](PointId id, const Node&) { fn(id); });
    }

private:
    /// Open addressing with linear probing.  Key and node share an 8-byte
    /// slot, so a lookup usually reads one cache line and can be prefetched
    /// exactly.  Entries are never removed.
    class NodeTable {
    public:
        std::size_t size() const { return size_; }
        bool empty() const { return size_ == 0; }

        Node* find(PointId p) { return const_cast<Node*>(std::as_const(*this).find(p)); }
        const Node* find(PointId p) const {
            if (slots_.empty()) return nullptr;
            const std::size_t mask = slots_.size() - 1;
            for (std::size_t i = home(p);; i = (i + 1) & mask) {
                const Slot& s = slots_[i];
                if (s.key == p) return &s.node;
                if (s.key == kNoPoint) return nullptr;
            }
        }

        /// False if p is already present.
        bool insert(PointId p, Node node);

        void prefetch(PointId p) const {
            if (!slots_.empty()) __builtin_prefetch(&slots_[home(p)]);
        }

        template <class F>
        void for_each(F&& fn) {
            for (Slot& s : slots_) {
                if (s.key != kNoPoint) fn(s.key, s.node);
            }
        }
        template <class F>
        void for_each(F&& fn) const {
            for (const Slot& s : slots_) {
                if (s.key != kNoPoint) fn(s.key, s.node);
            }
        }

    private:
        struct Slot {
            PointId key = kNoPoint;
            Node node{0, 0};
        };
        static_assert(sizeof(Slot) == 8);

        std::size_t home(PointId p) const {
            return static_cast<std::size_t>((static_cast<std::uint64_t>(static_cast<std::uint32_t>(p)) *
                                             0x9E3779B97F4A7C15ull) >> shift_);
        }
        void rehash(std::size_t capacity);

        std::vector<Slot> slots_;
        std::size_t size_ = 0;
        unsigned shift_ = 63;
    };

    NodeTable nodes_;
    std::size_t sets_ = 0;
};

/// Equal stored point sets and equal blocks.  O(size).
bool same_partition(const UnionFindForest& a, const UnionFindForest& b);

}  // namespace reebsweep
