#include "reebsweep/errors.h"
#include "reebsweep/link_graph.h"

#include <doctest.h>

using namespace reebsweep;
using Edges = std::vector<std::pair<PointId, PointId>>;

TEST_CASE("identity") {
    const auto g = LinkGraph::identity({3, 1, 7});
    CHECK(g.edge_count() == 3);
    CHECK(g.is_perfect_matching());
    CHECK(g.edges() == Edges{{1, 1}, {3, 3}, {7, 7}});
}

TEST_CASE("add_edge keeps lists sorted and unique") {
    LinkGraph g;
    g.add_edge(1, 5);
    g.add_edge(1, 2);
    g.add_edge(1, 5);
    CHECK(g.edge_count() == 2);
    REQUIRE(g.left_neighbors(1));
    CHECK(std::vector<PointId>(g.left_neighbors(1)->begin(), g.left_neighbors(1)->end()) ==
          std::vector<PointId>{2, 5});
    CHECK(g.left_degree(1) == 2);
    CHECK(g.left_degree(9) == 0);
    CHECK_FALSE(g.is_perfect_matching());
}

TEST_CASE("merging right roots") {
    LinkGraph g;
    g.add_edge(1, 1);
    g.add_edge(2, 2);
    g.add_edge(3, 2);
    const std::size_t len = g.merge_right_roots(1, 2);
    CHECK(len == 3);
    CHECK(g.edges() == Edges{{1, 1}, {2, 1}, {3, 1}});
    CHECK(g.edge_count() == 3);
    CHECK(g.right_neighbors(2) == nullptr);
}

TEST_CASE("merging left roots drops duplicate edges") {
    LinkGraph g;
    g.add_edge(1, 4);
    g.add_edge(2, 4);
    g.add_edge(2, 6);
    g.merge_left_roots(1, 2);
    CHECK(g.edges() == Edges{{1, 4}, {1, 6}});
    CHECK(g.edge_count() == 2);
}

TEST_CASE("merging a single neighbor and into an unlinked survivor") {
    LinkGraph g;
    g.add_edge(1, 4);
    g.add_edge(2, 4);
    g.add_edge(5, 7);
    CHECK(g.merge_left_roots(1, 2) == 2);
    CHECK(g.edges() == Edges{{1, 4}, {5, 7}});
    CHECK(g.edge_count() == 2);
    CHECK(g.merge_left_roots(3, 5) == 1);
    CHECK(g.edges() == Edges{{1, 4}, {3, 7}});
    CHECK(g.edge_count() == 2);
    CHECK(g.merge_left_roots(1, 9) == 0);
    CHECK(g.edge_count() == 2);
    CHECK(g.is_perfect_matching());
}

TEST_CASE("compose through a bijection") {
    LinkGraph left;
    left.add_edge(1, 10);
    left.add_edge(2, 20);
    LinkGraph right;
    right.add_edge(10, 5);
    right.add_edge(20, 5);
    right.add_edge(20, 6);
    const auto g = LinkGraph::compose(left, right);
    CHECK(g.edges() == Edges{{1, 5}, {2, 5}, {2, 6}});

    LinkGraph bad;
    bad.add_edge(1, 10);
    bad.add_edge(1, 20);
    CHECK_THROWS_AS(LinkGraph::compose(bad, right), InvariantViolation);
}
