#include "reebsweep/errors.h"
#include "reebsweep/point_io.h"

#include <doctest.h>

#include <sstream>

using namespace reebsweep;

TEST_CASE("csv with header, comments and scientific notation") {
    const auto c = parse_csv("x,y\n# comment\n1,2\n\n3.5e-1, -4E2\n+1,0\n");
    CHECK(c.dim == 2);
    REQUIRE(c.points.size() == 3);
    CHECK(c.points[1].coords == std::vector<double>{0.35, -400.0});
    CHECK(c.points[2].id == 2);
}

TEST_CASE("csv without header") {
    const auto c = parse_csv("1,2,3\n4,5,6");
    CHECK(c.dim == 3);
    CHECK(c.points.size() == 2);
}

TEST_CASE("csv errors name the line") {
    CHECK_THROWS_WITH_AS(parse_csv("1,2\n3,x\n"), doctest::Contains("line 2"), InputError);
    CHECK_THROWS_WITH_AS(parse_csv("1,2\n3\n"), doctest::Contains("line 2"), InputError);
    CHECK_THROWS_WITH_AS(parse_csv("x,y\n1,2\n1,nan\n"), doctest::Contains("line 3"), InputError);
}

TEST_CASE("empty input") {
    CHECK(parse_csv("").points.empty());
    CHECK(parse_csv("x,y\n").points.empty());
    CHECK(parse_points_json("[]").points.empty());
    std::istringstream in("");
    CHECK(read_points(in, PointFormat::json).points.empty());
}

TEST_CASE("json points") {
    const auto c = parse_points_json("[[0.1, 1], [1.4, -0.4]]");
    CHECK(c.dim == 2);
    CHECK(c.points[1].coords == std::vector<double>{1.4, -0.4});
    CHECK_THROWS_AS(parse_points_json("[[1,2],[3]]"), InputError);
    CHECK_THROWS_AS(parse_points_json("{\"a\": 1}"), InputError);
    CHECK_THROWS_AS(parse_points_json("[[1, \"a\"]]"), InputError);
    CHECK_THROWS_AS(parse_points_json("[[1,2"), InputError);
}

TEST_CASE("format from extension") {
    CHECK(guess_format("a/b.json") == PointFormat::json);
    CHECK(guess_format("a/b.csv") == PointFormat::csv);
    CHECK(guess_format("-") == PointFormat::csv);
    CHECK_THROWS_AS(load_points("/nonexistent/file.csv", PointFormat::csv), InputError);
}
