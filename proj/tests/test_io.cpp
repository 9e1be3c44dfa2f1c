#include "doctest.h"

#include "circlepack/io.hpp"
#include "circlepack/svg.hpp"

using namespace circlepack;
using io::json;

TEST_CASE("scalars round-trip through JSON") {
    for (const char* s : {"3/4", "-2", "0"}) {
        Scalar v = Scalar::parse(s);
        CHECK(io::scalar_from_json(io::scalar_to_json(v)).same_as(v));
    }
    Scalar r3 = sqrt(Scalar(3));
    CHECK(io::scalar_from_json(io::scalar_to_json(r3)).same_as(r3));
    CHECK(io::scalar_from_json(json(0.25)).value() == mpq_class(1, 4));
    CHECK(io::scalar_from_json(json(3)).value() == 3);
    CHECK(io::scalar_to_json(Scalar::rational(1, 3), {true}) == "0.333333333333");
    CHECK_THROWS_AS(io::scalar_from_json(json::array()), ParseError);
}

TEST_CASE("schema version gate") {
    CHECK_NOTHROW(io::check_version(json{{"schema_version", "1.3"}}));
    CHECK_THROWS_AS(io::check_version(json{{"schema_version", "2.0"}}), ParseError);
    CHECK_THROWS_AS(io::layout_from_json(json{{"schema_version", "9.0"}, {"circles", json::array()}}), ParseError);
}

TEST_CASE("layout and instance round-trip") {
    Scaffold s = rectangle_scaffold(3);
    io::LayoutFile lf{s.layout, s.container, Mode::place, "test", s.pockets};
    io::LayoutFile back = io::layout_from_json(json::parse(io::layout_to_json(lf).dump()));
    REQUIRE(back.layout.circles.size() == s.layout.circles.size());
    for (size_t i = 0; i < back.layout.circles.size(); ++i) {
        CHECK(back.layout.circles[i].radius.same_as(s.layout.circles[i].radius));
        CHECK(back.layout.circles[i].center->y.same_as(s.layout.circles[i].center->y));
    }
    CHECK(back.pockets == s.pockets);
    CHECK(back.layout.tolerance->same_as(*s.layout.tolerance));
    auto inst = instance_of(s.container, Mode::place, s.layout);
    auto inst2 = io::instance_from_json(io::instance_to_json(inst));
    CHECK(verify(inst2, back.layout).verdict == Verdict::valid);
}

TEST_CASE("three partition file forms") {
    auto a = io::three_partition_from_json(json::parse(R"({"n": 1, "items": ["3/10", 0.3, "0.4"]})"));
    CHECK(a.n == 1);
    CHECK(a.items[1] == mpq_class(3, 10));
    auto b = io::three_partition_from_json(json::parse(R"(["3/10", "3/10", "2/5"])"));
    CHECK(b.n == 1);
    CHECK_THROWS_AS(io::three_partition_from_json(json::parse(R"({"n": 1})")), ParseError);
}

TEST_CASE("tree and paper files") {
    auto t = io::tree_from_json(json::parse(R"({"nodes": 3, "edges": [{"a": 0, "b": 1, "w": 1}, {"a": 0, "b": 2, "w": 2}], "leaves": [1, 2]})"));
    CHECK(path_lengths(t)[0][1] == 3);
    auto p = io::paper_from_json(json::parse(R"({"polygon": [[0,0],[1,0],[1,1],[0,1]]})"));
    CHECK(p.size() == 4);
    CHECK_THROWS_AS(io::paper_from_json(json::parse(R"({"polygon": [[0,0],[1]]})")), ParseError);
}

TEST_CASE("circle sets by radius or area") {
    auto r = io::circles_from_json(json::parse(R"({"radii": ["1/4", 0.1]})"));
    CHECK(r.radii[0].value() == mpq_class(1, 4));
    auto a = io::circles_from_json(json::parse(R"({"areas": ["1/4"]})"));
    CHECK(a.from_areas);
    CHECK(std::abs(a.radii[0].to_double() - 0.28209479) < 1e-8);
    CHECK(a.radii[0].exact());
    auto bare = io::circles_from_json(json::parse(R"(["1/8"])"));
    CHECK(bare.radii.size() == 1);
}

TEST_CASE("svg rendering") {
    Scaffold s = rectangle_scaffold(2);
    io::LayoutFile lf{s.layout, s.container, Mode::place, "test", s.pockets};
    std::string svg = render_svg(lf, {1.0, true, true});
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("viewBox=\"0 0 1000 1000\"") != std::string::npos);
    size_t circles = 0;
    for (size_t p = svg.find("<circle"); p != std::string::npos; p = svg.find("<circle", p + 1)) ++circles;
    CHECK(circles == s.layout.circles.size() + s.pockets.size());
}
