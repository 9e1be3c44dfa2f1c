#include <random>

#include "doctest.h"
#include "oracle.hpp"

#include "circlepack/geometry.hpp"

using namespace circlepack;

namespace {

Scalar q(long n, long d = 1) { return Scalar::rational(n, d); }

Circle at(const Scalar& r, const Scalar& x, const Scalar& y) { return {r, Point{x, y}}; }

}  // namespace

TEST_CASE("inscribed pocket radius examples") {
    CHECK(std::abs(inscribed_pocket_radius(1, 1, 1).to_double() - 0.15470053837925) < 1e-12);
    CHECK(std::abs(inscribed_pocket_radius(2, 2, 2).to_double() - 0.30940107675850) < 1e-12);
    double half = inscribed_pocket_radius(1, 1, q(1, 2)).to_double();
    CHECK(std::abs(half - 1 / (4 + 2 * std::sqrt(5.0))) < 1e-12);
    CHECK(std::abs(half - oracle::bisect_inscribed(1, 1, 0.5)) < 1e-12);
    double shim = inscribed_pocket_radius(1, 1, Scalar(2) / sqrt3() - Scalar(1)).to_double();
    CHECK(std::abs(shim - 1 / (9 + 4 * std::sqrt(3.0))) < 1e-12);
    CHECK(std::abs(shim - 0.0627817203) < 1e-10);
    CHECK_THROWS_AS(inscribed_pocket_radius(0, 1, 1), DomainError);
}

TEST_CASE("inscribed radius honours the requested tolerance") {
    mpq_class tol(mpz_class(1), mpz_class(1) << 300);
    Scalar r = inscribed_pocket_radius(1, 1, 1, Scalar(tol));
    CHECK(r.error() <= tol);
    mpf_class want = 2 / oracle::hp_sqrt(3) - 1;
    mpf_class diff = oracle::hp(r.value()) - want;
    CHECK(abs(diff) <= oracle::hp(tol));
}

TEST_CASE("inscribed radius properties over random triples") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(1, 1000);
    for (int t = 0; t < 200; ++t) {
        Scalar r1 = q(num(rng), 100), r2 = q(num(rng), 100), r3 = q(num(rng), 100);
        Scalar r = inscribed_pocket_radius(r1, r2, r3);
        double a = r1.to_double(), b = r2.to_double(), c = r3.to_double();
        CHECK(r.to_double() == doctest::Approx(oracle::descartes(a, b, c)).epsilon(1e-12));
        CHECK(r.to_double() == doctest::Approx(oracle::bisect_inscribed(a, b, c)).epsilon(1e-9));
        CHECK(r.hi() < std::min({r1.value(), r2.value(), r3.value()}));
        CHECK(r.hi() <= std::max({r1.value(), r2.value(), r3.value()}) / 3);
        Scalar s = inscribed_pocket_radius(r1, r1, r1);
        CHECK((s - r1 * (Scalar(2) / sqrt3() - Scalar(1))).band_sign() == Sign::zero);
    }
}

TEST_CASE("circle relations") {
    CHECK(circle_relation(at(1, 0, 0), at(1, 2, 0)) == Relation::tangent);
    CHECK(circle_relation(at(1, 0, 0), at(1, q(19, 10), 0)) == Relation::overlapping);
    CHECK(circle_relation(at(1, 0, 0), at(1, q(21, 10), 0)) == Relation::disjoint);
    CHECK(circle_relation(at(2, 0, 0), at(3, 3, 4)) == Relation::tangent);
    CHECK(pair_margin(at(1, 0, 0), at(1, q(19, 10), 0)).value() == mpq_class(-39, 100));
    CHECK_THROWS_AS(circle_relation(Circle{1, std::nullopt}, at(1, 0, 0)), ContractViolation);
}

TEST_CASE("containment in the paper shapes") {
    Square sq{1};
    CHECK(contains(sq, at(1, 0, 0), Mode::place));
    CHECK_FALSE(contains(sq, at(1, 0, 0), Mode::pack));
    CHECK(contains(sq, at(q(1, 2), q(1, 2), q(1, 2)), Mode::pack));
    CHECK_FALSE(contains(sq, at(q(1, 10), q(-1, 1000), q(1, 2)), Mode::place));

    Rectangle rect{4, 2};
    CHECK(contains(rect, at(1, 1, 1), Mode::pack));
    CHECK(contains(rect, at(1, 3, 1), Mode::pack));
    CHECK_FALSE(contains(rect, at(1, 3, q(11, 10)), Mode::pack));

    EquilateralTriangle tri{2};
    CHECK(contains(tri, at(q(1, 10), 1, 0), Mode::place));
    CHECK(contains(tri, at(q(1, 10), 0, 0), Mode::place));
    CHECK(contains(tri, at(q(1, 10), 2, 0), Mode::place));
    CHECK_FALSE(contains(tri, at(q(1, 10), 1, q(-1, 1000)), Mode::place));
    CHECK(contains(tri, at(q(1, 10), 1, q(17, 10)), Mode::place));
    CHECK_FALSE(contains(tri, at(q(1, 10), 1, q(18, 10)), Mode::place));
    // inscribed disk of the triangle, tangent to all three sides
    Scalar rin = Scalar(1) / sqrt3();
    CHECK(contains(tri, Circle{rin, Point{1, rin}}, Mode::pack));
    CHECK_FALSE(contains(tri, Circle{rin + q(1, 1000000), Point{1, rin}}, Mode::pack));
}

TEST_CASE("the plug fits the symmetric pocket") {
    SymmetricPocket p = unit_pocket();
    validate_pocket(p);
    Scalar r = Scalar(2) / sqrt3() - Scalar(1);
    Point c{1, Scalar(1) / sqrt3()};
    CHECK(contains(p, Circle{r, c}, Mode::pack));
    CHECK_FALSE(contains(p, Circle{r + q(1, 1000000), c}, Mode::pack));
    CHECK((containment_slack(p, Circle{r - q(1, 100), c}, Mode::pack) - q(1, 100)).band_sign() == Sign::zero);
    SymmetricPocket bad = p;
    bad.walls[2].center->y = Scalar(2);
    CHECK_THROWS_AS(validate_pocket(bad), DomainError);
}

TEST_CASE("signed distance sum is constant") {
    // unit side equilateral triangle, base on the x axis
    std::array<Line, 3> lines{Line{0, 1, 0}, Line{sqrt3(), -1, 0}, Line{-sqrt3(), -1, sqrt3()}};
    Scalar h = sqrt3() / Scalar(2);
    CHECK((signed_distance_sum(lines, Point{q(1, 2), sqrt3() / Scalar(6)}) - h).band_sign() == Sign::zero);
    CHECK((signed_distance_sum(lines, Point{0, 0}) - h).band_sign() == Sign::zero);
    CHECK((signed_distance_sum(lines, Point{1, 0}) - h).band_sign() == Sign::zero);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> u(-5000, 5000);
    for (int i = 0; i < 100; ++i) {
        Point p{q(u(rng), 1000), q(u(rng), 1000)};
        Scalar s = signed_distance_sum(lines, p);
        CHECK((s - h).band_sign() == Sign::zero);
        CHECK(std::abs(s.to_double() - std::sqrt(3.0) / 2) < 1e-12);
    }
    std::array<Line, 3> skew{Line{0, 1, 0}, Line{1, -1, 0}, Line{-1, -1, 1}};
    CHECK_THROWS_AS(signed_distance_sum(skew, Point{0, 0}), DomainError);
}

TEST_CASE("trilateration gives tangent circles") {
    Circle a = at(1, 0, 0), b = at(1, 2, 0), c{1, Point{1, sqrt3()}};
    Scalar r = inscribed_pocket_radius(1, 1, 1);
    Point p = trilaterate(a, b, c, r);
    for (const auto& w : {a, b, c}) {
        double d = std::hypot(p.x.to_double() - w.center->x.to_double(), p.y.to_double() - w.center->y.to_double());
        CHECK(std::abs(d - 1 - r.to_double()) < 1e-12);
        CHECK(circle_relation(w, Circle{r, p}) == Relation::tangent);
    }
}

TEST_CASE("apollonius finds the inner and outer solutions") {
    Circle a = at(1, 0, 0), b = at(1, 2, 0), c{1, Point{1, sqrt3()}};
    auto inner = apollonius(a, b, c);
    REQUIRE(inner.size() >= 1);
    bool found = false;
    for (const auto& s : inner) found = found || std::abs(s.radius.to_double() - (2 / std::sqrt(3.0) - 1)) < 1e-12;
    CHECK(found);
    auto all = apollonius(a, b, c, true);
    bool outer = false;
    for (const auto& s : all) outer = outer || std::abs(s.radius.to_double() + (2 / std::sqrt(3.0) + 1)) < 1e-12;
    CHECK(outer);
}

TEST_CASE("fill_pocket examples") {
    auto f = fill_pocket(1, 1, 1, q(1, 10));
    REQUIRE(f.size() == 1);
    CHECK(std::abs(f[0].radius.to_double() - 0.1547005384) < 1e-9);
    CHECK(fill_pocket(1, 1, 1, q(1, 5)).empty());
}

TEST_CASE("fill_pocket circles are tangent to their parents and disjoint from each other") {
    auto f = fill_pocket(1, q(3, 4), q(1, 2), q(1, 200));
    REQUIRE(f.size() > 3);
    // third wall by the cosine law, as placed by the canonical frame
    double A = 1.75, B = 1.5, C = 1.25;
    double x3 = (A * A + B * B - C * C) / (2 * A);
    for (size_t i = 1; i < f.size(); ++i) CHECK(f[i].radius.value() <= f[i - 1].radius.value());
    for (const auto& c : f) CHECK(c.radius.value() >= mpq_class(1, 200));
    for (size_t i = 0; i < f.size(); ++i)
        for (size_t j = i + 1; j < f.size(); ++j) CHECK(circle_relation(f[i], f[j]) != Relation::overlapping);
    for (const auto& c : f) {
        double cx = c.center->x.to_double(), cy = c.center->y.to_double(), r = c.radius.to_double();
        CHECK(std::hypot(cx, cy) >= 1 + r - 1e-12);
        CHECK(std::hypot(cx - 1.75, cy) >= 0.75 + r - 1e-12);
        CHECK(std::hypot(cx - x3, cy - std::sqrt(B * B - x3 * x3)) >= 0.5 + r - 1e-12);
    }
    // the first one is tangent to all three walls
    double cx = f[0].center->x.to_double(), cy = f[0].center->y.to_double(), r = f[0].radius.to_double();
    CHECK(std::abs(std::hypot(cx, cy) - 1 - r) < 1e-12);
    CHECK(std::abs(std::hypot(cx - 1.75, cy) - 0.75 - r) < 1e-12);
    CHECK(std::abs(std::hypot(cx - x3, cy - std::sqrt(B * B - x3 * x3)) - 0.5 - r) < 1e-12);
}
