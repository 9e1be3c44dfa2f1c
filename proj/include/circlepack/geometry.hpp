#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "circlepack/errors.hpp"
#include "circlepack/scalar.hpp"

namespace circlepack {

struct Point {
    Scalar x, y;
};

struct Circle {
    Scalar radius;
    std::optional<Point> center;
};

enum class Mode { pack, place };

// Axis aligned, lower left corner at the origin.
struct Square {
    Scalar side;
};
struct Rectangle {
    Scalar width, height;
};
// Base from (0,0) to (side,0), apex above.
struct EquilateralTriangle {
    Scalar side;
};
// Interstice bounded by three mutually tangent circles.
struct SymmetricPocket {
    std::array<Circle, 3> walls;
};

using Container = std::variant<Square, Rectangle, EquilateralTriangle, SymmetricPocket>;

enum class Relation { disjoint, tangent, overlapping };

std::string to_string(Relation r);
std::string to_string(Mode m);

const Scalar& sqrt3();

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(const Scalar& s, const Point& p);
Scalar dot(const Point& a, const Point& b);
Scalar cross(const Point& a, const Point& b);
Scalar dist2(const Point& a, const Point& b);

// Classify a value as for the given tolerance mode: band rule when exact_mode.
Sign classify(const Scalar& v, bool exact_mode);

// Largest circle inscribed between three mutually tangent circles, with error at most
// tol (working precision when absent).
Scalar inscribed_pocket_radius(const Scalar& r1, const Scalar& r2, const Scalar& r3,
                               const std::optional<Scalar>& tol = std::nullopt);

Relation circle_relation(const Circle& a, const Circle& b);

// Squared form d^2 - (ra + rb)^2.
Scalar pair_margin(const Circle& a, const Circle& b);

// Signed containment constraints; each must be >= 0. tol relaxes every one by tol
// in linear units (squared forms become d^2 - (r - tol)^2).
std::vector<Scalar> containment_constraints(const Container& box, const Circle& c, Mode mode,
                                            const Scalar& tol = Scalar(0));

// Linear containment slack: signed distance from the disk (pack) or center (place) to the boundary.
Scalar containment_slack(const Container& box, const Circle& c, Mode mode);

bool contains(const Container& box, const Circle& c, Mode mode);

// Throws DomainError unless the pocket walls have centers and are pairwise tangent within tol.
void validate_pocket(const SymmetricPocket& p, const Scalar& tol = Scalar(0));

SymmetricPocket unit_pocket();

struct Line {
    Scalar a, b, c;  // a x + b y + c = 0
};

Scalar signed_distance_sum(const std::array<Line, 3>& lines, const Point& p);

// Center of the circle of radius r externally tangent to three circles, by
// eliminating to a linear system. Needs non collinear centers.
Point trilaterate(const Circle& c1, const Circle& c2, const Circle& c3, const Scalar& r);

// Circles externally tangent to all three given circles (Apollonius). Radius may
// be negative when requested; only solutions with real discriminant are returned.
std::vector<Circle> apollonius(const Circle& c1, const Circle& c2, const Circle& c3, bool allow_negative = false);

// Inscribed circles in decreasing radius, for the pocket of radii r1, r2, r3 placed in a
// canonical frame: first circle at the origin, second on the positive x axis.
std::vector<Circle> fill_pocket(const Scalar& r1, const Scalar& r2, const Scalar& r3, const Scalar& min_radius);

// Same cascade for positioned walls.
std::vector<Circle> inscribe_cascade(const Circle& a, const Circle& b, const Circle& c, const Scalar& min_radius);

// Cascade for a cyclic face of circles, consecutive members tangent.
std::vector<Circle> fill_face(const std::vector<Circle>& ring, const Scalar& min_radius);

// Cascade for a half pocket cut by a mirror line through axis_point along axis_dir:
// x_off is the wall off the line, y_on a wall centered on it.
std::vector<Circle> fill_mirror_face(const Circle& x_off, const Circle& y_on, const Point& axis_point,
                                     const Point& axis_dir, const Scalar& min_radius);

}  // namespace circlepack
