#pragma once

#include <vector>

#include "circlepack/geometry.hpp"

namespace circlepack::detail {

// Replace inexact radii by rationals just below them; radii that agree to 2^-100 share one value.
void deflate_radii(std::vector<Circle>& circles);

// Two intersection points of circles (a, ra), (b, rb) on the side of `toward`; when the
// circles barely miss, the foot on the center line.
Point circle_meet(const Point& a, const Scalar& ra, const Point& b, const Scalar& rb, const Point& toward);

std::vector<Point> circle_meets(const Point& a, const Scalar& ra, const Point& b, const Scalar& rb);

}  // namespace circlepack::detail
