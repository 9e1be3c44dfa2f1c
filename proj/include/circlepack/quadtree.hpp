#pragma once

#include <optional>
#include <vector>

#include "circlepack/verifier.hpp"

namespace circlepack {

// Rational upper approximation of 4/sqrt(pi), within 2^-70.
const mpq_class& gamma_side();

struct DyadicAssignment {
    size_t index = 0;
    int exponent = 0;
    Scalar side;
    Point origin;  // lower left corner
};

// Smallest n with side / 2^n >= 2r.
int side_class(const Scalar& r, const Scalar& side = Scalar(gamma_side()));

struct QuadtreePacking {
    Square container;
    Layout layout;  // circle i is input i
    std::vector<DyadicAssignment> cells;
    mpq_class used_fraction;  // sum of cell areas over the container area
};

// Pack circles of total area at most (side / gamma)^2 into Square(side).
QuadtreePacking pack_quadtree(const std::vector<Scalar>& radii, const std::optional<Scalar>& side = std::nullopt);

// Radius of the disk of the given area, rounded down to 2^-bits.
Scalar radius_of_area(const Scalar& area, int bits = 128);

}  // namespace circlepack
