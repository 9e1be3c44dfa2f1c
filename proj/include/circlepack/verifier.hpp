#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "circlepack/geometry.hpp"

namespace circlepack {

struct RadiusClass {
    Scalar radius;
    long count = 1;
};

struct PlacementInstance {
    Container container;
    Mode mode = Mode::place;
    std::vector<RadiusClass> circles;

    size_t total() const;
};

struct Layout {
    std::vector<Circle> circles;
    std::vector<std::string> roles;  // optional, parallel to circles
    std::optional<Scalar> tolerance;  // recorded verification tolerance
};

// Build an instance whose radius multiset is the multiset of layout radii.
PlacementInstance instance_of(const Container& box, Mode mode, const Layout& layout);

enum class Verdict { valid, invalid, unknown };
enum class ViolationKind { overlap, containment, radius_mismatch };

std::string to_string(Verdict v);
std::string to_string(ViolationKind k);

struct Violation {
    ViolationKind kind;
    std::vector<size_t> indices;
    Scalar margin;  // squared form for pairs, linear for containment
    bool undecided = false;
};

struct VerificationReport {
    Verdict verdict = Verdict::valid;
    std::vector<Violation> violations;
    Scalar min_clearance;
};

struct Tolerance {
    bool exact = true;
    Scalar value;

    static Tolerance exact_mode() { return {}; }
    static Tolerance of(const Scalar& t) { return {false, t}; }
};

VerificationReport verify(const PlacementInstance& inst, const Layout& layout,
                          const Tolerance& tol = Tolerance::exact_mode());

Scalar min_clearance(const PlacementInstance& inst, const Layout& layout);

// Candidate index pairs (i < j) whose disks, grown by pad, may intersect.
std::vector<std::pair<size_t, size_t>> candidate_pairs(const std::vector<Circle>& circles, double pad = 0.0);

}  // namespace circlepack
