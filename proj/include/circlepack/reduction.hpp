#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "circlepack/verifier.hpp"

namespace circlepack {

struct ThreePartitionInstance {
    std::vector<mpq_class> items;
    int n = 0;
};

// Throws DomainError when the instance invariants fail.
void validate(const ThreePartitionInstance& inst);

struct Partition {
    std::vector<std::array<size_t, 3>> triples;
};

std::optional<Partition> solve_3partition(const ThreePartitionInstance& inst);

// Minimum of sum x' over triples with positive sum; nullopt stands for +infinity.
std::optional<mpq_class> infeasibility_gap(const ThreePartitionInstance& inst);

long common_denominator(const ThreePartitionInstance& inst);

// N = max(ceil(2/delta), 8 D).
long choose_N(const ThreePartitionInstance& inst);

struct SizingParams {
    long N = 0;
    mpq_class epsilon;
    std::optional<mpq_class> delta;
    mpq_class plug_radius;
    mpq_class nominal_shim;
    std::vector<mpq_class> shim_radii;
    mpq_class approx_tolerance;
    mpq_class scale{1};  // rock radius of the pockets the sizes refer to
};

// Tight corner shim for a plug of radius rp in the unit pocket.
Scalar tight_shim_radius(const Scalar& rp);

SizingParams size_shims(const ThreePartitionInstance& inst, long N, const mpq_class& scale = 1);

// Corner j lies between walls j and j+1.
Point wedge_shim(const SymmetricPocket& pocket, int corner, const Scalar& r);

struct PlugFeasibilityCertificate {
    SymmetricPocket pocket;
    std::array<Point, 3> shim_centers;
    std::array<Scalar, 3> constraint_radii;  // r_plug + shim radius
    std::optional<Point> feasible_point;
    Scalar margin;            // maximin clearance over the pocket
    Scalar candidate_margin;  // best clearance among boundary intersection candidates
    bool feasible = false;
};

PlugFeasibilityCertificate plug_feasible(const SymmetricPocket& pocket, const std::array<Scalar, 3>& shim_radii,
                                         const Scalar& r_plug);

// Maximin clearance by Apollonius candidates; independent of the candidate enumeration.
struct MaximinResult {
    Scalar margin;
    Point point;
};
MaximinResult plug_maximin(const SymmetricPocket& pocket, const std::array<Point, 3>& shim_centers,
                           const std::array<Scalar, 3>& shim_radii, const Scalar& r_plug);

struct MirrorFace {
    size_t off_axis, on_axis;
    Point axis_point, axis_dir;
};

struct Scaffold {
    Container container;
    Layout layout;  // rocks, auxiliary circles and fillers, roles filled
    std::vector<Circle> ideal;  // the same circles before radii were made rational
    std::vector<std::array<size_t, 3>> pockets;
    std::vector<MirrorFace> mirror_faces;
    Scalar construction_tolerance;
    int size = 0;  // k, or depth for the square

    size_t count(const std::string& role) const;
    SymmetricPocket pocket(size_t i) const;
};

Scaffold triangle_scaffold(int k);
Scaffold rectangle_scaffold(int k);
// Without min_filler each gadget's faces are filled down to its own plug radius.
Scaffold square_scaffold(int depth, const std::optional<Scalar>& min_filler = std::nullopt);

// Fill the mirror faces of a scaffold with circles of radius at least min_radius.
void fill_mirror_faces(Scaffold& s, const Scalar& min_radius);

struct SquareGadget {
    Scalar g, f;      // plug and fixation radius, walls of radius 1
    Scalar s;         // sqrt(g)
    Scalar y1, yf;    // heights of the top plug and of the fixation circle
};
// Gadget in the pocket of walls (-1,0), (1,0) of radius 1 and a third circle of radius t on the axis.
SquareGadget square_gadget(const Scalar& t);

// Wall radius of the leaf pockets of square_scaffold(depth), before rounding.
Scalar square_leaf_radius(int depth);

enum class Paper { triangle, rectangle, square };
std::string to_string(Paper p);
Paper paper_from_string(const std::string& s);

struct ProvenanceClass {
    Scalar radius;
    long count = 0;
    std::string role;
    std::vector<size_t> items;
};

struct ReductionOptions {
    std::optional<long> N;
    std::optional<Scalar> min_filler;
    std::optional<int> depth;
};

struct ReductionArtifact {
    Paper paper = Paper::triangle;
    PlacementInstance instance;
    Scaffold scaffold;
    size_t pocket_count = 0;
    std::vector<size_t> used_pockets;  // pocket of triple t
    Layout base;                       // scaffold plus blockers and fillers
    std::optional<Layout> witness;
    std::optional<Partition> partition;
    std::vector<ProvenanceClass> provenance;
    SizingParams sizing;
    Scalar witness_tolerance;
};

ReductionArtifact generate_reduction(const ThreePartitionInstance& inst, Paper paper, const ReductionOptions& opt = {});

struct AssignmentResult {
    bool feasible = false;
    long assignments = 0;
    std::vector<std::array<size_t, 3>> triples;  // triple placed in pocket t when feasible
};

// Every ordered assignment of item triples to the used pockets, decided by plug_feasible.
AssignmentResult check_assignments(const ReductionArtifact& art, const ThreePartitionInstance& inst);

}  // namespace circlepack
