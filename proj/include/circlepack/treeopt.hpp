#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace circlepack {

struct TreeEdge {
    std::string a, b;
    double w = 1.0;
};

struct WeightedTree {
    std::vector<std::string> nodes;
    std::vector<TreeEdge> edges;
    std::vector<std::string> leaves;
};

// Throws DomainError unless the tree is connected, acyclic, with positive weights.
void validate(const WeightedTree& t);

using Vec2 = std::array<double, 2>;

struct DesignProblem {
    WeightedTree tree;
    std::vector<Vec2> paper;  // convex, counterclockwise
};

void validate_polygon(const std::vector<Vec2>& poly);

struct ScaleSolution {
    double m = 0.0;
    std::vector<Vec2> positions;
    std::vector<std::pair<size_t, size_t>> active;
};

// Leaf to leaf path lengths, in the order of tree.leaves.
std::vector<std::vector<double>> path_lengths(const WeightedTree& t);

// Weight of the edge incident to each leaf.
std::vector<double> leaf_edge_weights(const WeightedTree& t);

struct FeasibilityViolation {
    std::string kind;  // "separation" or "containment"
    std::vector<size_t> indices;
    double amount = 0.0;
};

struct FeasibilityReport {
    bool feasible = true;
    std::vector<FeasibilityViolation> violations;
};

FeasibilityReport check_feasible(const DesignProblem& p, const ScaleSolution& s, double tolerance);

struct OptimizeConfig {
    int starts = 16;
    uint64_t seed = 0;
    int iterations = 4000;
    double tolerance = 1e-9;
};

ScaleSolution optimize_scale(const DesignProblem& p, const OptimizeConfig& cfg = {});

// Exhaustive maximin over the grid of spacing resolution * (bounding box extent).
ScaleSolution grid_oracle(const DesignProblem& p, double resolution);

// Closest point of the convex polygon.
Vec2 project_to_polygon(const std::vector<Vec2>& poly, const Vec2& q);

bool inside_polygon(const std::vector<Vec2>& poly, const Vec2& q, double tol = 0.0);

}  // namespace circlepack
