#pragma once

#include <string>

#include "json.hpp"

#include "circlepack/quadtree.hpp"
#include "circlepack/reduction.hpp"
#include "circlepack/treeopt.hpp"

namespace circlepack::io {

using nlohmann::json;

inline constexpr const char* kSchemaVersion = "1.0";

struct Format {
    bool decimal = false;  // 12 significant digits instead of p/q
};

// Exact scalars become "p/q"; intervals become "p/q~e" with e the error radius.
json scalar_to_json(const Scalar& s, const Format& f = {});
Scalar scalar_from_json(const json& j);

// Throws ParseError on a missing object or an unsupported major version.
void check_version(const json& j);

json container_to_json(const Container& c, const Format& f = {});
Container container_from_json(const json& j);

struct LayoutFile {
    Layout layout;
    std::optional<Container> container;
    std::optional<Mode> mode;
    std::string generator;
    std::vector<std::array<size_t, 3>> pockets;
};

json layout_to_json(const LayoutFile& l, const Format& f = {});
LayoutFile layout_from_json(const json& j);

json instance_to_json(const PlacementInstance& inst, const Format& f = {});
PlacementInstance instance_from_json(const json& j);

json report_to_json(const VerificationReport& r, const Format& f = {});

json three_partition_to_json(const ThreePartitionInstance& inst);
ThreePartitionInstance three_partition_from_json(const json& j);

json partition_to_json(const std::optional<Partition>& p, const ThreePartitionInstance& inst);

json provenance_to_json(const ReductionArtifact& art, const Format& f = {});

WeightedTree tree_from_json(const json& j);
json tree_to_json(const WeightedTree& t);
std::vector<Vec2> paper_from_json(const json& j);
json solution_to_json(const ScaleSolution& s, const WeightedTree& t);

struct CircleSet {
    std::vector<Scalar> radii;
    bool from_areas = false;
};
CircleSet circles_from_json(const json& j);

json read_file(const std::string& path);
void write_file(const std::string& path, const json& j);
void write_text(const std::string& path, const std::string& text);

}  // namespace circlepack::io
