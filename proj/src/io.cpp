#include "circlepack/io.hpp"

#include <fstream>
#include <sstream>

namespace circlepack::io {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::string mode_name(Mode m) { return to_string(m); }

Mode mode_from(const std::string& s) {
    if (s == "pack") return Mode::pack;
    if (s == "place") return Mode::place;
    throw ParseError("mode must be 'pack' or 'place'");
}

size_t index_from(const json& j) {
    if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError("expected a nonnegative integer index");
    return j.get<size_t>();
}

json circle_to_json(const Circle& c, const Format& f) {
    json o;
    if (c.center) {
        o["x"] = scalar_to_json(c.center->x, f);
        o["y"] = scalar_to_json(c.center->y, f);
    }
    o["r"] = scalar_to_json(c.radius, f);
    return o;
}

Circle circle_from_json(const json& j) {
    Circle c{scalar_from_json(field(j, "r")), std::nullopt};
    if (j.contains("x") || j.contains("y")) c.center = Point{scalar_from_json(field(j, "x")), scalar_from_json(field(j, "y"))};
    return c;
}

}  // namespace

json scalar_to_json(const Scalar& s, const Format& f) {
    if (f.decimal) return s.decimal(12);
    if (s.exact()) return s.str();
    return s.value().get_str() + "~" + s.error().get_str();
}

Scalar scalar_from_json(const json& j) {
    if (j.is_number_integer()) return Scalar(static_cast<long>(j.get<long long>()));
    if (j.is_number()) return Scalar::parse(j.dump());
    if (!j.is_string()) throw ParseError("scalar must be a string or a number");
    std::string s = j.get<std::string>();
    auto t = s.find('~');
    if (t == std::string::npos) return Scalar::parse(s);
    Scalar v = Scalar::parse(s.substr(0, t));
    Scalar e = Scalar::parse(s.substr(t + 1));
    if (!v.exact() || !e.exact() || sgn(e.value()) < 0) throw ParseError("malformed interval scalar '" + s + "'");
    return Scalar(v.value(), e.value());
}

void check_version(const json& j) {
    if (!j.is_object()) throw ParseError("expected a JSON object");
    if (!j.contains("schema_version")) return;
    const auto& v = j.at("schema_version");
    if (!v.is_string()) throw ParseError("schema_version must be a string");
    std::string s = v.get<std::string>();
    std::string major = s.substr(0, s.find('.'));
    if (major != "1") throw ParseError("unsupported schema_version '" + s + "'");
}

json container_to_json(const Container& c, const Format& f) {
    json o;
    std::visit(
        [&](const auto& b) {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Square>) {
                o["type"] = "square";
                o["side"] = scalar_to_json(b.side, f);
            } else if constexpr (std::is_same_v<T, Rectangle>) {
                o["type"] = "rectangle";
                o["width"] = scalar_to_json(b.width, f);
                o["height"] = scalar_to_json(b.height, f);
            } else if constexpr (std::is_same_v<T, EquilateralTriangle>) {
                o["type"] = "triangle";
                o["side"] = scalar_to_json(b.side, f);
            } else {
                o["type"] = "pocket";
                o["walls"] = json::array();
                for (const auto& w : b.walls) o["walls"].push_back(circle_to_json(w, f));
            }
        },
        c);
    return o;
}

Container container_from_json(const json& j) {
    std::string t = field(j, "type").get<std::string>();
    if (t == "square") return Square{scalar_from_json(field(j, "side"))};
    if (t == "rectangle") return Rectangle{scalar_from_json(field(j, "width")), scalar_from_json(field(j, "height"))};
    if (t == "triangle") return EquilateralTriangle{scalar_from_json(field(j, "side"))};
    if (t == "pocket") {
        const auto& w = field(j, "walls");
        if (!w.is_array() || w.size() != 3) throw ParseError("pocket needs three walls");
        SymmetricPocket p;
        for (int i = 0; i < 3; ++i) {
            p.walls[i] = circle_from_json(w[i]);
            if (!p.walls[i].center) throw ParseError("pocket walls need centers");
        }
        return p;
    }
    throw ParseError("unknown container type '" + t + "'");
}

json layout_to_json(const LayoutFile& l, const Format& f) {
    json o;
    o["schema_version"] = kSchemaVersion;
    json h;
    h["generator"] = l.generator;
    h["tolerance"] = l.layout.tolerance ? scalar_to_json(*l.layout.tolerance, f) : json(nullptr);
    if (l.container) h["container"] = container_to_json(*l.container, f);
    if (l.mode) h["mode"] = mode_name(*l.mode);
    o["header"] = h;
    o["circles"] = json::array();
    for (size_t i = 0; i < l.layout.circles.size(); ++i) {
        json c = circle_to_json(l.layout.circles[i], f);
        if (i < l.layout.roles.size() && !l.layout.roles[i].empty()) c["role"] = l.layout.roles[i];
        o["circles"].push_back(c);
    }
    if (!l.pockets.empty()) o["pockets"] = l.pockets;
    return o;
}

LayoutFile layout_from_json(const json& j) {
    check_version(j);
    LayoutFile l;
    if (j.contains("header")) {
        const auto& h = j.at("header");
        if (h.contains("generator") && h.at("generator").is_string()) l.generator = h.at("generator").get<std::string>();
        if (h.contains("tolerance") && !h.at("tolerance").is_null()) l.layout.tolerance = scalar_from_json(h.at("tolerance"));
        if (h.contains("container")) l.container = container_from_json(h.at("container"));
        if (h.contains("mode")) l.mode = mode_from(h.at("mode").get<std::string>());
    }
    const auto& cs = field(j, "circles");
    if (!cs.is_array()) throw ParseError("'circles' must be an array");
    bool any_role = false;
    for (const auto& c : cs) {
        Circle circle = circle_from_json(c);
        if (!circle.center) throw ParseError("layout circles need x and y");
        l.layout.circles.push_back(circle);
        std::string role = c.contains("role") ? c.at("role").get<std::string>() : "";
        any_role = any_role || !role.empty();
        l.layout.roles.push_back(role);
    }
    if (!any_role) l.layout.roles.clear();
    if (j.contains("pockets"))
        for (const auto& p : j.at("pockets")) {
            if (!p.is_array() || p.size() != 3) throw ParseError("pockets are index triples");
            l.pockets.push_back({index_from(p[0]), index_from(p[1]), index_from(p[2])});
        }
    return l;
}

json instance_to_json(const PlacementInstance& inst, const Format& f) {
    json o;
    o["schema_version"] = kSchemaVersion;
    o["container"] = container_to_json(inst.container, f);
    o["mode"] = mode_name(inst.mode);
    o["circles"] = json::array();
    for (const auto& c : inst.circles) o["circles"].push_back({{"radius", scalar_to_json(c.radius, f)}, {"count", c.count}});
    return o;
}

PlacementInstance instance_from_json(const json& j) {
    check_version(j);
    PlacementInstance inst;
    inst.container = container_from_json(field(j, "container"));
    inst.mode = mode_from(field(j, "mode").get<std::string>());
    for (const auto& c : field(j, "circles")) {
        RadiusClass rc{scalar_from_json(field(c, "radius")), c.contains("count") ? c.at("count").get<long>() : 1};
        if (rc.count < 1) throw ParseError("circle counts must be positive");
        if (rc.radius.certain_sign() != Sign::positive) throw ParseError("radii must be positive");
        inst.circles.push_back(rc);
    }
    return inst;
}

json report_to_json(const VerificationReport& r, const Format& f) {
    json o;
    o["schema_version"] = kSchemaVersion;
    o["verdict"] = to_string(r.verdict);
    o["violations"] = json::array();
    for (const auto& v : r.violations)
        o["violations"].push_back({{"kind", to_string(v.kind)},
                                   {"indices", v.indices},
                                   {"margin", scalar_to_json(v.margin, f)},
                                   {"undecided", v.undecided}});
    o["min_clearance"] = scalar_to_json(r.min_clearance, f);
    o["min_clearance_decimal"] = r.min_clearance.decimal(12);
    return o;
}

json three_partition_to_json(const ThreePartitionInstance& inst) {
    json o;
    o["schema_version"] = kSchemaVersion;
    o["n"] = inst.n;
    o["items"] = json::array();
    for (const auto& x : inst.items) o["items"].push_back(Scalar(x).str());
    return o;
}

ThreePartitionInstance three_partition_from_json(const json& j) {
    ThreePartitionInstance inst;
    const json* items = &j;
    if (j.is_object()) {
        check_version(j);
        items = &field(j, "items");
    }
    if (!items->is_array()) throw ParseError("items must be an array");
    for (const auto& x : *items) {
        Scalar s = scalar_from_json(x);
        if (!s.exact()) throw ParseError("items must be rational");
        inst.items.push_back(s.value());
    }
    if (j.is_object() && j.contains("n"))
        inst.n = j.at("n").get<int>();
    else
        inst.n = static_cast<int>(inst.items.size() / 3);
    return inst;
}

json partition_to_json(const std::optional<Partition>& p, const ThreePartitionInstance& inst) {
    json o;
    o["schema_version"] = kSchemaVersion;
    o["feasible"] = p.has_value();
    if (p) {
        o["triples"] = json::array();
        o["values"] = json::array();
        for (const auto& t : p->triples) {
            o["triples"].push_back(t);
            json v = json::array();
            for (size_t i : t) v.push_back(Scalar(inst.items[i]).str());
            o["values"].push_back(v);
        }
    }
    return o;
}

json provenance_to_json(const ReductionArtifact& art, const Format& f) {
    json o;
    o["schema_version"] = kSchemaVersion;
    o["paper"] = to_string(art.paper);
    o["N"] = art.sizing.N;
    o["epsilon"] = scalar_to_json(Scalar(art.sizing.epsilon), f);
    o["delta"] = art.sizing.delta ? scalar_to_json(Scalar(*art.sizing.delta), f) : json(nullptr);
    o["plug_radius"] = scalar_to_json(Scalar(art.sizing.plug_radius), f);
    o["nominal_shim"] = scalar_to_json(Scalar(art.sizing.nominal_shim), f);
    o["rock_radius"] = scalar_to_json(Scalar(art.sizing.scale), f);
    o["witness_tolerance"] = scalar_to_json(art.witness_tolerance, f);
    o["pocket_count"] = art.pocket_count;
    o["used_pockets"] = art.used_pockets;
    o["pockets"] = art.scaffold.pockets;
    o["feasible"] = art.partition.has_value();
    o["classes"] = json::array();
    for (const auto& c : art.provenance) {
        json k{{"radius", scalar_to_json(c.radius, f)}, {"count", c.count}, {"role", c.role}};
        if (!c.items.empty()) k["items"] = c.items;
        o["classes"].push_back(k);
    }
    o["shims"] = json::array();
    for (size_t i = 0; i < art.sizing.shim_radii.size(); ++i)
        o["shims"].push_back({{"item", i}, {"radius", scalar_to_json(Scalar(art.sizing.shim_radii[i]), f)}});
    return o;
}

WeightedTree tree_from_json(const json& j) {
    check_version(j);
    auto name = [](const json& v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number_integer()) return std::to_string(v.get<long long>());
        throw ParseError("tree node ids must be strings or integers");
    };
    WeightedTree t;
    if (j.contains("nodes")) {
        const auto& n = j.at("nodes");
        if (n.is_number_integer()) {
            for (long long i = 0; i < n.get<long long>(); ++i) t.nodes.push_back(std::to_string(i));
        } else {
            for (const auto& v : n) t.nodes.push_back(name(v));
        }
    }
    for (const auto& e : field(j, "edges")) {
        const auto& w = field(e, "w");
        if (!w.is_number()) throw ParseError("edge weight must be a number");
        t.edges.push_back({name(field(e, "a")), name(field(e, "b")), w.get<double>()});
    }
    for (const auto& v : field(j, "leaves")) t.leaves.push_back(name(v));
    return t;
}

json tree_to_json(const WeightedTree& t) {
    json o;
    o["schema_version"] = kSchemaVersion;
    o["nodes"] = t.nodes;
    o["edges"] = json::array();
    for (const auto& e : t.edges) o["edges"].push_back({{"a", e.a}, {"b", e.b}, {"w", e.w}});
    o["leaves"] = t.leaves;
    return o;
}

std::vector<Vec2> paper_from_json(const json& j) {
    check_version(j);
    std::vector<Vec2> poly;
    for (const auto& p : field(j, "polygon")) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw ParseError("polygon vertices are [x, y] number pairs");
        poly.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    return poly;
}

json solution_to_json(const ScaleSolution& s, const WeightedTree& t) {
    json o;
    o["schema_version"] = kSchemaVersion;
    o["m"] = s.m;
    o["m_exact"] = Scalar::from_double(s.m).str();
    o["leaves"] = t.leaves;
    o["positions"] = json::array();
    for (const auto& p : s.positions) o["positions"].push_back({p[0], p[1]});
    o["active_pairs"] = json::array();
    for (auto [a, b] : s.active) o["active_pairs"].push_back({a, b});
    return o;
}

CircleSet circles_from_json(const json& j) {
    CircleSet cs;
    const json* list = &j;
    if (j.is_object()) {
        check_version(j);
        if (j.contains("radii")) {
            list = &j.at("radii");
        } else if (j.contains("areas")) {
            list = &j.at("areas");
            cs.from_areas = true;
        } else {
            throw ParseError("circles file needs 'radii' or 'areas'");
        }
    }
    if (!list->is_array()) throw ParseError("circle list must be an array");
    for (const auto& v : *list) {
        Scalar s = scalar_from_json(v);
        if (!s.exact() || s.certain_sign() != Sign::positive) throw ParseError("circle sizes must be positive rationals");
        cs.radii.push_back(cs.from_areas ? radius_of_area(s) : s);
    }
    return cs;
}

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_file(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

}  // namespace circlepack::io
