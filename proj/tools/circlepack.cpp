#include <filesystem>
#include <iostream>
#include <map>

#include "CLI11.hpp"

#include "circlepack/io.hpp"
#include "circlepack/svg.hpp"

using namespace circlepack;
using io::json;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUnknown = 2;
constexpr int kParse = 64;
constexpr int kPrecondition = 65;
constexpr int kInternal = 70;

void emit(const json& j, const std::string& out) {
    if (out.empty() || out == "-")
        std::cout << j.dump(2) << "\n";
    else
        io::write_file(out, j);
}

std::optional<Vec2> rectangle_extent(const std::vector<Vec2>& poly) {
    if (poly.size() != 4) return std::nullopt;
    double w = 0, h = 0;
    for (const auto& p : poly) {
        w = std::max(w, p[0]);
        h = std::max(h, p[1]);
    }
    std::vector<Vec2> want{{0, 0}, {w, 0}, {w, h}, {0, h}};
    for (int s = 0; s < 4; ++s) {
        bool same = true;
        for (int i = 0; i < 4; ++i) same = same && poly[(i + s) % 4] == want[i];
        if (same && w > 0 && h > 0) return Vec2{w, h};
    }
    return std::nullopt;
}

bool is_star(const WeightedTree& t) {
    if (t.leaves.size() < 2 || t.edges.size() != t.leaves.size()) return false;
    std::map<std::string, size_t> deg;
    for (const auto& e : t.edges) {
        ++deg[e.a];
        ++deg[e.b];
    }
    for (const auto& l : t.leaves)
        if (deg[l] != 1) return false;
    return true;
}

Tolerance tolerance_from(bool exact, const std::string& tol, const std::optional<Scalar>& header) {
    if (exact) return Tolerance::exact_mode();
    if (!tol.empty()) {
        Scalar t = Scalar::parse(tol);
        if (t.certain_sign() != Sign::positive) throw PreconditionError("tolerance must be positive");
        return Tolerance::of(t);
    }
    if (header && header->certain_sign() == Sign::positive) return Tolerance::of(*header);
    return Tolerance::exact_mode();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact circle placement and packing toolkit"};
    app.require_subcommand(1);
    bool decimal = false;
    app.add_flag("--decimal", decimal, "Write scalars as 12 digit decimals");

    std::string in_path, out_path;

    auto* solve = app.add_subcommand("solve-3p", "Decide a 3-Partition instance");
    std::vector<std::string> items;
    solve->add_option("input", in_path, "3part.json");
    solve->add_option("--items", items, "Items given inline")->delimiter(',');
    solve->add_option("--out", out_path, "Write the partition JSON here");

    auto* gen = app.add_subcommand("gen-reduction", "Compile a 3-Partition instance into circle placement");
    std::string paper = "triangle", min_filler;
    int depth = -1;
    long forced_N = 0;
    gen->add_option("input", in_path, "3part.json")->required();
    gen->add_option("--paper", paper, "triangle | rect | square")->check(CLI::IsMember({"triangle", "rect", "rectangle", "square"}));
    gen->add_option("--out", out_path, "Output directory")->required();
    gen->add_option("--depth", depth, "Square gadget depth");
    gen->add_option("--min-filler", min_filler, "Smallest filler radius");
    gen->add_option("--N", forced_N, "Override the sizing parameter N");

    auto* ver = app.add_subcommand("verify", "Verify a layout against an instance");
    std::string inst_path, layout_path, tol;
    bool exact = false;
    ver->add_option("--instance", inst_path, "instance.json; defaults to the layout header");
    ver->add_option("layout", layout_path, "layout.json")->required();
    auto* exact_opt = ver->add_flag("--exact", exact, "Exact mode");
    ver->add_option("--tol", tol, "Tolerance")->excludes(exact_opt);
    ver->add_option("--out", out_path, "Write the report here");

    auto* qp = app.add_subcommand("qpack", "Quad-tree packing into the 4/sqrt(pi) square");
    std::string svg_path, side, inst_out;
    qp->add_option("input", in_path, "circles.json")->required();
    qp->add_option("--out", out_path, "layout.json");
    qp->add_option("--svg", svg_path, "Also render an SVG");
    qp->add_option("--side", side, "Container side; default gamma");
    qp->add_option("--instance-out", inst_out, "Also write instance.json");

    auto* to = app.add_subcommand("treeopt", "Maximize the tree-method scale");
    std::string tree_path, paper_path, layout_out;
    OptimizeConfig cfg;
    to->add_option("--tree", tree_path, "tree.json")->required();
    to->add_option("--paper", paper_path, "paper.json")->required();
    to->add_option("--starts", cfg.starts, "Random starts");
    to->add_option("--seed", cfg.seed, "Seed");
    to->add_option("--iterations", cfg.iterations, "Iterations per start");
    to->add_option("--tolerance", cfg.tolerance, "Feasibility tolerance");
    to->add_option("--out", out_path, "solution.json");
    to->add_option("--layout", layout_out, "Write the circle layout (star trees, rectangular paper)");
    to->add_option("--svg", svg_path, "Render the circle layout");

    auto* rd = app.add_subcommand("render", "Render layout.json as SVG");
    SvgOptions svg_opt;
    rd->add_option("layout", layout_path, "layout.json")->required();
    rd->add_option("--out", out_path, "SVG path")->required();
    rd->add_option("--stroke", svg_opt.stroke, "Stroke width");
    rd->add_flag("--labels", svg_opt.labels, "Label circles by index");
    rd->add_flag("--pockets", svg_opt.pockets, "Mark pockets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParse;
    }
    io::Format fmt{decimal};

    try {
        if (*solve) {
            ThreePartitionInstance inst;
            if (!items.empty()) {
                json arr = json::array();
                for (const auto& s : items) arr.push_back(s);
                inst = io::three_partition_from_json(arr);
            } else if (!in_path.empty()) {
                inst = io::three_partition_from_json(io::read_file(in_path));
            } else {
                throw ParseError("solve-3p needs an input file or --items");
            }
            auto p = solve_3partition(inst);
            std::cout << (p ? "feasible" : "infeasible") << "\n";
            json j = io::partition_to_json(p, inst);
            if (!out_path.empty()) io::write_file(out_path, j);
            if (p)
                for (const auto& t : j["values"]) std::cout << t.dump() << "\n";
            return p ? kOk : kInvalid;
        }
        if (*gen) {
            auto inst = io::three_partition_from_json(io::read_file(in_path));
            ReductionOptions opt;
            if (depth >= 0) opt.depth = depth;
            if (!min_filler.empty()) opt.min_filler = Scalar::parse(min_filler);
            if (forced_N > 0) opt.N = forced_N;
            auto art = generate_reduction(inst, paper_from_string(paper), opt);
            std::filesystem::create_directories(out_path);
            std::filesystem::path dir(out_path);
            io::write_file((dir / "instance.json").string(), io::instance_to_json(art.instance, fmt));
            io::write_file((dir / "provenance.json").string(), io::provenance_to_json(art, fmt));
            io::LayoutFile base{art.base, art.instance.container, Mode::place, "gen-reduction:scaffold", art.scaffold.pockets};
            io::write_file((dir / "scaffold.json").string(), io::layout_to_json(base, fmt));
            if (art.witness) {
                io::LayoutFile w{*art.witness, art.instance.container, Mode::place, "gen-reduction:witness", art.scaffold.pockets};
                io::write_file((dir / "layout.json").string(), io::layout_to_json(w, fmt));
            }
            std::cout << (art.witness ? "feasible" : "infeasible") << " circles=" << art.instance.total()
                      << " pockets=" << art.pocket_count << " N=" << art.sizing.N << "\n";
            return art.witness ? kOk : kInvalid;
        }
        if (*ver) {
            io::LayoutFile lf = io::layout_from_json(io::read_file(layout_path));
            PlacementInstance inst;
            if (!inst_path.empty()) {
                inst = io::instance_from_json(io::read_file(inst_path));
            } else {
                if (!lf.container || !lf.mode) throw ParseError("layout header lacks container or mode; pass --instance");
                inst = instance_of(*lf.container, *lf.mode, lf.layout);
            }
            Tolerance t = tolerance_from(exact, tol, lf.layout.tolerance);
            auto rep = verify(inst, lf.layout, t);
            json j = io::report_to_json(rep, fmt);
            j["tolerance"] = t.exact ? json("exact") : io::scalar_to_json(t.value, fmt);
            emit(j, out_path);
            if (!out_path.empty()) std::cout << to_string(rep.verdict) << "\n";
            return rep.verdict == Verdict::valid ? kOk : rep.verdict == Verdict::invalid ? kInvalid : kUnknown;
        }
        if (*qp) {
            auto cs = io::circles_from_json(io::read_file(in_path));
            std::optional<Scalar> s;
            if (!side.empty()) s = Scalar::parse(side);
            auto pk = pack_quadtree(cs.radii, s);
            io::LayoutFile lf{pk.layout, Container{pk.container}, Mode::pack, "qpack", {}};
            emit(io::layout_to_json(lf, fmt), out_path);
            if (!inst_out.empty())
                io::write_file(inst_out, io::instance_to_json(instance_of(pk.container, Mode::pack, pk.layout), fmt));
            if (!svg_path.empty()) io::write_text(svg_path, render_svg(lf));
            return kOk;
        }
        if (*to) {
            DesignProblem p{io::tree_from_json(io::read_file(tree_path)), io::paper_from_json(io::read_file(paper_path))};
            auto sol = optimize_scale(p, cfg);
            emit(io::solution_to_json(sol, p.tree), out_path);
            if (!layout_out.empty() || !svg_path.empty()) {
                auto ext = rectangle_extent(p.paper);
                if (!ext || !is_star(p.tree))
                    throw PreconditionError("circle layouts need a star tree on rectangular paper at the origin");
                auto w = leaf_edge_weights(p.tree);
                io::LayoutFile lf;
                Scalar W = Scalar::from_double((*ext)[0]), H = Scalar::from_double((*ext)[1]);
                lf.container = W.same_as(H) ? Container{Square{W}} : Container{Rectangle{W, H}};
                lf.mode = Mode::place;
                lf.generator = "treeopt";
                Scalar m = Scalar::from_double(sol.m);
                for (size_t i = 0; i < sol.positions.size(); ++i) {
                    lf.layout.circles.push_back({m * Scalar::from_double(w[i]),
                                                 Point{Scalar::from_double(sol.positions[i][0]), Scalar::from_double(sol.positions[i][1])}});
                    lf.layout.roles.push_back("leaf");
                }
                lf.layout.tolerance = Scalar::from_double(cfg.tolerance);
                if (!layout_out.empty()) io::write_file(layout_out, io::layout_to_json(lf, fmt));
                if (!svg_path.empty()) io::write_text(svg_path, render_svg(lf));
            }
            return kOk;
        }
        if (*rd) {
            io::LayoutFile lf = io::layout_from_json(io::read_file(layout_path));
            io::write_text(out_path, render_svg(lf, svg_opt));
            return kOk;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const ContractViolation& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    } catch (const std::invalid_argument& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return kPrecondition;
    } catch (const GeometricInfeasibility& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return kPrecondition;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    }
    return kOk;
}
