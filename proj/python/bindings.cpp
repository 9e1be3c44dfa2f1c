#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "circlepack/io.hpp"
#include "circlepack/svg.hpp"

namespace py = pybind11;
using namespace circlepack;
using io::json;

namespace {

std::string inscribed(const std::string& a, const std::string& b, const std::string& c, int digits) {
    return inscribed_pocket_radius(Scalar::parse(a), Scalar::parse(b), Scalar::parse(c)).decimal(digits);
}

std::string solve(const std::string& doc) {
    auto inst = io::three_partition_from_json(json::parse(doc));
    return io::partition_to_json(solve_3partition(inst), inst).dump();
}

std::string verify_json(const std::string& instance, const std::string& layout, const std::string& tol) {
    auto inst = io::instance_from_json(json::parse(instance));
    auto lf = io::layout_from_json(json::parse(layout));
    Tolerance t = tol.empty() ? Tolerance::exact_mode() : Tolerance::of(Scalar::parse(tol));
    return io::report_to_json(verify(inst, lf.layout, t)).dump();
}

std::string qpack(const std::vector<std::string>& radii) {
    std::vector<Scalar> r;
    for (const auto& s : radii) r.push_back(Scalar::parse(s));
    auto pk = pack_quadtree(r);
    io::LayoutFile lf{pk.layout, Container{pk.container}, Mode::pack, "qpack", {}};
    return io::layout_to_json(lf).dump();
}

py::tuple treeopt(const std::string& tree, const std::vector<std::array<double, 2>>& paper, int starts, uint64_t seed) {
    DesignProblem p{io::tree_from_json(json::parse(tree)), paper};
    OptimizeConfig cfg;
    cfg.starts = starts;
    cfg.seed = seed;
    auto s = optimize_scale(p, cfg);
    return py::make_tuple(s.m, s.positions);
}

std::string reduction(const std::string& doc, const std::string& paper) {
    auto inst = io::three_partition_from_json(json::parse(doc));
    auto art = generate_reduction(inst, paper_from_string(paper));
    json o;
    o["instance"] = io::instance_to_json(art.instance);
    o["provenance"] = io::provenance_to_json(art);
    if (art.witness) {
        io::LayoutFile w{*art.witness, art.instance.container, Mode::place, "gen-reduction:witness", art.scaffold.pockets};
        o["layout"] = io::layout_to_json(w);
    }
    return o.dump();
}

}  // namespace

PYBIND11_MODULE(_circlepack, m) {
    m.doc() = "Exact circle placement and packing";
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    m.def("inscribed_pocket_radius", &inscribed, py::arg("r1"), py::arg("r2"), py::arg("r3"), py::arg("digits") = 15);
    m.def("solve_3partition", &solve);
    m.def("verify", &verify_json, py::arg("instance"), py::arg("layout"), py::arg("tolerance") = "");
    m.def("pack_quadtree", &qpack);
    m.def("optimize_scale", &treeopt, py::arg("tree"), py::arg("paper"), py::arg("starts") = 16, py::arg("seed") = 0);
    m.def("generate_reduction", &reduction, py::arg("three_partition"), py::arg("paper") = "triangle");
    m.def("gamma", [] { return Scalar(gamma_side()).str(); });
}
