#include <array>
#include <vector>

#include "circlepack/reduction.hpp"
#include "internal.hpp"

namespace circlepack {

SquareGadget square_gadget(const Scalar& t) {
    if (t.certain_sign() != Sign::positive) throw DomainError("gadget ratio must be positive");
    Scalar one(1);
    Scalar yc = sqrt(square(one + t) - one);
    Scalar K = yc - t;
    Scalar lead = one + sqrt3();
    SquareGadget G;
    G.s = (sqrt(one + lead * K) - one) / lead;
    G.g = G.s * G.s;
    G.y1 = K - G.g;
    Scalar a = square(one - G.g) - Scalar(4) * G.g;
    Scalar b = Scalar(-4) * G.g * (one + G.g);
    Scalar c = Scalar(4) * G.g * G.g;
    Scalar disc = b * b - Scalar(4) * a * c;
    G.f = (-b - sqrt(disc)) / (Scalar(2) * a);
    G.yf = sqrt(G.f * G.f + Scalar(2) * G.f);
    return G;
}

Scalar square_leaf_radius(int depth) {
    Scalar R(mpq_class(1, 2));
    Scalar t0 = sqrt(Scalar(2)) - Scalar(1);
    R = R * square_gadget(t0).g;
    if (depth > 0) {
        Scalar g1 = square_gadget(Scalar(2) / sqrt3() - Scalar(1)).g;
        for (int i = 0; i < depth; ++i) R = R * g1;
    }
    return R;
}

namespace {

struct Aux {
    size_t a, b, c;
};

struct Builder {
    std::vector<Circle> circles;
    std::vector<std::string> roles;
    std::vector<std::pair<std::vector<size_t>, Scalar>> faces;

    size_t add(const Circle& c, const std::string& role) {
        circles.push_back(c);
        roles.push_back(role);
        return circles.size() - 1;
    }
};

// Places the gadget into the aux pocket; returns the new symmetric pocket.
std::array<size_t, 3> place_gadget(Builder& B, const Aux& aux, const Scalar& R, const SquareGadget& G,
                                   const std::optional<Scalar>& min_filler) {
    const Point A = *B.circles[aux.a].center;
    const Point Bc = *B.circles[aux.b].center;
    const Point C = *B.circles[aux.c].center;
    Scalar half(mpq_class(1, 2));
    Point O = half * (A + Bc);
    Point u = (Scalar(1) / (Scalar(2) * R)) * (Bc - A);
    Point v{-u.y, u.x};
    if (dot(C - O, v).certain_sign() == Sign::negative) v = Scalar(-1) * v;
    auto at = [&](const Scalar& x, const Scalar& y) { return O + (R * x) * u + (R * y) * v; };
    Scalar g = R * G.g, f = R * G.f;
    size_t p1 = B.add({g, at(Scalar(0), G.y1)}, "plug");
    size_t p2 = B.add({g, at(-G.g, Scalar(2) * G.s)}, "plug");
    size_t p3 = B.add({g, at(G.g, Scalar(2) * G.s)}, "plug");
    size_t fx = B.add({f, at(Scalar(0), G.yf)}, "fixation");
    Scalar minr = min_filler ? *min_filler : g;
    B.faces.push_back({{aux.a, fx, p2}, minr});
    B.faces.push_back({{aux.b, fx, p3}, minr});
    B.faces.push_back({{aux.a, aux.b, fx}, minr});
    B.faces.push_back({{fx, p2, p3}, minr});
    B.faces.push_back({{aux.a, p2, p1, aux.c}, minr});
    B.faces.push_back({{aux.b, p3, p1, aux.c}, minr});
    return {p1, p2, p3};
}

}  // namespace

Scaffold square_scaffold(int depth, const std::optional<Scalar>& min_filler) {
    if (depth < 0) throw DomainError("depth must be nonnegative");
    if (min_filler && min_filler->certain_sign() != Sign::positive) throw DomainError("min_filler must be positive");
    Scaffold s;
    s.container = Square{Scalar(1)};
    s.size = depth;
    s.construction_tolerance = Scalar(mpq_class(mpz_class(1), mpz_class(1) << 100));

    Builder B;
    Scalar half(mpq_class(1, 2));
    std::array<size_t, 4> rock;
    const int corners[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    for (int i = 0; i < 4; ++i)
        rock[i] = B.add({half, Point{Scalar(corners[i][0]), Scalar(corners[i][1])}}, "rock");
    Scalar rho = half * (sqrt(Scalar(2)) - Scalar(1));
    size_t center = B.add({rho, Point{half, half}}, "center");

    SquareGadget G0 = square_gadget(rho / half);
    Scalar inner_ratio = Scalar(2) / sqrt3() - Scalar(1);
    SquareGadget G1 = depth > 0 ? square_gadget(inner_ratio) : G0;

    std::vector<Aux> aux;
    for (int i = 0; i < 4; ++i) aux.push_back({rock[i], rock[(i + 1) % 4], center});
    Scalar R = half;
    std::vector<std::array<size_t, 3>> pockets;
    for (int level = 0; level <= depth; ++level) {
        const SquareGadget& G = level == 0 ? G0 : G1;
        pockets.clear();
        for (const auto& a : aux) pockets.push_back(place_gadget(B, a, R, G, min_filler));
        R = R * G.g;
        if (level == depth) break;
        aux.clear();
        for (const auto& p : pockets) {
            Scalar rc = R * inner_ratio;
            Point cc = trilaterate(B.circles[p[0]], B.circles[p[1]], B.circles[p[2]], rc);
            size_t c = B.add({rc, cc}, "center");
            aux.push_back({p[1], p[0], c});
            aux.push_back({p[0], p[2], c});
            aux.push_back({p[2], p[1], c});
        }
    }

    std::vector<Circle> fillers;
    for (const auto& [ring, minr] : B.faces) {
        std::vector<Circle> rc;
        for (size_t i : ring) rc.push_back(B.circles[i]);
        auto f = fill_face(rc, minr);
        fillers.insert(fillers.end(), f.begin(), f.end());
    }
    for (const auto& f : fillers) B.add(f, "filler");
    s.ideal = B.circles;
    detail::deflate_radii(B.circles);

    s.layout.circles = std::move(B.circles);
    s.layout.roles = std::move(B.roles);
    s.layout.tolerance = s.construction_tolerance;
    s.pockets = pockets;
    return s;
}

}  // namespace circlepack
