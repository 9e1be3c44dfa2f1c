#include "circlepack/quadtree.hpp"

#include <algorithm>
#include <numeric>

namespace circlepack {

namespace {

mpq_class pow2(int n) {
    mpz_class d = 1;
    d <<= static_cast<unsigned long>(n);
    return mpq_class(mpz_class(1), d);
}

mpq_class pi_upper() { return pi_rational() + pi_error(); }

}  // namespace

const mpq_class& gamma_side() {
    static const mpq_class g = [] {
        mpq_class tol = pow2(80);
        HeronResult h = heron_sqrt(pi_rational(), tol, 2);
        mpq_class v = 4 * h.root / pi_rational();
        return round_up(v, 70);
    }();
    return g;
}

int side_class(const Scalar& r, const Scalar& side) {
    if (r.certain_sign() != Sign::positive) throw DomainError("radius must be positive");
    if (!r.exact() || !side.exact()) throw DomainError("side_class needs rational inputs");
    mpq_class d = 2 * r.value();
    if (d > side.value()) throw GeometricInfeasibility("circle diameter exceeds the container side");
    mpq_class cell = side.value();
    int n = 0;
    while (cell / 2 >= d) {
        cell /= 2;
        ++n;
    }
    return n;
}

Scalar radius_of_area(const Scalar& area, int bits) {
    if (area.certain_sign() != Sign::positive) throw DomainError("area must be positive");
    PrecisionScope ps(bits + 64);
    Scalar r2 = Scalar(area.lo()) / Scalar(pi_upper());
    return Scalar(lower_rational(sqrt(r2), bits));
}

QuadtreePacking pack_quadtree(const std::vector<Scalar>& radii, const std::optional<Scalar>& side_opt) {
    Scalar side = side_opt ? *side_opt : Scalar(gamma_side());
    if (!side.exact() || side.certain_sign() != Sign::positive) throw DomainError("container side must be a positive rational");
    mpq_class scale = side.value() / gamma_side();

    mpq_class sum_r2 = 0;
    for (const auto& r : radii) {
        if (!r.exact() || r.certain_sign() != Sign::positive) throw DomainError("radii must be positive rationals");
        sum_r2 += r.value() * r.value();
    }
    if (sum_r2 * pi_upper() > scale * scale) throw PreconditionError("total circle area exceeds 1 (relative to the container)");

    std::vector<size_t> order(radii.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return radii[a].value() > radii[b].value(); });

    QuadtreePacking out;
    out.container = Square{side};
    out.layout.circles.resize(radii.size());
    out.layout.roles.assign(radii.size(), "circle");
    out.layout.tolerance = Scalar(0);
    out.used_fraction = 0;

    // Z-order cursor; digit 0..3 = NW, NE, SW, SE
    std::vector<int> cursor;
    bool exhausted = false;
    for (size_t idx : order) {
        const Scalar& r = radii[idx];
        int n = side_class(r, side);
        if (exhausted) throw ContractViolation("quad-tree cells exhausted");
        if (static_cast<int>(cursor.size()) < n) cursor.resize(n, 0);
        for (int k = n; k < static_cast<int>(cursor.size()); ++k)
            if (cursor[k] != 0) throw ContractViolation("quad-tree cursor misaligned");
        cursor.resize(n);

        mpq_class x = 0, y = 0, half = side.value();
        for (int k = 0; k < n; ++k) {
            half /= 2;
            int d = cursor[k];
            if (d == 1 || d == 3) x += half;
            if (d == 0 || d == 1) y += half;
        }
        mpq_class cell = side.value() * pow2(n);
        DyadicAssignment a{idx, n, Scalar(cell), Point{Scalar(x), Scalar(y)}};
        out.cells.push_back(a);
        out.used_fraction += pow2(2 * n);
        mpq_class h = cell / 2;
        out.layout.circles[idx] = Circle{r, Point{Scalar(x + h), Scalar(y + h)}};

        int k = n - 1;
        while (k >= 0 && cursor[k] == 3) {
            cursor[k] = 0;
            --k;
        }
        if (k < 0)
            exhausted = true;
        else
            ++cursor[k];
    }
    if (out.used_fraction > 1) throw ContractViolation("quad-tree cell area exceeds the container");
    return out;
}

}  // namespace circlepack
