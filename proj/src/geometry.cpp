#include "circlepack/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace circlepack {

namespace {

const Point& center_of(const Circle& c) {
    if (!c.center) throw ContractViolation("circle has no center");
    return *c.center;
}

void require_positive(const Scalar& r, const char* what) {
    if (r.certain_sign() != Sign::positive) throw DomainError(std::string(what) + " must be positive");
}

int bits_for(const Scalar& tol) {
    int bits = 0;
    mpq_class t = tol.value();
    while (t < 1 && bits < 100000) {
        t *= 2;
        ++bits;
    }
    return bits;
}

// sqrt(3) u - w with an exactly decided sign when u and w are exact.
Scalar sqrt3_form(const Scalar& u, const Scalar& w) {
    if (!u.exact() || !w.exact()) return sqrt3() * u - w;
    int su = sgn(u.value()), sw = sgn(w.value());
    int exact_sign;
    if (su >= 0 && sw <= 0) {
        exact_sign = (su == 0 && sw == 0) ? 0 : 1;
    } else if (su <= 0 && sw >= 0) {
        exact_sign = -1;
    } else {
        mpq_class lhs = 3 * u.value() * u.value(), rhs = w.value() * w.value();
        int c = cmp(lhs, rhs);
        exact_sign = su > 0 ? (c > 0 ? 1 : (c < 0 ? -1 : 0)) : (c > 0 ? -1 : (c < 0 ? 1 : 0));
    }
    if (exact_sign == 0) return Scalar(0);
    int bits = working_precision();
    for (int attempt = 0; attempt < 8; ++attempt, bits *= 2) {
        PrecisionScope scope(bits);
        Scalar v = sqrt(Scalar(3)) * u - w;
        Sign s = v.certain_sign();
        if (s == (exact_sign > 0 ? Sign::positive : Sign::negative)) return v;
    }
    throw ContractViolation("sqrt3 comparison did not resolve");
}

bool inside_polygon(const std::vector<Point>& poly, const Point& p) {
    // winding number in double; callers only use it to select candidates
    double px = p.x.to_double(), py = p.y.to_double();
    int wn = 0;
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        double x0 = poly[i].x.to_double(), y0 = poly[i].y.to_double();
        double x1 = poly[(i + 1) % n].x.to_double(), y1 = poly[(i + 1) % n].y.to_double();
        double is_left = (x1 - x0) * (py - y0) - (px - x0) * (y1 - y0);
        if (y0 <= py) {
            if (y1 > py && is_left > 0) ++wn;
        } else if (y1 <= py && is_left < 0) {
            --wn;
        }
    }
    return wn != 0;
}

bool clear_of(const Circle& cand, const std::vector<Circle>& others) {
    for (const auto& o : others)
        if (classify(pair_margin(cand, o), true) == Sign::negative) return false;
    return true;
}

void sort_fillers(std::vector<Circle>& v) {
    std::sort(v.begin(), v.end(), [](const Circle& a, const Circle& b) {
        int c = cmp(a.radius.value(), b.radius.value());
        if (c != 0) return c > 0;
        int cx = cmp(a.center->x.value(), b.center->x.value());
        if (cx != 0) return cx < 0;
        return a.center->y.value() < b.center->y.value();
    });
}

bool at_least(const Scalar& r, const Scalar& min_radius) {
    return (r - min_radius).certain_sign() != Sign::negative;
}

}  // namespace

std::string to_string(Relation r) {
    switch (r) {
        case Relation::disjoint: return "disjoint";
        case Relation::tangent: return "tangent";
        default: return "overlapping";
    }
}

std::string to_string(Mode m) { return m == Mode::pack ? "pack" : "place"; }

const Scalar& sqrt3() {
    thread_local int cached_bits = -1;
    thread_local Scalar cached;
    if (cached_bits != working_precision()) {
        cached = sqrt(Scalar(3));
        cached_bits = working_precision();
    }
    return cached;
}

Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
Point operator*(const Scalar& s, const Point& p) { return {s * p.x, s * p.y}; }
Scalar dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
Scalar cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
Scalar dist2(const Point& a, const Point& b) {
    Point d = a - b;
    return dot(d, d);
}

Sign classify(const Scalar& v, bool exact_mode) { return exact_mode ? v.band_sign() : v.certain_sign(); }

Scalar inscribed_pocket_radius(const Scalar& r1, const Scalar& r2, const Scalar& r3, const std::optional<Scalar>& tol) {
    require_positive(r1, "pocket radius");
    require_positive(r2, "pocket radius");
    require_positive(r3, "pocket radius");
    int bits = working_precision();
    if (tol) {
        if (tol->certain_sign() != Sign::positive) throw DomainError("tolerance must be positive");
        bits = std::max(bits, bits_for(*tol) + 64);
    }
    Scalar r;
    {
        PrecisionScope scope(bits);
        Scalar k1 = Scalar(1) / r1, k2 = Scalar(1) / r2, k3 = Scalar(1) / r3;
        Scalar s = k1 + k2 + k3 + Scalar(2) * sqrt(k1 * k2 + k1 * k3 + k2 * k3);
        r = Scalar(1) / s;
    }
    if (tol && r.error() > tol->value()) throw ContractViolation("inscribed radius missed its tolerance");
    return r;
}

Scalar pair_margin(const Circle& a, const Circle& b) {
    Scalar s = a.radius + b.radius;
    return dist2(center_of(a), center_of(b)) - s * s;
}

Relation circle_relation(const Circle& a, const Circle& b) {
    switch (pair_margin(a, b).band_sign()) {
        case Sign::negative: return Relation::overlapping;
        case Sign::zero: return Relation::tangent;
        default: return Relation::disjoint;
    }
}

std::vector<Scalar> containment_constraints(const Container& box, const Circle& c, Mode mode, const Scalar& tol) {
    const Point& p = center_of(c);
    Scalar r = mode == Mode::pack ? c.radius : Scalar(0);
    std::vector<Scalar> out;
    auto rect = [&](const Scalar& w, const Scalar& h) {
        out.push_back(p.x - r + tol);
        out.push_back(w - p.x - r + tol);
        out.push_back(p.y - r + tol);
        out.push_back(h - p.y - r + tol);
    };
    std::visit(
        [&](const auto& b) {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Square>) {
                rect(b.side, b.side);
            } else if constexpr (std::is_same_v<T, Rectangle>) {
                rect(b.width, b.height);
            } else if constexpr (std::is_same_v<T, EquilateralTriangle>) {
                Scalar lift = Scalar(2) * (r - tol);
                out.push_back(p.y - r + tol);
                out.push_back(sqrt3_form(p.x, p.y + lift));
                out.push_back(sqrt3_form(b.side - p.x, p.y + lift));
            } else {
                const auto& w = b.walls;
                for (const auto& wall : w) {
                    Scalar reach = wall.radius + r - tol;
                    out.push_back(dist2(p, center_of(wall)) - reach * reach);
                }
                const Point& a0 = center_of(w[0]);
                const Point& a1 = center_of(w[1]);
                const Point& a2 = center_of(w[2]);
                Scalar orient = cross(a1 - a0, a2 - a0);
                Scalar sign = orient.certain_sign() == Sign::negative ? Scalar(-1) : Scalar(1);
                out.push_back(sign * cross(a1 - a0, p - a0));
                out.push_back(sign * cross(a2 - a1, p - a1));
                out.push_back(sign * cross(a0 - a2, p - a2));
            }
        },
        box);
    return out;
}

Scalar containment_slack(const Container& box, const Circle& c, Mode mode) {
    const Point& p = center_of(c);
    Scalar r = mode == Mode::pack ? c.radius : Scalar(0);
    std::vector<Scalar> s;
    std::visit(
        [&](const auto& b) {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Square> || std::is_same_v<T, Rectangle>) {
                Scalar w, h;
                if constexpr (std::is_same_v<T, Square>) {
                    w = b.side;
                    h = b.side;
                } else {
                    w = b.width;
                    h = b.height;
                }
                s = {p.x - r, w - p.x - r, p.y - r, h - p.y - r};
            } else if constexpr (std::is_same_v<T, EquilateralTriangle>) {
                Scalar half(mpq_class(1, 2));
                s = {p.y - r, half * sqrt3_form(p.x, p.y) - r, half * sqrt3_form(b.side - p.x, p.y) - r};
            } else {
                for (const auto& wall : b.walls) s.push_back(sqrt(dist2(p, center_of(wall))) - wall.radius - r);
            }
        },
        box);
    Scalar best = s.front();
    for (const auto& v : s)
        if (v.value() < best.value()) best = v;
    return best;
}

bool contains(const Container& box, const Circle& c, Mode mode) {
    for (const auto& g : containment_constraints(box, c, mode))
        if (g.band_sign() == Sign::negative) return false;
    return true;
}

void validate_pocket(const SymmetricPocket& p, const Scalar& tol) {
    for (const auto& w : p.walls) {
        if (!w.center) throw DomainError("pocket wall without a center");
        require_positive(w.radius, "pocket wall radius");
    }
    for (int i = 0; i < 3; ++i) {
        const Circle& a = p.walls[i];
        const Circle& b = p.walls[(i + 1) % 3];
        Scalar m = pair_margin(a, b);
        if (sgn(tol.value()) == 0) {
            if (m.band_sign() != Sign::zero) throw DomainError("pocket walls are not pairwise tangent");
        } else {
            Scalar s = a.radius + b.radius;
            mpq_class slack = 2 * m.error() + 2 * tol.value() * s.value() + tol.value() * tol.value();
            if (abs(m.value()) > slack) throw DomainError("pocket walls are not pairwise tangent");
        }
    }
    Scalar orient = cross(*p.walls[1].center - *p.walls[0].center, *p.walls[2].center - *p.walls[0].center);
    if (orient.band_sign() == Sign::zero) throw DomainError("degenerate pocket");
}

SymmetricPocket unit_pocket() {
    SymmetricPocket p;
    p.walls[0] = {Scalar(1), Point{Scalar(0), Scalar(0)}};
    p.walls[1] = {Scalar(1), Point{Scalar(2), Scalar(0)}};
    p.walls[2] = {Scalar(1), Point{Scalar(1), sqrt3()}};
    return p;
}

Scalar signed_distance_sum(const std::array<Line, 3>& lines, const Point& p) {
    std::array<Point, 3> n;
    std::array<Scalar, 3> norm2;
    for (int i = 0; i < 3; ++i) {
        n[i] = {lines[i].a, lines[i].b};
        norm2[i] = dot(n[i], n[i]);
        if (norm2[i].band_sign() == Sign::zero) throw DomainError("line with zero normal");
    }
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3;
        if (cross(n[i], n[j]).band_sign() == Sign::zero) throw DomainError("parallel lines");
        Scalar d = dot(n[i], n[j]);
        Scalar test = Scalar(4) * d * d - norm2[i] * norm2[j];
        if (test.band_sign() != Sign::zero) throw DomainError("lines do not form an equilateral triangle");
    }
    auto value = [&](int i, const Point& q) { return lines[i].a * q.x + lines[i].b * q.y + lines[i].c; };
    auto meet = [&](int i, int j) {
        Scalar det = lines[i].a * lines[j].b - lines[j].a * lines[i].b;
        Scalar x = (lines[i].b * lines[j].c - lines[j].b * lines[i].c) / det;
        Scalar y = (lines[j].a * lines[i].c - lines[i].a * lines[j].c) / det;
        return Point{x, y};
    };
    Scalar sum(0);
    for (int i = 0; i < 3; ++i) {
        Point opposite = meet((i + 1) % 3, (i + 2) % 3);
        Scalar side = value(i, opposite);
        Sign s = side.band_sign();
        if (s == Sign::zero) throw DomainError("lines are concurrent");
        Scalar y = value(i, p) / sqrt(norm2[i]);
        sum += s == Sign::positive ? y : -y;
    }
    return sum;
}

Point trilaterate(const Circle& c1, const Circle& c2, const Circle& c3, const Scalar& r) {
    const Point &p1 = center_of(c1), &p2 = center_of(c2), &p3 = center_of(c3);
    auto rhs = [&](const Point& pi, const Circle& ci) {
        Scalar s1 = c1.radius + r, si = ci.radius + r;
        return dot(pi, pi) - dot(p1, p1) - si * si + s1 * s1;
    };
    Scalar a11 = Scalar(2) * (p2.x - p1.x), a12 = Scalar(2) * (p2.y - p1.y);
    Scalar a21 = Scalar(2) * (p3.x - p1.x), a22 = Scalar(2) * (p3.y - p1.y);
    Scalar b1 = rhs(p2, c2), b2 = rhs(p3, c3);
    Scalar det = a11 * a22 - a12 * a21;
    if (det.certain_sign() == Sign::unknown || det.certain_sign() == Sign::zero)
        throw DomainError("collinear centers in trilateration");
    return {(b1 * a22 - a12 * b2) / det, (a11 * b2 - a21 * b1) / det};
}

std::vector<Circle> apollonius(const Circle& c1, const Circle& c2, const Circle& c3, bool allow_negative) {
    const Point &p1 = center_of(c1), &p2 = center_of(c2), &p3 = center_of(c3);
    Scalar a11 = Scalar(2) * (p2.x - p1.x), a12 = Scalar(2) * (p2.y - p1.y);
    Scalar a21 = Scalar(2) * (p3.x - p1.x), a22 = Scalar(2) * (p3.y - p1.y);
    Scalar det = a11 * a22 - a12 * a21;
    Sign ds = det.certain_sign();
    if (ds == Sign::unknown || ds == Sign::zero) return {};
    auto k = [&](const Point& pi, const Circle& ci) {
        return dot(pi, pi) - dot(p1, p1) - ci.radius * ci.radius + c1.radius * c1.radius;
    };
    Scalar b1 = k(p2, c2), b2 = k(p3, c3);
    Scalar e1 = Scalar(-2) * (c2.radius - c1.radius), e2 = Scalar(-2) * (c3.radius - c1.radius);
    Point base{(b1 * a22 - a12 * b2) / det, (a11 * b2 - a21 * b1) / det};
    Point slope{(e1 * a22 - a12 * e2) / det, (a11 * e2 - a21 * e1) / det};
    Point q = base - p1;
    Scalar qa = dot(slope, slope) - Scalar(1);
    Scalar qb = dot(q, slope) - c1.radius;  // half of the linear coefficient
    Scalar qc = dot(q, q) - c1.radius * c1.radius;
    std::vector<Scalar> roots;
    if (qa.band_sign() == Sign::zero) {
        if (qb.band_sign() == Sign::zero) return {};
        roots.push_back(-qc / (Scalar(2) * qb));
    } else {
        Scalar disc = qb * qb - qa * qc;
        Sign s = disc.certain_sign();
        if (s == Sign::negative) {
            if (disc.band_sign() == Sign::negative) return {};
        }
        Scalar root = (s == Sign::positive) ? sqrt(disc) : Scalar(0);
        roots.push_back((-qb + root) / qa);
        if (s == Sign::positive) roots.push_back((-qb - root) / qa);
    }
    std::vector<Circle> out;
    for (const auto& r : roots) {
        if (!allow_negative && r.certain_sign() != Sign::positive) continue;
        out.push_back({r, base + r * slope});
    }
    return out;
}

std::vector<Circle> inscribe_cascade(const Circle& a, const Circle& b, const Circle& c, const Scalar& min_radius) {
    std::vector<Circle> walls{a, b, c};
    std::vector<std::array<size_t, 3>> work{{0, 1, 2}};
    std::vector<Circle> out;
    while (!work.empty()) {
        auto [i, j, k] = work.back();
        work.pop_back();
        Scalar r = inscribed_pocket_radius(walls[i].radius, walls[j].radius, walls[k].radius);
        if (!at_least(r, min_radius)) continue;
        Circle f{r, trilaterate(walls[i], walls[j], walls[k], r)};
        size_t m = walls.size();
        walls.push_back(f);
        out.push_back(f);
        work.push_back({i, j, m});
        work.push_back({j, k, m});
        work.push_back({i, k, m});
    }
    sort_fillers(out);
    return out;
}

std::vector<Circle> fill_pocket(const Scalar& r1, const Scalar& r2, const Scalar& r3, const Scalar& min_radius) {
    require_positive(r1, "pocket radius");
    require_positive(r2, "pocket radius");
    require_positive(r3, "pocket radius");
    require_positive(min_radius, "min_radius");
    Scalar d = r1 + r2;
    Scalar s13 = r1 + r3, s23 = r2 + r3;
    Scalar x = (d * d + s13 * s13 - s23 * s23) / (Scalar(2) * d);
    Scalar y = sqrt(s13 * s13 - x * x);
    Circle a{r1, Point{Scalar(0), Scalar(0)}};
    Circle b{r2, Point{d, Scalar(0)}};
    Circle c{r3, Point{x, y}};
    return inscribe_cascade(a, b, c, min_radius);
}

std::vector<Circle> fill_face(const std::vector<Circle>& ring, const Scalar& min_radius) {
    if (ring.size() < 3) throw DomainError("face needs at least three circles");
    std::vector<Circle> out;
    std::vector<std::vector<Circle>> work{ring};
    while (!work.empty()) {
        std::vector<Circle> face = std::move(work.back());
        work.pop_back();
        if (face.size() == 3) {
            bool tangent = true;
            for (int i = 0; i < 3 && tangent; ++i) tangent = circle_relation(face[i], face[(i + 1) % 3]) == Relation::tangent;
            if (tangent) {
                auto f = inscribe_cascade(face[0], face[1], face[2], min_radius);
                out.insert(out.end(), f.begin(), f.end());
                continue;
            }
        }
        std::vector<Point> poly;
        for (const auto& c : face) poly.push_back(center_of(c));
        std::optional<Circle> best;
        std::array<size_t, 3> touch{};
        size_t n = face.size();
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                for (size_t k = j + 1; k < n; ++k)
                    for (const auto& cand : apollonius(face[i], face[j], face[k])) {
                        if (!inside_polygon(poly, *cand.center)) continue;
                        if (!clear_of(cand, face)) continue;
                        if (!best || cand.radius.value() > best->radius.value()) {
                            best = cand;
                            touch = {i, j, k};
                        }
                    }
        if (!best || !at_least(best->radius, min_radius)) continue;
        out.push_back(*best);
        auto [i, j, k] = touch;
        auto arc = [&](size_t from, size_t to) {
            std::vector<Circle> sub;
            for (size_t t = from;; t = (t + 1) % n) {
                sub.push_back(face[t]);
                if (t == to) break;
            }
            sub.push_back(*best);
            return sub;
        };
        work.push_back(arc(i, j));
        work.push_back(arc(j, k));
        work.push_back(arc(k, i));
    }
    sort_fillers(out);
    return out;
}

std::vector<Circle> fill_mirror_face(const Circle& x_off, const Circle& y_on, const Point& axis_point,
                                     const Point& axis_dir, const Scalar& min_radius) {
    auto reflect = [&](const Point& p) {
        Point d = p - axis_point;
        Scalar t = dot(d, axis_dir) / dot(axis_dir, axis_dir);
        Point foot = axis_point + t * axis_dir;
        return Scalar(2) * foot - p;
    };
    std::vector<Circle> out;
    Circle inner = y_on;
    Circle mirrored{x_off.radius, reflect(center_of(x_off))};
    std::vector<Circle> chain{x_off, y_on};
    auto along = [&](const Point& p) { return dot(p - axis_point, axis_dir).to_double(); };
    double lo = along(center_of(y_on)), hi = along(center_of(x_off));
    if (lo > hi) std::swap(lo, hi);
    for (;;) {
        std::optional<Circle> best;
        for (const auto& cand : apollonius(x_off, mirrored, inner)) {
            double t = along(*cand.center);
            if (t < lo || t > hi) continue;
            if (!clear_of(cand, chain)) continue;
            if (!best || cand.radius.value() < best->radius.value()) best = cand;
        }
        if (!best || !at_least(best->radius, min_radius)) break;
        // snap the center onto the axis
        Point d = *best->center - axis_point;
        Scalar t = dot(d, axis_dir) / dot(axis_dir, axis_dir);
        best->center = axis_point + t * axis_dir;
        out.push_back(*best);
        auto f = inscribe_cascade(x_off, inner, *best, min_radius);
        out.insert(out.end(), f.begin(), f.end());
        chain.push_back(*best);
        inner = *best;
    }
    sort_fillers(out);
    return out;
}

}  // namespace circlepack
