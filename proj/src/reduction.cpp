#include "circlepack/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "internal.hpp"

namespace circlepack {

namespace detail {

void deflate_radii(std::vector<Circle>& circles) {
    std::vector<size_t> idx;
    for (size_t i = 0; i < circles.size(); ++i)
        if (!circles[i].radius.exact()) idx.push_back(i);
    std::sort(idx.begin(), idx.end(),
              [&](size_t a, size_t b) { return circles[a].radius.value() < circles[b].radius.value(); });
    const mpq_class close(mpz_class(1), mpz_class(1) << 100);
    const mpq_class shave(mpz_class(1), mpz_class(1) << 140);
    for (size_t s = 0; s < idx.size();) {
        size_t e = s + 1;
        while (e < idx.size() &&
               circles[idx[e]].radius.value() - circles[idx[e - 1]].radius.value() <= close)
            ++e;
        mpq_class low = circles[idx[s]].radius.lo();
        for (size_t t = s; t < e; ++t) low = std::min(low, circles[idx[t]].radius.lo());
        mpq_class r = round_down(low, 150) - shave;
        for (size_t t = s; t < e; ++t) circles[idx[t]].radius = Scalar(r);
        s = e;
    }
}

std::vector<Point> circle_meets(const Point& a, const Scalar& ra, const Point& b, const Scalar& rb) {
    Point ab = b - a;
    Scalar d2 = dot(ab, ab);
    Scalar t = (d2 + ra * ra - rb * rb) / (Scalar(2) * d2);
    Point base = a + t * ab;
    Scalar h2 = ra * ra / d2 - t * t;
    Point perp{-ab.y, ab.x};
    if (h2.certain_sign() != Sign::positive) return {base};
    Scalar h = sqrt(h2);
    return {base + h * perp, base - h * perp};
}

Point circle_meet(const Point& a, const Scalar& ra, const Point& b, const Scalar& rb, const Point& toward) {
    Point ab = b - a;
    Scalar d2 = dot(ab, ab);
    Scalar t = (d2 + ra * ra - rb * rb) / (Scalar(2) * d2);
    Point base = a + t * ab;
    Scalar h2 = ra * ra / d2 - t * t;
    Point perp{-ab.y, ab.x};
    if (cross(ab, toward - a).certain_sign() == Sign::negative) perp = Scalar(-1) * perp;
    if (h2.certain_sign() != Sign::positive) return base;
    return base + sqrt(h2) * perp;
}

}  // namespace detail

namespace {

int precision_for(long N) {
    int bits = static_cast<int>(std::ceil(6.0 * std::log2(static_cast<double>(std::max(N, 2L))))) + 96;
    return std::max(working_precision(), bits);
}

int grain_bits(const mpq_class& tol) {
    int bits = 2;
    mpq_class g(1, 4);
    while (g > tol / 4) {
        g /= 2;
        ++bits;
    }
    return bits;
}

const mpq_class& third() {
    static const mpq_class t(1, 3);
    return t;
}

struct Evaluated {
    double approx;
    size_t index;
};

// Linear clearance of p against the constraint circles.
double approx_slack(const Point& p, const std::vector<Circle>& cons) {
    double px = p.x.to_double(), py = p.y.to_double(), best = INFINITY;
    for (const auto& c : cons) {
        double d = std::hypot(px - c.center->x.to_double(), py - c.center->y.to_double());
        best = std::min(best, d - c.radius.to_double());
    }
    return best;
}

Scalar exact_slack(const Point& p, const std::vector<Circle>& cons) {
    Scalar best;
    bool have = false;
    for (const auto& c : cons) {
        Scalar s = sqrt(dist2(p, *c.center)) - c.radius;
        if (!have || s.value() < best.value()) {
            best = s;
            have = true;
        }
    }
    return best;
}

bool inside_triangle(const std::array<Point, 3>& tri, const Point& p) {
    double x = p.x.to_double(), y = p.y.to_double();
    double s[3];
    for (int i = 0; i < 3; ++i) {
        const Point& a = tri[i];
        const Point& b = tri[(i + 1) % 3];
        double ax = a.x.to_double(), ay = a.y.to_double(), bx = b.x.to_double(), by = b.y.to_double();
        s[i] = (bx - ax) * (y - ay) - (by - ay) * (x - ax);
    }
    return (s[0] >= 0 && s[1] >= 0 && s[2] >= 0) || (s[0] <= 0 && s[1] <= 0 && s[2] <= 0);
}

// Best candidate by exact clearance after a double precision preselection.
std::pair<Scalar, Point> best_candidate(const std::vector<Point>& cands, const std::vector<Circle>& cons,
                                        const std::array<Point, 3>& tri) {
    std::vector<Evaluated> ev;
    for (size_t i = 0; i < cands.size(); ++i)
        if (inside_triangle(tri, cands[i])) ev.push_back({approx_slack(cands[i], cons), i});
    if (ev.empty()) throw ContractViolation("no plug candidate inside the pocket");
    std::sort(ev.begin(), ev.end(), [](const Evaluated& a, const Evaluated& b) {
        if (a.approx != b.approx) return a.approx > b.approx;
        return a.index < b.index;
    });
    Scalar best;
    Point where;
    bool have = false;
    double cutoff = ev.front().approx - 1e-12;
    for (size_t k = 0; k < ev.size() && (k < 3 || ev[k].approx >= cutoff) && k < 12; ++k) {
        Scalar s = exact_slack(cands[ev[k].index], cons);
        if (!have || s.value() > best.value()) {
            best = s;
            where = cands[ev[k].index];
            have = true;
        }
    }
    return {best, where};
}

std::vector<Circle> plug_constraints(const SymmetricPocket& pocket, const std::array<Point, 3>& shim_centers,
                                     const std::array<Scalar, 3>& shim_radii, const Scalar& r_plug) {
    std::vector<Circle> cons;
    for (const auto& w : pocket.walls) cons.push_back({w.radius + r_plug, w.center});
    for (int j = 0; j < 3; ++j) cons.push_back({shim_radii[j] + r_plug, shim_centers[j]});
    return cons;
}

std::array<Point, 3> wall_centers(const SymmetricPocket& p) {
    return {*p.walls[0].center, *p.walls[1].center, *p.walls[2].center};
}

Point centroid(const std::array<Point, 3>& t) {
    Scalar third_s(third());
    return {third_s * (t[0].x + t[1].x + t[2].x), third_s * (t[0].y + t[1].y + t[2].y)};
}

const Scalar& pocket_tolerance() {
    static const Scalar t(mpq_class(mpz_class(1), mpz_class(1) << 96));
    return t;
}

}  // namespace

void validate(const ThreePartitionInstance& inst) {
    if (inst.n < 1) throw DomainError("n must be positive");
    if (inst.items.size() != static_cast<size_t>(3 * inst.n))
        throw DomainError("item count must equal 3n");
    mpq_class sum = 0;
    const mpq_class quarter(1, 4), half(1, 2);
    for (const auto& x : inst.items) {
        if (!(x > quarter && x < half)) throw DomainError("every item must lie strictly between 1/4 and 1/2");
        sum += x;
    }
    if (sum != inst.n) throw DomainError("items must sum to n");
}

std::optional<Partition> solve_3partition(const ThreePartitionInstance& inst) {
    validate(inst);
    size_t m = inst.items.size();
    if (m > 63) throw DomainError("instance too large for the exhaustive decider");
    std::unordered_set<uint64_t> dead;
    std::vector<std::array<size_t, 3>> chosen;
    uint64_t full = (m == 64) ? ~0ULL : ((1ULL << m) - 1);
    std::function<bool(uint64_t)> go = [&](uint64_t used) -> bool {
        if (used == full) return true;
        if (dead.count(used)) return false;
        size_t i = 0;
        while (used >> i & 1ULL) ++i;
        for (size_t j = i + 1; j < m; ++j) {
            if (used >> j & 1ULL) continue;
            for (size_t k = j + 1; k < m; ++k) {
                if (used >> k & 1ULL) continue;
                if (inst.items[i] + inst.items[j] + inst.items[k] != 1) continue;
                chosen.push_back({i, j, k});
                if (go(used | (1ULL << i) | (1ULL << j) | (1ULL << k))) return true;
                chosen.pop_back();
            }
        }
        dead.insert(used);
        return false;
    };
    if (!go(0)) return std::nullopt;
    return Partition{chosen};
}

std::optional<mpq_class> infeasibility_gap(const ThreePartitionInstance& inst) {
    validate(inst);
    std::optional<mpq_class> best;
    size_t m = inst.items.size();
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
            for (size_t k = j + 1; k < m; ++k) {
                mpq_class s = 1 - inst.items[i] - inst.items[j] - inst.items[k];
                if (sgn(s) > 0 && (!best || s < *best)) best = s;
            }
    return best;
}

long common_denominator(const ThreePartitionInstance& inst) {
    mpz_class d = 1;
    for (const auto& x : inst.items) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
    if (!d.fits_slong_p()) throw ParameterError("common denominator too large");
    return d.get_si();
}

long choose_N(const ThreePartitionInstance& inst) {
    long D = common_denominator(inst);
    long N = 8 * D;
    if (auto delta = infeasibility_gap(inst)) {
        mpq_class q = 2 / *delta;
        mpz_class c;
        mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
        N = std::max(N, c.get_si());
    }
    return N;
}

Scalar tight_shim_radius(const Scalar& rp) {
    Scalar a = Scalar(1) / sqrt3() - rp;
    return a * a / (Scalar(2) * (Scalar(1) + a));
}

SizingParams size_shims(const ThreePartitionInstance& inst, long N, const mpq_class& scale) {
    validate(inst);
    if (N < 2) throw ParameterError("N must be at least 2");
    SizingParams p;
    p.N = N;
    p.epsilon = mpq_class(1, N);
    p.delta = infeasibility_gap(inst);
    if (p.delta && p.epsilon >= *p.delta) throw ParameterError("1/N must be below the infeasibility gap");
    mpz_class N6;
    mpz_ui_pow_ui(N6.get_mpz_t(), static_cast<unsigned long>(N), 6);
    p.approx_tolerance = mpq_class(mpz_class(1), N6);
    p.scale = scale;
    int bits = grain_bits(p.approx_tolerance);
    PrecisionScope scope(precision_for(N));
    Scalar rp_ideal = Scalar(2) / sqrt3() - Scalar(1) - Scalar(p.epsilon);
    mpq_class rp = round_down(rp_ideal.lo(), bits);
    Scalar rs_ideal = tight_shim_radius(Scalar(rp));
    mpq_class rs = round_down(rs_ideal.lo(), bits);
    mpq_class N2 = mpq_class(N) * N;
    p.plug_radius = rp * scale;
    p.nominal_shim = rs * scale;
    for (const auto& x : inst.items) p.shim_radii.push_back((rs + (third() - x) / N2) * scale);
    return p;
}

Point wedge_shim(const SymmetricPocket& pocket, int corner, const Scalar& r) {
    if (corner < 0 || corner > 2) throw DomainError("corner index must be 0, 1 or 2");
    if (r.certain_sign() != Sign::positive) throw DomainError("shim radius must be positive");
    for (const auto& w : pocket.walls)
        if (!w.center) throw DomainError("pocket wall without a center");
    const Circle& a = pocket.walls[corner];
    const Circle& b = pocket.walls[(corner + 1) % 3];
    const Circle& o = pocket.walls[(corner + 2) % 3];
    Point p = detail::circle_meet(*a.center, a.radius + r, *b.center, b.radius + r, *o.center);
    Scalar reach = o.radius + r;
    if ((dist2(p, *o.center) - reach * reach).band_sign() == Sign::negative)
        throw GeometricInfeasibility("shim too large for the corner");
    return p;
}

MaximinResult plug_maximin(const SymmetricPocket& pocket, const std::array<Point, 3>& shim_centers,
                           const std::array<Scalar, 3>& shim_radii, const Scalar& r_plug) {
    auto cons = plug_constraints(pocket, shim_centers, shim_radii, r_plug);
    auto tri = wall_centers(pocket);
    std::vector<Point> cands{centroid(tri)};
    for (size_t i = 0; i < cons.size(); ++i)
        for (size_t j = i + 1; j < cons.size(); ++j) {
            Point d = *cons[j].center - *cons[i].center;
            Scalar len = sqrt(dot(d, d));
            Scalar t = (len + cons[i].radius - cons[j].radius) / (Scalar(2) * len);
            cands.push_back(*cons[i].center + t * d);
            for (size_t k = j + 1; k < cons.size(); ++k)
                for (const auto& c : apollonius(cons[i], cons[j], cons[k], true)) cands.push_back(*c.center);
        }
    auto [m, p] = best_candidate(cands, cons, tri);
    if (!m.exact() && m.band_sign() == Sign::zero) m = Scalar(0);
    return {m, p};
}

PlugFeasibilityCertificate plug_feasible(const SymmetricPocket& pocket, const std::array<Scalar, 3>& shim_radii,
                                         const Scalar& r_plug) {
    validate_pocket(pocket, pocket_tolerance());
    if (r_plug.certain_sign() != Sign::positive) throw DomainError("plug radius must be positive");
    PlugFeasibilityCertificate cert;
    cert.pocket = pocket;
    for (int j = 0; j < 3; ++j) {
        cert.shim_centers[j] = wedge_shim(pocket, j, shim_radii[j]);
        cert.constraint_radii[j] = r_plug + shim_radii[j];
    }
    auto cons = plug_constraints(pocket, cert.shim_centers, shim_radii, r_plug);
    auto tri = wall_centers(pocket);
    std::vector<Point> cands{centroid(tri)};
    for (size_t i = 0; i < cons.size(); ++i)
        for (size_t j = i + 1; j < cons.size(); ++j)
            for (const auto& p : detail::circle_meets(*cons[i].center, cons[i].radius, *cons[j].center, cons[j].radius))
                cands.push_back(p);
    auto [cm, cp] = best_candidate(cands, cons, tri);
    if (!cm.exact() && cm.band_sign() == Sign::zero) cm = Scalar(0);
    cert.candidate_margin = cm;
    cert.feasible = cm.band_sign() != Sign::negative;
    auto mm = plug_maximin(pocket, cert.shim_centers, shim_radii, r_plug);
    cert.margin = mm.margin;
    if (cert.feasible) cert.feasible_point = mm.margin.band_sign() != Sign::negative ? mm.point : cp;
    return cert;
}

size_t Scaffold::count(const std::string& role) const {
    return static_cast<size_t>(std::count(layout.roles.begin(), layout.roles.end(), role));
}

SymmetricPocket Scaffold::pocket(size_t i) const {
    SymmetricPocket p;
    for (int j = 0; j < 3; ++j) p.walls[j] = layout.circles.at(pockets.at(i)[j]);
    return p;
}

namespace {

Scaffold start_scaffold(Container box, int size) {
    Scaffold s;
    s.container = std::move(box);
    s.size = size;
    s.construction_tolerance = Scalar(mpq_class(mpz_class(1), mpz_class(1) << 100));
    return s;
}

void add_circle(Scaffold& s, const Circle& c, const std::string& role) {
    s.layout.circles.push_back(c);
    s.layout.roles.push_back(role);
}

}  // namespace

Scaffold triangle_scaffold(int k) {
    if (k < 1) throw DomainError("triangle scaffold needs k >= 1");
    Scaffold s = start_scaffold(EquilateralTriangle{Scalar(2 * k)}, k);
    std::map<std::pair<int, int>, size_t> at;
    for (int j = 0; j <= k; ++j)
        for (int i = 0; i + j <= k; ++i) {
            at[{i, j}] = s.layout.circles.size();
            add_circle(s, {Scalar(1), Point{Scalar(2 * i + j), Scalar(j) * sqrt3()}}, "rock");
        }
    for (int j = 0; j < k; ++j)
        for (int i = 0; i + j < k; ++i) {
            s.pockets.push_back({at[{i, j}], at[{i + 1, j}], at[{i, j + 1}]});
            if (i + j + 1 < k) s.pockets.push_back({at[{i + 1, j}], at[{i + 1, j + 1}], at[{i, j + 1}]});
        }
    s.layout.tolerance = s.construction_tolerance;
    s.ideal = s.layout.circles;
    return s;
}

Scaffold rectangle_scaffold(int k) {
    if (k < 2) throw DomainError("rectangle scaffold needs k >= 2");
    Scaffold s = start_scaffold(Rectangle{Scalar(2 * k - 1), sqrt3()}, k);
    for (int i = 0; i < k; ++i) add_circle(s, {Scalar(1), Point{Scalar(2 * i), Scalar(0)}}, "rock");
    for (int i = 0; i < k; ++i) add_circle(s, {Scalar(1), Point{Scalar(2 * i + 1), sqrt3()}}, "rock");
    auto bottom = [](int i) { return static_cast<size_t>(i); };
    auto top = [k](int i) { return static_cast<size_t>(k + i); };
    for (int i = 0; i + 1 < k; ++i) {
        s.pockets.push_back({bottom(i), bottom(i + 1), top(i)});
        s.pockets.push_back({top(i), bottom(i + 1), top(i + 1)});
    }
    s.mirror_faces.push_back({top(0), bottom(0), Point{Scalar(0), Scalar(0)}, Point{Scalar(0), Scalar(1)}});
    s.mirror_faces.push_back(
        {bottom(k - 1), top(k - 1), Point{Scalar(2 * k - 1), Scalar(0)}, Point{Scalar(0), Scalar(1)}});
    s.layout.tolerance = s.construction_tolerance;
    s.ideal = s.layout.circles;
    return s;
}

void fill_mirror_faces(Scaffold& s, const Scalar& min_radius) {
    std::vector<Circle> added;
    for (const auto& f : s.mirror_faces) {
        auto fill = fill_mirror_face(s.ideal[f.off_axis], s.ideal[f.on_axis], f.axis_point, f.axis_dir, min_radius);
        added.insert(added.end(), fill.begin(), fill.end());
    }
    s.ideal.insert(s.ideal.end(), added.begin(), added.end());
    detail::deflate_radii(added);
    for (const auto& c : added) add_circle(s, c, "filler");
    s.mirror_faces.clear();
}

std::string to_string(Paper p) {
    switch (p) {
        case Paper::triangle: return "triangle";
        case Paper::rectangle: return "rect";
        default: return "square";
    }
}

Paper paper_from_string(const std::string& s) {
    if (s == "triangle") return Paper::triangle;
    if (s == "rect" || s == "rectangle") return Paper::rectangle;
    if (s == "square") return Paper::square;
    throw ParameterError("unknown paper '" + s + "'");
}

ReductionArtifact generate_reduction(const ThreePartitionInstance& inst, Paper paper, const ReductionOptions& opt) {
    validate(inst);
    ReductionArtifact art;
    art.paper = paper;
    long N = opt.N ? *opt.N : choose_N(inst);
    PrecisionScope scope(precision_for(N));
    SizingParams unit = size_shims(inst, N);
    mpq_class min_shim = *std::min_element(unit.shim_radii.begin(), unit.shim_radii.end());
    size_t n = static_cast<size_t>(inst.n);

    switch (paper) {
        case Paper::triangle: {
            int k = 1;
            while (static_cast<size_t>(k * k) < n) ++k;
            art.scaffold = triangle_scaffold(k);
            break;
        }
        case Paper::rectangle: {
            int k = std::max(2, static_cast<int>((n + 2 + 1) / 2));
            art.scaffold = rectangle_scaffold(k);
            fill_mirror_faces(art.scaffold, Scalar(min_shim));
            break;
        }
        case Paper::square: {
            int d = 0;
            if (opt.depth) {
                d = *opt.depth;
                size_t pc = 4;
                for (int i = 0; i < d; ++i) pc *= 3;
                if (pc < n) throw ParameterError("square depth gives fewer pockets than triples");
            } else {
                size_t pc = 4;
                while (pc < n) {
                    pc *= 3;
                    ++d;
                }
            }
            Scalar leaf = square_leaf_radius(d);
            Scalar fill_min = opt.min_filler ? *opt.min_filler : Scalar(min_shim) * leaf;
            art.scaffold = square_scaffold(d, fill_min);
            break;
        }
    }
    Scaffold& sc = art.scaffold;
    art.pocket_count = sc.pockets.size();
    if (art.pocket_count < n) throw ContractViolation("scaffold has too few pockets");

    mpq_class R = sc.layout.circles[sc.pockets[0][0]].radius.value();
    for (const auto& p : sc.pockets)
        for (size_t w : p)
            if (sc.layout.circles[w].radius.value() != R) throw ContractViolation("pocket walls differ in radius");
    art.sizing = size_shims(inst, N, R);
    mpq_class min_abs = min_shim * R;
    if (opt.min_filler && paper != Paper::square) min_abs = std::min(min_abs, opt.min_filler->value());

    art.base = sc.layout;
    std::vector<Circle> blockers;
    for (size_t t = n; t < sc.pockets.size(); ++t) {
        const auto& w = sc.pockets[t];
        auto fill = inscribe_cascade(sc.ideal[w[0]], sc.ideal[w[1]], sc.ideal[w[2]], Scalar(min_abs));
        blockers.insert(blockers.end(), fill.begin(), fill.end());
    }
    detail::deflate_radii(blockers);
    for (const auto& b : blockers) {
        art.base.circles.push_back(b);
        art.base.roles.push_back("filler");
    }
    for (size_t t = 0; t < n; ++t) art.used_pockets.push_back(t);

    // instance radii: base, plugs, shims
    std::vector<Circle> all = art.base.circles;
    std::vector<std::string> roles = art.base.roles;
    for (size_t t = 0; t < n; ++t) {
        all.push_back({Scalar(art.sizing.plug_radius), std::nullopt});
        roles.push_back("plug");
    }
    for (size_t i = 0; i < inst.items.size(); ++i) {
        all.push_back({Scalar(art.sizing.shim_radii[i]), std::nullopt});
        roles.push_back("shim(" + std::to_string(i) + ")");
    }
    {
        Layout radii_only;
        radii_only.circles = all;
        for (auto& c : radii_only.circles) c.center = Point{};
        art.instance = instance_of(sc.container, Mode::place, radii_only);
    }
    // provenance classes: radius and role, shims grouped by radius
    {
        std::map<std::pair<mpq_class, std::string>, ProvenanceClass> classes;
        for (size_t i = 0; i < all.size(); ++i) {
            std::string role = roles[i];
            std::optional<size_t> item;
            if (role.rfind("shim(", 0) == 0) {
                item = std::stoul(role.substr(5));
                role = "shim";
            }
            auto& pc = classes[{all[i].radius.value(), role}];
            pc.radius = all[i].radius;
            pc.role = role;
            ++pc.count;
            if (item) pc.items.push_back(*item);
        }
        for (auto& [key, pc] : classes) art.provenance.push_back(pc);
        std::sort(art.provenance.begin(), art.provenance.end(), [](const ProvenanceClass& a, const ProvenanceClass& b) {
            int c = cmp(a.radius.value(), b.radius.value());
            if (c != 0) return c > 0;
            return a.role < b.role;
        });
    }

    art.witness_tolerance = Scalar(art.sizing.approx_tolerance);
    art.partition = solve_3partition(inst);
    if (art.partition) {
        Layout w = art.base;
        std::vector<Circle> plugs, shims;
        std::vector<std::string> shim_roles;
        for (size_t t = 0; t < n; ++t) {
            const auto& tri = art.partition->triples[t];
            SymmetricPocket pocket = sc.pocket(art.used_pockets[t]);
            std::array<Scalar, 3> radii;
            for (int j = 0; j < 3; ++j) radii[j] = Scalar(art.sizing.shim_radii[tri[j]]);
            auto cert = plug_feasible(pocket, radii, Scalar(art.sizing.plug_radius));
            if (!cert.feasible) throw ContractViolation("partition triple failed the plug test");
            plugs.push_back({Scalar(art.sizing.plug_radius), *cert.feasible_point});
            for (int j = 0; j < 3; ++j) {
                shims.push_back({radii[j], cert.shim_centers[j]});
                shim_roles.push_back("shim(" + std::to_string(tri[j]) + ")");
            }
        }
        for (const auto& p : plugs) {
            w.circles.push_back(p);
            w.roles.push_back("plug");
        }
        for (size_t i = 0; i < shims.size(); ++i) {
            w.circles.push_back(shims[i]);
            w.roles.push_back(shim_roles[i]);
        }
        w.tolerance = art.witness_tolerance;
        art.witness = std::move(w);
    }
    art.base.tolerance = sc.construction_tolerance;
    return art;
}

AssignmentResult check_assignments(const ReductionArtifact& art, const ThreePartitionInstance& inst) {
    validate(inst);
    size_t n = static_cast<size_t>(inst.n);
    size_t m = inst.items.size();
    if (art.used_pockets.size() != n) throw ContractViolation("artifact does not match the instance");
    std::map<std::pair<size_t, std::array<size_t, 3>>, bool> cache;
    std::vector<SymmetricPocket> pockets;
    for (size_t t = 0; t < n; ++t) pockets.push_back(art.scaffold.pocket(art.used_pockets[t]));
    Scalar rp(art.sizing.plug_radius);
    auto fits = [&](size_t t, std::array<size_t, 3> tri) {
        auto key = std::make_pair(t, tri);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        std::array<Scalar, 3> radii;
        for (int j = 0; j < 3; ++j) radii[j] = Scalar(art.sizing.shim_radii[tri[j]]);
        bool ok = plug_feasible(pockets[t], radii, rp).feasible;
        cache[key] = ok;
        return ok;
    };
    AssignmentResult res;
    std::vector<std::array<size_t, 3>> current;
    std::function<void(size_t, uint64_t, bool)> go = [&](size_t t, uint64_t used, bool ok_so_far) {
        if (t == n) {
            ++res.assignments;
            if (ok_so_far && !res.feasible) {
                res.feasible = true;
                res.triples = current;
            }
            return;
        }
        for (size_t i = 0; i < m; ++i) {
            if (used >> i & 1ULL) continue;
            for (size_t j = i + 1; j < m; ++j) {
                if (used >> j & 1ULL) continue;
                for (size_t k = j + 1; k < m; ++k) {
                    if (used >> k & 1ULL) continue;
                    std::array<size_t, 3> tri{i, j, k};
                    bool ok = ok_so_far && fits(t, tri);
                    current.push_back(tri);
                    go(t + 1, used | (1ULL << i) | (1ULL << j) | (1ULL << k), ok);
                    current.pop_back();
                }
            }
        }
    };
    go(0, 0, true);
    return res;
}

}  // namespace circlepack
