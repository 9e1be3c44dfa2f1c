#include "circlepack/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <unordered_map>

namespace circlepack {

namespace {

constexpr size_t kAllPairsLimit = 512;

struct Approx {
    double x, y, r;
};

std::vector<Approx> approximate(const std::vector<Circle>& circles) {
    std::vector<Approx> a;
    a.reserve(circles.size());
    for (const auto& c : circles) {
        if (!c.center) throw ContractViolation("layout circle has no center");
        a.push_back({c.center->x.to_double(), c.center->y.to_double(), c.radius.to_double()});
    }
    return a;
}

double scale_of(const Approx& a, const Approx& b) {
    return std::abs(a.x) + std::abs(a.y) + std::abs(b.x) + std::abs(b.y) + a.r + b.r;
}

double approx_clearance(const Approx& a, const Approx& b) {
    return std::hypot(a.x - b.x, a.y - b.y) - a.r - b.r;
}

bool clearly_apart(const Approx& a, const Approx& b, double tol) {
    double slack = 1e-13 * scale_of(a, b) + 1e-300;
    return approx_clearance(a, b) + tol > slack;
}

}  // namespace

size_t PlacementInstance::total() const {
    size_t n = 0;
    for (const auto& c : circles) n += static_cast<size_t>(c.count);
    return n;
}

PlacementInstance instance_of(const Container& box, Mode mode, const Layout& layout) {
    std::vector<mpq_class> radii;
    for (const auto& c : layout.circles) radii.push_back(c.radius.value());
    std::sort(radii.begin(), radii.end());
    PlacementInstance inst{box, mode, {}};
    for (const auto& r : radii) {
        if (!inst.circles.empty() && inst.circles.back().radius.value() == r)
            ++inst.circles.back().count;
        else
            inst.circles.push_back({Scalar(r), 1});
    }
    return inst;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::valid: return "valid";
        case Verdict::invalid: return "invalid";
        default: return "unknown";
    }
}

std::string to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::overlap: return "overlap";
        case ViolationKind::containment: return "containment";
        default: return "radius-mismatch";
    }
}

std::vector<std::pair<size_t, size_t>> candidate_pairs(const std::vector<Circle>& circles, double pad) {
    std::vector<std::pair<size_t, size_t>> pairs;
    size_t n = circles.size();
    if (n < 2) return pairs;
    if (n <= kAllPairsLimit) {
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
        return pairs;
    }
    auto a = approximate(circles);
    double minx = std::numeric_limits<double>::max(), miny = minx;
    double maxx = -minx, maxy = -minx, smin = minx;
    for (const auto& c : a) {
        minx = std::min(minx, c.x - c.r - pad);
        miny = std::min(miny, c.y - c.r - pad);
        maxx = std::max(maxx, c.x + c.r + pad);
        maxy = std::max(maxy, c.y + c.r + pad);
        smin = std::min(smin, c.r + pad);
    }
    double extent = std::max({maxx - minx, maxy - miny, 1e-300});
    // level L holds circles of half extent at most base 2^L in cells of side base 2^(L+1)
    double base = std::max(smin, std::ldexp(extent, -40));
    std::vector<int> level(n);
    for (size_t i = 0; i < n; ++i) {
        int L = 0;
        while (std::ldexp(base, L) < a[i].r + pad) ++L;
        level[i] = L;
    }
    auto key = [](int L, long x, long y) {
        return (static_cast<uint64_t>(L) << 58) ^ (static_cast<uint64_t>(x) << 29) ^ static_cast<uint64_t>(y);
    };
    struct Entry {
        int L;
        long x, y;
        uint32_t i;
    };
    std::vector<Entry> entries(n);
    std::vector<int> levels;
    for (size_t i = 0; i < n; ++i) {
        double cell = std::ldexp(base, level[i] + 1);
        entries[i] = {level[i], static_cast<long>(std::floor((a[i].x - minx) / cell)),
                      static_cast<long>(std::floor((a[i].y - miny) / cell)), static_cast<uint32_t>(i)};
        levels.push_back(level[i]);
    }
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    std::unordered_map<uint64_t, std::vector<uint32_t>> buckets;
    for (const auto& e : entries) {
        auto& b = buckets[key(e.L, e.x, e.y)];
        b.push_back(e.i);
    }
    for (size_t i = 0; i < n; ++i) {
        for (int L : levels) {
            if (L < level[i]) continue;
            double cell = std::ldexp(base, L + 1);
            long x0 = static_cast<long>(std::floor((a[i].x - cell - minx) / cell));
            long x1 = static_cast<long>(std::floor((a[i].x + cell - minx) / cell));
            long y0 = static_cast<long>(std::floor((a[i].y - cell - miny) / cell));
            long y1 = static_cast<long>(std::floor((a[i].y + cell - miny) / cell));
            for (long x = x0; x <= x1; ++x)
                for (long y = y0; y <= y1; ++y) {
                    auto it = buckets.find(key(L, x, y));
                    if (it == buckets.end()) continue;
                    for (uint32_t j : it->second) {
                        if (j == i) continue;
                        const auto& e = entries[j];
                        if (e.L != L || e.x != x || e.y != y) continue;
                        pairs.emplace_back(std::min<size_t>(i, j), std::max<size_t>(i, j));
                    }
                }
        }
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

VerificationReport verify(const PlacementInstance& inst, const Layout& layout, const Tolerance& tol) {
    VerificationReport rep;
    const auto& cs = layout.circles;
    for (const auto& c : cs)
        if (!c.center) throw ContractViolation("layout circle has no center");

    // radius multiset
    {
        std::vector<mpq_class> want;
        for (const auto& rc : inst.circles)
            for (long k = 0; k < rc.count; ++k) want.push_back(rc.radius.value());
        std::sort(want.begin(), want.end());
        std::vector<size_t> order(cs.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](size_t i, size_t j) { return cs[i].radius.value() < cs[j].radius.value(); });
        std::vector<size_t> unmatched;
        size_t w = 0;
        for (size_t idx : order) {
            const mpq_class& r = cs[idx].radius.value();
            while (w < want.size() && want[w] < r) ++w;
            if (w < want.size() && want[w] == r && cs[idx].radius.exact()) {
                ++w;
            } else {
                unmatched.push_back(idx);
            }
        }
        if (!unmatched.empty() || want.size() != cs.size()) {
            long diff = static_cast<long>(want.size()) - static_cast<long>(cs.size());
            rep.violations.push_back({ViolationKind::radius_mismatch, unmatched, Scalar(diff), false});
        }
    }

    bool exact_mode = tol.exact;
    double tol_d = exact_mode ? 0.0 : tol.value.to_double();
    auto approx = approximate(cs);

    for (auto [i, j] : candidate_pairs(cs)) {
        if (clearly_apart(approx[i], approx[j], tol_d)) continue;
        Scalar s = cs[i].radius + cs[j].radius;
        Scalar d2 = dist2(*cs[i].center, *cs[j].center);
        Scalar g;
        if (exact_mode) {
            g = d2 - s * s;
        } else {
            Scalar reach = s - tol.value;
            if (reach.certain_sign() == Sign::negative) continue;
            g = d2 - reach * reach;
        }
        Sign sg = classify(g, exact_mode);
        if (sg == Sign::negative) {
            if (!exact_mode) g = d2 - s * s;
            rep.violations.push_back({ViolationKind::overlap, {i, j}, g, false});
        } else if (sg == Sign::unknown) {
            rep.violations.push_back({ViolationKind::overlap, {i, j}, d2 - s * s, true});
        }
    }

    Scalar ctol = exact_mode ? Scalar(0) : tol.value;
    for (size_t i = 0; i < cs.size(); ++i) {
        for (const auto& g : containment_constraints(inst.container, cs[i], inst.mode, ctol)) {
            Sign sg = classify(g, exact_mode);
            if (sg == Sign::negative || sg == Sign::unknown) {
                rep.violations.push_back({ViolationKind::containment, {i}, containment_slack(inst.container, cs[i], inst.mode),
                                          sg == Sign::unknown});
                break;
            }
        }
    }

    bool any_certain = false, any_undecided = false;
    for (const auto& v : rep.violations) (v.undecided ? any_undecided : any_certain) = true;
    rep.verdict = any_certain ? Verdict::invalid : (any_undecided ? Verdict::unknown : Verdict::valid);
    rep.min_clearance = min_clearance(inst, layout);
    return rep;
}

Scalar min_clearance(const PlacementInstance& inst, const Layout& layout) {
    const auto& cs = layout.circles;
    if (cs.empty()) return Scalar(0);
    auto approx = approximate(cs);
    double best = std::numeric_limits<double>::infinity();

    // containment first, its minimum bounds the pair search radius
    std::vector<double> slack_d(cs.size());
    for (size_t i = 0; i < cs.size(); ++i) {
        slack_d[i] = containment_slack(inst.container, cs[i], inst.mode).to_double();
        best = std::min(best, slack_d[i]);
    }
    std::vector<std::pair<size_t, size_t>> pairs;
    std::vector<double> pair_d;
    auto scan = [&](const std::vector<std::pair<size_t, size_t>>& cand) {
        for (auto [i, j] : cand) {
            double c = approx_clearance(approx[i], approx[j]);
            pairs.emplace_back(i, j);
            pair_d.push_back(c);
            best = std::min(best, c);
        }
    };
    if (cs.size() <= kAllPairsLimit) {
        scan(candidate_pairs(cs));
    } else {
        double pad = std::isfinite(best) ? std::max(best, 0.0) : 0.0;
        scan(candidate_pairs(cs, pad + 1e-12));
    }
    double window = 1e-9 * (1.0 + std::abs(best));
    Scalar result;
    bool have = false;
    int budget = 256;
    auto consider = [&](const Scalar& v) {
        if (!have || v.value() < result.value()) {
            result = v;
            have = true;
        }
    };
    for (size_t k = 0; k < pairs.size() && budget > 0; ++k)
        if (pair_d[k] <= best + window) {
            auto [i, j] = pairs[k];
            consider(sqrt(dist2(*cs[i].center, *cs[j].center)) - cs[i].radius - cs[j].radius);
            --budget;
        }
    for (size_t i = 0; i < cs.size() && budget > 0; ++i)
        if (slack_d[i] <= best + window) {
            consider(containment_slack(inst.container, cs[i], inst.mode));
            --budget;
        }
    if (!have) return Scalar(0);
    if (!result.exact() && result.band_sign() == Sign::zero) return Scalar(0);
    return result;
}

}  // namespace circlepack
