#include "circlepack/treeopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "circlepack/errors.hpp"

namespace circlepack {

namespace {

struct Indexed {
    std::map<std::string, size_t> id;
    std::vector<std::vector<std::pair<size_t, double>>> adj;
    std::vector<size_t> leaves;
};

Indexed index_tree(const WeightedTree& t) {
    Indexed ix;
    auto add = [&](const std::string& n) {
        auto it = ix.id.find(n);
        if (it != ix.id.end()) return it->second;
        size_t k = ix.id.size();
        ix.id.emplace(n, k);
        return k;
    };
    for (const auto& n : t.nodes) {
        if (ix.id.count(n)) throw DomainError("duplicate tree node " + n);
        add(n);
    }
    bool closed = !t.nodes.empty();
    for (const auto& e : t.edges) {
        if (closed && (!ix.id.count(e.a) || !ix.id.count(e.b))) throw DomainError("edge references unknown node");
        add(e.a);
        add(e.b);
    }
    ix.adj.resize(ix.id.size());
    for (const auto& e : t.edges) {
        if (!(e.w > 0) || !std::isfinite(e.w)) throw DomainError("edge weights must be positive");
        size_t a = ix.id[e.a], b = ix.id[e.b];
        if (a == b) throw DomainError("self loop in tree");
        ix.adj[a].emplace_back(b, e.w);
        ix.adj[b].emplace_back(a, e.w);
    }
    if (ix.id.empty()) throw DomainError("empty tree");
    if (t.edges.size() + 1 != ix.id.size()) throw DomainError("tree must have exactly nodes - 1 edges");
    std::vector<char> seen(ix.id.size(), 0);
    std::vector<size_t> stack{0};
    seen[0] = 1;
    size_t count = 1;
    while (!stack.empty()) {
        size_t u = stack.back();
        stack.pop_back();
        for (auto [v, w] : ix.adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
    }
    if (count != ix.id.size()) throw DomainError("tree is disconnected or cyclic");
    std::set<std::string> uniq;
    for (const auto& l : t.leaves) {
        auto it = ix.id.find(l);
        if (it == ix.id.end()) throw DomainError("unknown leaf " + l);
        if (!uniq.insert(l).second) throw DomainError("duplicate leaf " + l);
        ix.leaves.push_back(it->second);
    }
    return ix;
}

double cross2(const Vec2& o, const Vec2& a, const Vec2& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double dist(const Vec2& a, const Vec2& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

struct Box {
    double x0, x1, y0, y1;
};

double diameter(const std::vector<Vec2>& poly) {
    double d = 0;
    for (const auto& a : poly)
        for (const auto& b : poly) d = std::max(d, dist(a, b));
    return d;
}

double min_ratio(const std::vector<Vec2>& v, const std::vector<std::vector<double>>& l) {
    double m = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = i + 1; j < v.size(); ++j) m = std::min(m, dist(v[i], v[j]) / l[i][j]);
    return m;
}

struct Soft {
    double value;
    std::vector<Vec2> grad;
};

Soft softmin(const std::vector<Vec2>& v, const std::vector<std::vector<double>>& l, double beta, bool want_grad) {
    size_t L = v.size();
    double m0 = min_ratio(v, l);
    double z = 0;
    Soft s{0, {}};
    if (want_grad) s.grad.assign(L, Vec2{0, 0});
    for (size_t i = 0; i < L; ++i)
        for (size_t j = i + 1; j < L; ++j) {
            double d = dist(v[i], v[j]);
            double e = std::exp(-beta * (d / l[i][j] - m0));
            z += e;
            if (want_grad) {
                double ux, uy;
                if (d > 0) {
                    ux = (v[i][0] - v[j][0]) / d;
                    uy = (v[i][1] - v[j][1]) / d;
                } else {
                    ux = 1;
                    uy = 0;
                }
                double c = e / l[i][j];
                s.grad[i][0] += c * ux;
                s.grad[i][1] += c * uy;
                s.grad[j][0] -= c * ux;
                s.grad[j][1] -= c * uy;
            }
        }
    s.value = m0 - std::log(z) / beta;
    return s;
}

Vec2 sample_point(const std::vector<Vec2>& poly, std::mt19937_64& rng) {
    double x0 = poly[0][0], x1 = x0, y0 = poly[0][1], y1 = y0;
    for (const auto& p : poly) {
        x0 = std::min(x0, p[0]);
        x1 = std::max(x1, p[0]);
        y0 = std::min(y0, p[1]);
        y1 = std::max(y1, p[1]);
    }
    std::uniform_real_distribution<double> ux(x0, x1), uy(y0, y1);
    for (int k = 0; k < 1000; ++k) {
        Vec2 q{ux(rng), uy(rng)};
        if (inside_polygon(poly, q)) return q;
    }
    Vec2 c{0, 0};
    for (const auto& p : poly) {
        c[0] += p[0] / static_cast<double>(poly.size());
        c[1] += p[1] / static_cast<double>(poly.size());
    }
    return c;
}

ScaleSolution finish(std::vector<Vec2> v, const std::vector<std::vector<double>>& l) {
    ScaleSolution s;
    s.m = min_ratio(v, l);
    s.positions = std::move(v);
    for (size_t i = 0; i < s.positions.size(); ++i)
        for (size_t j = i + 1; j < s.positions.size(); ++j)
            if (dist(s.positions[i], s.positions[j]) / l[i][j] <= s.m * (1 + 1e-6)) s.active.emplace_back(i, j);
    return s;
}

ScaleSolution local_search(const DesignProblem& p, const std::vector<std::vector<double>>& l, std::vector<Vec2> v,
                           int iterations) {
    const auto& poly = p.paper;
    double diam = diameter(poly);
    const int stages = 14;
    int per_stage = std::max(20, iterations / stages);
    for (int st = 0; st < stages; ++st) {
        double c = 8.0 * std::pow(10.0, 6.0 * st / (stages - 1));
        double m = min_ratio(v, l);
        double beta = c / std::max(m, 1e-300);
        double step = 0.05 * diam;
        Soft cur = softmin(v, l, beta, true);
        for (int it = 0; it < per_stage && step > 1e-14 * diam; ++it) {
            double norm = 0;
            for (const auto& g : cur.grad) norm += g[0] * g[0] + g[1] * g[1];
            norm = std::sqrt(norm);
            if (!(norm > 0)) break;
            std::vector<Vec2> w(v.size());
            for (size_t i = 0; i < v.size(); ++i)
                w[i] = project_to_polygon(poly, {v[i][0] + step * cur.grad[i][0] / norm, v[i][1] + step * cur.grad[i][1] / norm});
            Soft nxt = softmin(w, l, beta, true);
            if (nxt.value > cur.value) {
                v = std::move(w);
                cur = std::move(nxt);
                step = std::min(step * 1.5, diam);
            } else {
                step *= 0.5;
            }
        }
    }
    return finish(std::move(v), l);
}

bool better(const ScaleSolution& a, const ScaleSolution& b) {
    double tie = 1e-12 * std::max(std::abs(a.m), std::abs(b.m));
    if (a.m > b.m + tie) return true;
    if (b.m > a.m + tie) return false;
    return a.positions < b.positions;
}

}  // namespace

void validate(const WeightedTree& t) { index_tree(t); }

void validate_polygon(const std::vector<Vec2>& poly) {
    if (poly.size() < 3) throw DomainError("paper needs at least three vertices");
    double area = 0;
    for (size_t i = 0; i < poly.size(); ++i) {
        const auto& a = poly[i];
        const auto& b = poly[(i + 1) % poly.size()];
        const auto& c = poly[(i + 2) % poly.size()];
        if (cross2(a, b, c) < 0) throw DomainError("paper must be convex and counterclockwise");
        area += a[0] * b[1] - a[1] * b[0];
    }
    if (!(area > 0)) throw DomainError("paper is degenerate or clockwise");
}

std::vector<std::vector<double>> path_lengths(const WeightedTree& t) {
    Indexed ix = index_tree(t);
    size_t L = ix.leaves.size();
    std::vector<std::vector<double>> out(L, std::vector<double>(L, 0.0));
    for (size_t a = 0; a < L; ++a) {
        std::vector<double> d(ix.id.size(), -1.0);
        std::vector<size_t> stack{ix.leaves[a]};
        d[ix.leaves[a]] = 0;
        while (!stack.empty()) {
            size_t u = stack.back();
            stack.pop_back();
            for (auto [v, w] : ix.adj[u])
                if (d[v] < 0) {
                    d[v] = d[u] + w;
                    stack.push_back(v);
                }
        }
        for (size_t b = 0; b < L; ++b) out[a][b] = d[ix.leaves[b]];
    }
    return out;
}

std::vector<double> leaf_edge_weights(const WeightedTree& t) {
    Indexed ix = index_tree(t);
    std::vector<double> w;
    for (size_t leaf : ix.leaves) {
        if (ix.adj[leaf].size() != 1) throw DomainError("leaf node must have degree one");
        w.push_back(ix.adj[leaf][0].second);
    }
    return w;
}

bool inside_polygon(const std::vector<Vec2>& poly, const Vec2& q, double tol) {
    for (size_t i = 0; i < poly.size(); ++i) {
        const auto& a = poly[i];
        const auto& b = poly[(i + 1) % poly.size()];
        double len = dist(a, b);
        if (len == 0) continue;
        if (cross2(a, b, q) / len < -tol) return false;
    }
    return true;
}

Vec2 project_to_polygon(const std::vector<Vec2>& poly, const Vec2& q) {
    if (inside_polygon(poly, q)) return q;
    Vec2 best = poly[0];
    double bd = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < poly.size(); ++i) {
        const auto& a = poly[i];
        const auto& b = poly[(i + 1) % poly.size()];
        double ex = b[0] - a[0], ey = b[1] - a[1];
        double len2 = ex * ex + ey * ey;
        double t = len2 > 0 ? ((q[0] - a[0]) * ex + (q[1] - a[1]) * ey) / len2 : 0.0;
        Vec2 c;
        if (t <= 0)
            c = a;
        else if (t >= 1)
            c = b;
        else
            c = {a[0] + t * ex, a[1] + t * ey};
        double d = dist(c, q);
        if (d < bd) {
            bd = d;
            best = c;
        }
    }
    return best;
}

FeasibilityReport check_feasible(const DesignProblem& p, const ScaleSolution& s, double tolerance) {
    auto l = path_lengths(p.tree);
    FeasibilityReport r;
    if (s.positions.size() != l.size()) throw DomainError("solution size does not match the leaf count");
    for (size_t i = 0; i < l.size(); ++i)
        for (size_t j = i + 1; j < l.size(); ++j) {
            double gap = dist(s.positions[i], s.positions[j]) - s.m * l[i][j];
            if (gap < -tolerance) r.violations.push_back({"separation", {i, j}, gap});
        }
    for (size_t i = 0; i < s.positions.size(); ++i)
        if (!inside_polygon(p.paper, s.positions[i], tolerance)) r.violations.push_back({"containment", {i}, 0.0});
    r.feasible = r.violations.empty();
    return r;
}

ScaleSolution optimize_scale(const DesignProblem& p, const OptimizeConfig& cfg) {
    validate_polygon(p.paper);
    auto l = path_lengths(p.tree);
    if (l.size() < 2) throw DomainError("at least two leaves are required");
    if (cfg.starts < 1) throw DomainError("starts must be positive");
    std::vector<ScaleSolution> results(static_cast<size_t>(cfg.starts));
    for (int s = 0; s < cfg.starts; ++s) {
        std::mt19937_64 rng(cfg.seed + static_cast<uint64_t>(s));
        std::vector<Vec2> v;
        for (size_t i = 0; i < l.size(); ++i) v.push_back(sample_point(p.paper, rng));
        results[static_cast<size_t>(s)] = local_search(p, l, std::move(v), cfg.iterations);
    }
    ScaleSolution best = results[0];
    for (const auto& r : results)
        if (better(r, best)) best = r;
    if (!check_feasible(p, best, cfg.tolerance).feasible) throw ContractViolation("local search produced an infeasible solution");
    return best;
}

ScaleSolution grid_oracle(const DesignProblem& p, double resolution) {
    validate_polygon(p.paper);
    auto l = path_lengths(p.tree);
    size_t L = l.size();
    if (L < 2) throw DomainError("at least two leaves are required");
    if (L > 4) throw DomainError("grid_oracle refuses more than four leaves");
    if (!(resolution > 0) || resolution > 1) throw DomainError("resolution must lie in (0, 1]");
    const auto& poly = p.paper;
    double x0 = poly[0][0], x1 = x0, y0 = poly[0][1], y1 = y0;
    for (const auto& q : poly) {
        x0 = std::min(x0, q[0]);
        x1 = std::max(x1, q[0]);
        y0 = std::min(y0, q[1]);
        y1 = std::max(y1, q[1]);
    }
    double ext = std::max(x1 - x0, y1 - y0);
    double h = resolution * ext;
    int nx = static_cast<int>(std::floor((x1 - x0) / h + 1e-9));
    int ny = static_cast<int>(std::floor((y1 - y0) / h + 1e-9));
    auto X = [&](int i) { return x0 + i * h; };
    auto Y = [&](int j) { return y0 + j * h; };
    std::vector<char> valid(static_cast<size_t>((nx + 1) * (ny + 1)));
    for (int i = 0; i <= nx; ++i)
        for (int j = 0; j <= ny; ++j)
            valid[static_cast<size_t>(i * (ny + 1) + j)] = inside_polygon(poly, {X(i), Y(j)}, 1e-12 * ext);

    struct IBox {
        int i0, i1, j0, j1;
    };
    using Node = std::vector<IBox>;
    double best = -1;
    std::vector<Vec2> best_v;

    auto upper = [&](const Node& n) {
        double u = std::numeric_limits<double>::infinity();
        for (size_t a = 0; a < L; ++a)
            for (size_t b = a + 1; b < L; ++b) {
                double dx = std::max(X(n[b].i1) - X(n[a].i0), X(n[a].i1) - X(n[b].i0));
                double dy = std::max(Y(n[b].j1) - Y(n[a].j0), Y(n[a].j1) - Y(n[b].j0));
                u = std::min(u, std::hypot(dx, dy) / l[a][b]);
            }
        return u;
    };
    auto lower = [&](const Node& n) {
        std::vector<Vec2> v;
        for (const auto& b : n) {
            int i = (b.i0 + b.i1) / 2, j = (b.j0 + b.j1) / 2;
            if (!valid[static_cast<size_t>(i * (ny + 1) + j)]) return;
            v.push_back({X(i), Y(j)});
        }
        double m = min_ratio(v, l);
        if (m > best) {
            best = m;
            best_v = v;
        }
    };

    std::vector<Node> stack{Node(L, IBox{0, nx, 0, ny})};
    while (!stack.empty()) {
        Node n = std::move(stack.back());
        stack.pop_back();
        if (upper(n) <= best * (1 + 1e-12)) continue;
        lower(n);
        size_t pick = L;
        int span = 0;
        bool split_x = true;
        for (size_t a = 0; a < L; ++a) {
            int sx = n[a].i1 - n[a].i0, sy = n[a].j1 - n[a].j0;
            if (sx > span) {
                span = sx;
                pick = a;
                split_x = true;
            }
            if (sy > span) {
                span = sy;
                pick = a;
                split_x = false;
            }
        }
        if (pick == L) continue;
        Node c1 = n, c2 = n;
        if (split_x) {
            int mid = (n[pick].i0 + n[pick].i1) / 2;
            c1[pick].i1 = mid;
            c2[pick].i0 = mid + 1;
        } else {
            int mid = (n[pick].j0 + n[pick].j1) / 2;
            c1[pick].j1 = mid;
            c2[pick].j0 = mid + 1;
        }
        double u1 = upper(c1), u2 = upper(c2);
        if (u1 > u2) {
            stack.push_back(std::move(c2));
            stack.push_back(std::move(c1));
        } else {
            stack.push_back(std::move(c1));
            stack.push_back(std::move(c2));
        }
    }
    if (best < 0) {
        ScaleSolution s;
        s.m = 0;
        s.positions.assign(L, poly[0]);
        return s;
    }
    return finish(best_v, l);
}

}  // namespace circlepack
