#include "circlepack/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

namespace circlepack {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

const char* fill_for(const std::string& role) {
    static const std::map<std::string, const char*> colors{
        {"rock", "#c9d6e3"}, {"plug", "#f2b880"}, {"fixation", "#b5d99c"}, {"center", "#d9c2e9"},
        {"filler", "#eeeeee"}, {"circle", "#a7c7e7"}, {"leaf", "#a7c7e7"}};
    std::string key = role.substr(0, role.find('('));
    auto it = colors.find(key);
    if (it != colors.end()) return it->second;
    if (key == "shim") return "#e57373";
    return "#dddddd";
}

}  // namespace

std::string render_svg(const io::LayoutFile& l, const SvgOptions& opt) {
    double x0 = std::numeric_limits<double>::max(), y0 = x0, x1 = -x0, y1 = -x0;
    auto grow = [&](double x, double y) {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    };
    std::vector<std::array<double, 2>> outline;
    if (l.container) {
        std::visit(
            [&](const auto& b) {
                using T = std::decay_t<decltype(b)>;
                if constexpr (std::is_same_v<T, Square>) {
                    double s = b.side.to_double();
                    outline = {{0, 0}, {s, 0}, {s, s}, {0, s}};
                } else if constexpr (std::is_same_v<T, Rectangle>) {
                    double w = b.width.to_double(), h = b.height.to_double();
                    outline = {{0, 0}, {w, 0}, {w, h}, {0, h}};
                } else if constexpr (std::is_same_v<T, EquilateralTriangle>) {
                    double s = b.side.to_double();
                    outline = {{0, 0}, {s, 0}, {s / 2, s * std::sqrt(3.0) / 2}};
                }
            },
            *l.container);
    }
    for (const auto& p : outline) grow(p[0], p[1]);
    for (const auto& c : l.layout.circles) {
        double x = c.center->x.to_double(), y = c.center->y.to_double(), r = c.radius.to_double();
        grow(x - r, y - r);
        grow(x + r, y + r);
    }
    if (x0 > x1) x0 = y0 = 0, x1 = y1 = 1;
    double ext = std::max({x1 - x0, y1 - y0, 1e-300});
    double k = 960.0 / ext;
    auto X = [&](double x) { return 20.0 + (x - x0) * k; };
    auto Y = [&](double y) { return 980.0 - (y - y0) * k; };

    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" width=\"1000\" height=\"1000\">\n";
    s += "<rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n";
    if (!outline.empty()) {
        s += "<polygon fill=\"none\" stroke=\"black\" stroke-width=\"" + num(2 * opt.stroke) + "\" points=\"";
        for (const auto& p : outline) s += num(X(p[0])) + "," + num(Y(p[1])) + " ";
        s += "\"/>\n";
    }
    for (size_t i = 0; i < l.layout.circles.size(); ++i) {
        const auto& c = l.layout.circles[i];
        std::string role = i < l.layout.roles.size() ? l.layout.roles[i] : "";
        double x = c.center->x.to_double(), y = c.center->y.to_double(), r = c.radius.to_double();
        s += "<circle cx=\"" + num(X(x)) + "\" cy=\"" + num(Y(y)) + "\" r=\"" + num(r * k) + "\" fill=\"" +
             fill_for(role) + "\" stroke=\"#333\" stroke-width=\"" + num(opt.stroke) + "\"/>\n";
        if (opt.labels && r * k > 6)
            s += "<text x=\"" + num(X(x)) + "\" y=\"" + num(Y(y)) + "\" font-size=\"" + num(std::min(24.0, r * k)) +
                 "\" text-anchor=\"middle\" dominant-baseline=\"middle\">" + std::to_string(i) + "</text>\n";
    }
    if (opt.pockets)
        for (const auto& p : l.pockets) {
            double cx = 0, cy = 0;
            bool ok = true;
            for (size_t w : p) {
                if (w >= l.layout.circles.size()) {
                    ok = false;
                    break;
                }
                cx += l.layout.circles[w].center->x.to_double() / 3;
                cy += l.layout.circles[w].center->y.to_double() / 3;
            }
            if (ok)
                s += "<circle cx=\"" + num(X(cx)) + "\" cy=\"" + num(Y(cy)) + "\" r=\"4\" fill=\"#d32f2f\"/>\n";
        }
    s += "</svg>\n";
    return s;
}

}  // namespace circlepack
