#include "zmc/grid.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "zmc/errors.hpp"

namespace zmc {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t p = text.find(sep, start);
        out.push_back(text.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
        if (p == std::string_view::npos) return out;
        start = p + 1;
    }
}

template <typename T>
T parse_number(std::string_view s, std::string_view what) {
    T value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw std::invalid_argument("grid spec: bad " + std::string(what) + " '" + std::string(s) + "'");
    }
    return value;
}

}  // namespace

double GridSpec::u(int i) const {
    if (i == nu - 1) return u_max;
    return u_min + (u_max - u_min) * static_cast<double>(i) / static_cast<double>(nu - 1);
}

double GridSpec::v(int j) const {
    if (j == nv - 1) return v_max;
    return v_min + (v_max - v_min) * static_cast<double>(j) / static_cast<double>(nv - 1);
}

void GridSpec::validate() const {
    if (nu < 2 || nv < 2) throw std::invalid_argument("grid spec: nu and nv must be >= 2");
    if (!(u_min < u_max) || !(v_min < v_max)) throw std::invalid_argument("grid spec: empty range");
    if (!(margin >= 0.0)) throw std::invalid_argument("grid spec: margin must be >= 0");
}

GridSpec parse_grid_spec(std::string_view text) {
    const auto parts = split(text, ',');
    if (parts.size() != 2 && parts.size() != 3) {
        throw std::invalid_argument("grid spec: expected 'umin:umax:nu,vmin:vmax:nv[,margin]'");
    }
    GridSpec g;
    const auto axis = [](std::string_view s, double& lo, double& hi, int& n) {
        const auto f = split(s, ':');
        if (f.size() != 3) throw std::invalid_argument("grid spec: axis must be 'min:max:count'");
        lo = parse_number<double>(f[0], "minimum");
        hi = parse_number<double>(f[1], "maximum");
        n = parse_number<int>(f[2], "count");
    };
    axis(parts[0], g.u_min, g.u_max, g.nu);
    axis(parts[1], g.v_min, g.v_max, g.nv);
    if (parts.size() == 3) g.margin = parse_number<double>(parts[2], "margin");
    g.validate();
    return g;
}

std::string format_grid_spec(const GridSpec& g) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%.17g:%.17g:%d,%.17g:%.17g:%d,%.17g", g.u_min, g.u_max, g.nu, g.v_min,
                  g.v_max, g.nv, g.margin);
    return buf;
}

std::string DomainViolation::describe(const std::string& what, const std::vector<Point>& pts) {
    std::string out = what + " (" + std::to_string(pts.size()) + " point(s)";
    const std::size_t shown = pts.size() < 5 ? pts.size() : 5;
    for (std::size_t k = 0; k < shown; ++k) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s(%.6g, %.6g)", k == 0 ? ": " : ", ", pts[k].first, pts[k].second);
        out += buf;
    }
    if (shown < pts.size()) out += ", ...";
    out += ")";
    return out;
}

}  // namespace zmc
