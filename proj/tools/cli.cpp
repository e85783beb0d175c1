#include "cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "zmc/catalog.hpp"
#include "zmc/errors.hpp"
#include "zmc/expr.hpp"
#include "zmc/foliation.hpp"
#include "zmc/grid.hpp"
#include "zmc/meshio.hpp"
#include "zmc/pde.hpp"
#include "zmc/reps.hpp"

namespace zmc::cli {

namespace {

using json = nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(cplx z) {
    if (z.imag() == 0.0) return fmt(z.real());
    return fmt(z.real()) + (std::signbit(z.imag()) ? "-" : "+") + fmt(std::abs(z.imag())) + "i";
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

bool read_double(std::string_view s, double& v) {
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc() && p == s.data() + s.size();
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// JSON

json to_json(const ParamValue& v) {
    return std::visit([](const auto& x) { return json(x); }, v);
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const GridSpec& g) {
    return {{"spec", format_grid_spec(g)}, {"u_min", g.u_min}, {"u_max", g.u_max}, {"nu", g.nu},
            {"v_min", g.v_min}, {"v_max", g.v_max}, {"nv", g.nv},       {"margin", g.margin}};
}

std::string timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// ---------------------------------------------------------------------------
// Shared option groups

std::map<std::string, std::string> key_values(const std::vector<std::string>& items) {
    std::map<std::string, std::string> kv;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("expected key=value, got '" + item + "'");
        kv[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
    }
    return kv;
}

SurfaceParams surface_params(const std::vector<std::string>& items) {
    SurfaceParams p;
    for (const auto& [k, v] : key_values(items)) p[k] = parse_real(v);
    return p;
}

IdentityParams identity_params(const std::vector<std::string>& items) {
    IdentityParams p;
    for (const auto& [k, v] : key_values(items)) {
        if (k == "beta") {
            p.beta = parse_real(v);
        } else if (k == "a") {
            p.a = parse_list(v);
        } else if (k == "b") {
            p.b = parse_list(v);
        } else if (k == "c") {
            p.c = parse_list(v);
        } else if (k == "d") {
            p.d = parse_list(v);
        } else if (k == "surface") {
            p.surface = v;
        } else {
            throw UsageError("unknown identity parameter '" + k + "'");
        }
    }
    return p;
}

GridSpec grid_or(const std::string& text, const GridSpec& fallback) {
    return text.empty() ? fallback : parse_grid_spec(text);
}

GridSpec square(double lo, double hi, int n) {
    GridSpec g;
    g.u_min = g.v_min = lo;
    g.u_max = g.v_max = hi;
    g.nu = g.nv = n;
    return g;
}

// u in [0, 1], v in [2, 3]: keeps q(u) = r(v) off the default data.
GridSpec tlms_grid() {
    GridSpec g = square(0.0, 1.0, 21);
    g.v_min = 2.0;
    g.v_max = 3.0;
    return g;
}

struct WEOptions {
    std::string f = "1";
    std::string g = "w";
    std::string mode = "minimal";
    std::string zeta0 = "0";
    std::string offset = "0,0,0";
    std::string var = "w";

    void attach(CLI::App* app) {
        app->add_option("--f", f, "W-E function f (R in reduced-R mode)")->capture_default_str();
        app->add_option("--g", g, "W-E function g")->capture_default_str();
        app->add_option("--mode", mode, "minimal | maximal | reduced-R")->capture_default_str();
        app->add_option("--zeta0", zeta0, "integration basepoint")->capture_default_str();
        app->add_option("--offset", offset, "base offset x0,y0,z0")->capture_default_str();
        app->add_option("--var", var, "variable name used in --f and --g")->capture_default_str();
    }

    WEData data() const {
        WEData d;
        d.f = parse(f, var);
        d.g = parse(g, var);
        d.mode = parse_we_mode(mode);
        d.zeta0 = parse_complex(zeta0);
        const auto o = parse_list(offset);
        if (o.size() != 3) throw UsageError("--offset needs three values");
        d.offset = Vec3(o[0], o[1], o[2]);
        return d;
    }
};

struct TlmsOptions {
    std::string f = "1", q = "u", g = "1", r = "v";
    double u0 = 0.0, v0 = 0.0;
    std::string variant = "null-pair";

    void attach(CLI::App* app) {
        app->add_option("--f", f, "f(u)")->capture_default_str();
        app->add_option("--q", q, "q(u)")->capture_default_str();
        app->add_option("--g", g, "g(v)")->capture_default_str();
        app->add_option("--r", r, "r(v)")->capture_default_str();
        app->add_option("--u0", u0, "base u")->capture_default_str();
        app->add_option("--v0", v0, "base v")->capture_default_str();
        app->add_option("--variant", variant, "null-pair | display-literal")->capture_default_str();
    }

    TLMSData data() const { return {parse(f, "u"), parse(q, "u"), parse(g, "v"), parse(r, "v"), u0, v0}; }

    TlmsVariant which() const {
        if (variant == "null-pair") return TlmsVariant::null_pair;
        if (variant == "display-literal") return TlmsVariant::display_literal;
        throw UsageError("unknown TLMS variant '" + variant + "'");
    }
};

struct BCOptions {
    std::string F = "r", G = "s";

    void attach(CLI::App* app) {
        app->add_option("--F", F, "F(r)")->capture_default_str();
        app->add_option("--G", G, "G(s)")->capture_default_str();
    }

    BCData data() const { return {parse(F, "r"), parse(G, "s")}; }
};

struct MeshOutput {
    std::string obj, csv;

    void attach(CLI::App* app) {
        app->add_option("--obj", obj, "write the patch as OBJ");
        app->add_option("--csv", csv, "write the patch as CSV");
    }

    void write(const SurfacePatch& p, std::ostream& out) const {
        if (!obj.empty()) write_obj(p, obj);
        if (!csv.empty()) write_csv(p, csv);
        out << "patch " << p.nu << "x" << p.nv << " valid=" << p.valid_count() << " faces=" << p.face_count() << "\n";
    }
};

int finish(const VerificationReport& r, const std::string& path, std::string_view command, std::ostream& out) {
    if (!path.empty()) write_text_atomic(report_json(r, command), path);
    out << r.subject << ": " << (r.pass ? "PASS" : "FAIL") << " max_abs_err=" << fmt(r.max_abs_err)
        << " tolerance=" << fmt(r.tolerance) << " points=" << r.points_checked << "\n";
    for (const auto& c : r.checks) {
        out << "  " << c.name << ": " << (c.pass ? "PASS" : "FAIL") << " max_abs_err=" << fmt(c.max_abs_err)
            << " tolerance=" << fmt(c.tolerance) << "\n";
    }
    return r.pass ? 0 : 1;
}

std::pair<std::int64_t, std::int64_t> parse_bands(const std::string& text) {
    const auto dots = text.find("..");
    const std::string lo = dots == std::string::npos ? text : text.substr(0, dots);
    const std::string hi = dots == std::string::npos ? text : text.substr(dots + 2);
    std::int64_t a = 0, b = 0;
    const auto ra = std::from_chars(lo.data(), lo.data() + lo.size(), a);
    const auto rb = std::from_chars(hi.data(), hi.data() + hi.size(), b);
    if (ra.ec != std::errc() || rb.ec != std::errc() || ra.ptr != lo.data() + lo.size() ||
        rb.ptr != hi.data() + hi.size() || a > b) {
        throw UsageError("bands must look like k..k, got '" + text + "'");
    }
    return {a, b};
}

// ---------------------------------------------------------------------------
// Subcommand bodies

struct Cli {
    explicit Cli(std::ostream& o) : out(o) {}

    std::ostream& out;

    // surface eval
    std::string name, sx = "0", sy = "0";
    bool complex = false;
    std::vector<std::string> surface_kv;

    // identity verify
    std::string identity, grid, policy, report;
    int n = 1;
    std::vector<std::string> identity_kv;
    double tol = -1.0;
    int probes = 0;
    double imag_max = 0.5;
    std::uint64_t seed = 1;

    // residual
    std::string equation, surface, method = "exact";

    // residual parametric
    std::string metric, source = "we", pf, pg;
    double h = 1e-4;
    std::string theta = "0";
    bool fd = false;

    WEOptions we;
    TlmsOptions tl;
    BCOptions bc;
    MeshOutput mesh;

    // we
    std::string zeta = "0", guess = "0";
    double px = 0.0, py = 0.0;
    bool invert = false;
    std::string weights, parts, region = "-0.8:0.8:32,-0.8:0.8:32";
    bool verify = false;
    int samples = 50;
    double radius = 0.8;

    // tlms / bc / foliate
    bool check = false;
    std::string t_list = "0", bands = "0..0", outdir, y_range = "-3:3";
    int lattice = 41;

    double tol_or(double d) const { return tol >= 0.0 ? tol : d; }

    int surface_eval() {
        const HeightSurface s = builtin_surface(name, surface_params(surface_kv));
        if (complex) {
            out << fmt(s(parse_complex(sx), parse_complex(sy))) << "\n";
            return 0;
        }
        const double x = parse_real(sx);
        const double y = parse_real(sy);
        if (!s.in_domain(x, y, 0.0)) throw DomainViolation("point is outside the surface's real domain", {{x, y}});
        out << fmt(s(x, y)) << "\n";
        return 0;
    }

    int identity_verify() {
        const IdentityInstance inst = identity_terms(identity, n, identity_params(identity_kv));
        const std::optional<BranchPolicy> pol =
            policy.empty() ? std::nullopt : std::optional(parse_branch_policy(policy));
        const GridSpec g = parse_grid_spec(grid);
        VerificationReport r;
        if (probes > 0) {
            const auto ps = random_complex_probes(g, probes, imag_max, seed);
            r = verify_identity_probes(inst, ps, g.margin, pol, tol_or(1e-9));
            r.parameters["seed"] = static_cast<std::int64_t>(seed);
            r.parameters["imag_max"] = imag_max;
            r.grid = g;
        } else {
            r = verify_identity(inst, g, pol, tol_or(1e-9));
        }
        return finish(r, report, "identity verify", out);
    }

    JetMethod jet_method() const {
        if (method == "exact") return JetMethod::exact;
        if (method == "central-diff") return JetMethod::central_diff;
        throw UsageError("unknown jet method '" + method + "'");
    }

    int residual_graph() {
        if (equation.empty() || surface.empty()) throw UsageError("residual needs --equation and --surface");
        const HeightSurface s = builtin_surface(surface, surface_params(surface_kv));
        const VerificationReport r =
            residual_sweep(s, parse_graph_equation(equation), grid_or(grid, s.default_grid), jet_method(), tol_or(1e-10));
        return finish(r, report, "residual", out);
    }

    ParametricSource parametric_source(GridSpec& g) {
        if (source == "we") {
            if (!pf.empty()) we.f = pf;
            if (!pg.empty()) we.g = pg;
            g = grid_or(grid, square(-0.8, 0.8, 21));
            return we_source(we.data(), parse_real(theta));
        }
        if (source == "tlms") {
            if (!pf.empty()) tl.f = pf;
            if (!pg.empty()) tl.g = pg;
            g = grid_or(grid, tlms_grid());
            return tlms_source(tl.data(), tl.which());
        }
        if (source == "bc") {
            g = grid_or(grid, square(0.1, 1.0, 21));
            return bc_source(bc.data());
        }
        if (source == "graph") {
            if (surface.empty()) throw UsageError("--source graph needs --surface");
            const HeightSurface s = builtin_surface(surface, surface_params(surface_kv));
            g = grid_or(grid, s.default_grid);
            return graph_lift(s);
        }
        throw UsageError("unknown parametric source '" + source + "'");
    }

    int residual_parametric() {
        GridSpec g;
        ParametricSource src = parametric_source(g);
        if (fd) src.jet = nullptr;
        const VerificationReport r = parametric_sweep(src, parse_metric(metric.empty() ? "euclid" : metric), g, h, tol_or(1e-6));
        return finish(r, report, "residual parametric", out);
    }

    int we_eval() {
        const Vec3 X = associated_family_point(we.data(), parse_complex(zeta), parse_real(theta));
        out << fmt(X[0]) << " " << fmt(X[1]) << " " << fmt(X[2]) << "\n";
        return 0;
    }

    int we_mesh() {
        const WEData d = we.data();
        const GridSpec g = grid_or(grid, square(-1.0, 1.0, 17));
        const SurfacePatch p =
            invert ? sample_inverted(d, g, parse_complex(guess))
                   : sample_patch([&d, th = parse_real(theta)](double u, double v) {
                         return associated_family_point(d, cplx(u, v), th);
                     }, g);
        mesh.write(p, out);
        return 0;
    }

    int we_invert() {
        const cplx z = invert_parametrization(we.data(), px, py, parse_complex(guess));
        out << fmt(z.real()) << " " << fmt(z.imag()) << "\n";
        return 0;
    }

    int we_split() {
        WEData d = we.data();
        d.offset = Vec3::Zero();
        std::vector<WEData> split_parts;
        if (!parts.empty()) {
            std::vector<AnalyticExpr> exprs;
            for (const auto& p : split(parts, ';')) exprs.push_back(parse(p, we.var));
            split_parts = split_weierstrass(d, exprs, parse_grid_spec(region));
        } else {
            if (weights.empty()) throw UsageError("we split needs --weights or --parts");
            split_parts = split_weierstrass(d, parse_list(weights));
        }
        if (!verify) {
            for (const auto& p : split_parts) out << p.f.str() << "\n";
            return 0;
        }
        std::mt19937_64 rng(seed);
        const auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
        ErrorAccumulator acc;
        double xyz = 0.0;
        for (int k = 0; k < samples; ++k) {
            const cplx z = d.zeta0 + std::polar(radius * std::sqrt(unit()), 2.0 * std::numbers::pi * unit());
            const Vec3 whole = we_point(d, z);
            Vec3 sum = Vec3::Zero();
            for (const auto& p : split_parts) sum += we_point(p, z);
            acc.add(std::abs(sum[2] - whole[2]), {z.real(), z.imag()}, whole[2], sum[2]);
            xyz = std::max(xyz, (sum - whole).cwiseAbs().maxCoeff());
        }
        VerificationReport r;
        r.subject = "we-split";
        r.policy = "principal";
        r.tolerance = tol_or(1e-10);
        r.parameters["parts"] = static_cast<std::int64_t>(split_parts.size());
        r.parameters["samples"] = static_cast<std::int64_t>(samples);
        r.parameters["radius"] = radius;
        r.parameters["seed"] = static_cast<std::int64_t>(seed);
        if (parts.empty()) r.parameters["weights"] = parse_list(weights);
        acc.fill(r);
        r.checks.push_back({"xyz-linearity", xyz, r.tolerance, xyz <= r.tolerance});
        r.finalize();
        return finish(r, report, "we split", out);
    }

    int representation_mesh(const ParametricSource& src, const GridSpec& g, const SignatureMetric& m) {
        mesh.write(sample_patch(src.point, g), out);
        if (!check) return 0;
        return finish(parametric_sweep(src, m, g, h, tol_or(1e-6)), report, "mesh check", out);
    }

    int tlms_mesh() {
        const GridSpec g = grid_or(grid, tlms_grid());
        return representation_mesh(tlms_source(tl.data(), tl.which()), g,
                                   parse_metric(metric.empty() ? "l3x" : metric));
    }

    int bc_mesh() {
        const GridSpec g = grid_or(grid, square(0.1, 1.0, 21));
        return representation_mesh(bc_source(bc.data()), g, parse_metric(metric.empty() ? "l3p" : metric));
    }

    int foliate() {
        const auto [k0, k1] = parse_bands(bands);
        const std::vector<double> ts = parse_list(t_list);
        const auto yr = split(y_range, ':');
        double y0 = 0.0, y1 = 0.0;
        if (yr.size() != 2 || !read_double(yr[0], y0) || !read_double(yr[1], y1) || !(y0 < y1)) {
            throw UsageError("--y-range must look like ymin:ymax");
        }
        const double pi = std::numbers::pi;
        if (!outdir.empty()) {
            std::filesystem::create_directories(outdir);
            for (std::int64_t k = k0; k <= k1; ++k) {
                GridSpec g;
                g.u_min = (2.0 * static_cast<double>(k) - 1.0) * pi;
                g.u_max = (2.0 * static_cast<double>(k) + 1.0) * pi;
                g.v_min = y0;
                g.v_max = y1;
                g.nu = g.nv = lattice;
                for (std::size_t ti = 0; ti < ts.size(); ++ti) {
                    const SurfacePatch p = sample_leaf(ts[ti], g);
                    const std::string stem = outdir + "/leaf_k" + std::to_string(k) + "_t" + std::to_string(ti);
                    write_obj(p, stem + ".obj");
                    write_csv(p, stem + ".csv");
                }
            }
            out << "wrote " << (k1 - k0 + 1) * static_cast<std::int64_t>(ts.size()) << " leaves to " << outdir << "\n";
        }
        if (!check) return 0;
        GridSpec g;
        g.u_min = (2.0 * static_cast<double>(k0) - 1.0) * pi;
        g.u_max = (2.0 * static_cast<double>(k1) + 1.0) * pi;
        g.v_min = y0;
        g.v_max = y1;
        // An even lattice keeps y = 0 and x = 2 k pi off the grid.
        g.nu = 2 * lattice;
        g.nv = 2 * (lattice / 2);
        g.margin = 1e-6;
        std::string path = report;
        if (path.empty() && !outdir.empty()) path = outdir + "/foliation_report.json";
        return finish(foliation_check(g, ts, seed), path, "foliate", out);
    }
};

}  // namespace

// ---------------------------------------------------------------------------

std::complex<double> parse_complex(std::string_view text) {
    const std::string s = trim(text);
    double re = 0.0, im = 0.0;
    if (read_double(s, re)) return {re, 0.0};
    if (!s.empty() && s.back() == 'i') {
        re = 0.0;
        const std::string body = s.substr(0, s.size() - 1);
        // Split at the last sign that is not part of an exponent.
        std::size_t split_at = std::string::npos;
        for (std::size_t k = body.size(); k-- > 1;) {
            if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
                split_at = k;
                break;
            }
        }
        const std::string real_part = split_at == std::string::npos ? "" : body.substr(0, split_at);
        std::string imag_part = split_at == std::string::npos ? body : body.substr(split_at);
        if (imag_part.empty() || imag_part == "+") imag_part = "1";
        if (imag_part == "-") imag_part = "-1";
        if (imag_part.back() == '*') imag_part.pop_back();
        if ((real_part.empty() || read_double(real_part, re)) && read_double(imag_part, im)) return {re, im};
    }
    const AnalyticExpr e = parse(s, "pi");
    return e(std::numbers::pi);
}

double parse_real(std::string_view text) {
    const cplx z = parse_complex(text);
    if (z.imag() != 0.0) throw std::invalid_argument("expected a real value, got '" + std::string(text) + "'");
    return z.real();
}

std::vector<double> parse_list(std::string_view text) {
    std::vector<double> out;
    for (const auto& item : split(text, ',')) {
        if (item.empty()) throw std::invalid_argument("empty entry in list '" + std::string(text) + "'");
        out.push_back(parse_real(item));
    }
    return out;
}

std::string report_json(const VerificationReport& r, std::string_view command) {
    json params = json::object();
    for (const auto& [k, v] : r.parameters) params[k] = to_json(v);
    json checks = json::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"name", c.name}, {"max_abs_err", c.max_abs_err}, {"tolerance", c.tolerance}, {"pass", c.pass}});
    }
    const json j = {
        {"schema", 1},
        {"command", std::string(command)},
        {"subject", r.subject},
        {"parameters", params},
        {"grid", r.grid ? to_json(*r.grid) : json(nullptr)},
        {"policy", r.policy},
        {"points_checked", r.points_checked},
        {"max_abs_err", r.max_abs_err},
        {"mean_abs_err", r.mean_abs_err},
        {"worst_point",
         {{"coords", r.worst_point.coords}, {"lhs", to_json(r.worst_point.lhs)}, {"rhs", to_json(r.worst_point.rhs)}}},
        {"tolerance", r.tolerance},
        {"pass", r.pass},
        {"checks", checks},
        {"timestamp", timestamp()},
    };
    return j.dump(2) + "\n";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Zero-mean-curvature surfaces: constructions, identities and checks", "zmc"};
    app.set_config("--config", "", "read options from a TOML or INI file (command-line flags win)");
    app.require_subcommand(1);
    Cli c(out);

    auto* surface_cmd = app.add_subcommand("surface", "graph surfaces")->require_subcommand(1);
    auto* surface_eval = surface_cmd->add_subcommand("eval", "evaluate a surface at a point");
    surface_eval->add_option("--name", c.name, "surface id or expr:<text>")->required();
    surface_eval->add_option("--x", c.sx, "x (real, or complex with --complex)");
    surface_eval->add_option("--y", c.sy, "y");
    surface_eval->add_flag("--complex", c.complex, "evaluate the complex extension");
    surface_eval->add_option("--param", c.surface_kv, "surface parameter k=v");

    auto* identity_cmd = app.add_subcommand("identity", "decomposition identities")->require_subcommand(1);
    auto* verify = identity_cmd->add_subcommand("verify", "sweep an identity over a grid or complex probes");
    verify->add_option("--identity", c.identity, "identity id")->required();
    verify->add_option("--n", c.n, "number of terms")->required();
    verify->add_option("--params", c.identity_kv, "k=v (beta, a, b, c, d, surface); lists are comma separated");
    verify->add_option("--grid", c.grid, "umin:umax:nu,vmin:vmax:nv[,margin]")->required();
    verify->add_option("--policy", c.policy, "principal | mod-pi | mod-2pi-i | multiplicative");
    verify->add_option("--tol", c.tol, "tolerance (default 1e-9)");
    verify->add_option("--report", c.report, "JSON report path");
    verify->add_option("--probes", c.probes, "random complex probes instead of the real lattice");
    verify->add_option("--imag-max", c.imag_max, "bound on probe imaginary parts")->capture_default_str();
    verify->add_option("--seed", c.seed, "probe seed")->capture_default_str();

    auto* residual = app.add_subcommand("residual", "graph PDE residuals");
    residual->require_subcommand(0, 1);
    residual->add_option("--equation", c.equation, "minimal | maximal | bi");
    residual->add_option("--surface", c.surface, "surface id or expr:<text>");
    residual->add_option("--param", c.surface_kv, "surface parameter k=v");
    residual->add_option("--grid", c.grid, "grid (default: the surface's domain)");
    residual->add_option("--method", c.method, "exact | central-diff")->capture_default_str();
    residual->add_option("--tol", c.tol, "tolerance (default 1e-10)");
    residual->add_option("--report", c.report, "JSON report path");

    auto* parametric = residual->add_subcommand("parametric", "signature-aware parametric ZMC check");
    parametric->add_option("--metric", c.metric, "euclid | l3 | l3p | l3x (default euclid)");
    parametric->add_option("--source", c.source, "we | tlms | bc | graph")->capture_default_str();
    parametric->add_option("--surface", c.surface, "surface for --source graph");
    parametric->add_option("--grid", c.grid, "parameter grid");
    parametric->add_option("--theta", c.theta, "associated family angle (we)")->capture_default_str();
    parametric->add_option("--step", c.h, "finite-difference step")->capture_default_str();
    parametric->add_flag("--fd", c.fd, "use finite differences even when exact jets exist");
    parametric->add_option("--tol", c.tol, "tolerance (default 1e-6)");
    parametric->add_option("--report", c.report, "JSON report path");
    parametric->add_option("--F", c.bc.F, "B-C F(r)");
    parametric->add_option("--G", c.bc.G, "B-C G(s)");
    parametric->add_option("--f", c.pf, "f (we: in w, tlms: in u)");
    parametric->add_option("--g", c.pg, "g (we: in w, tlms: in v)");
    parametric->add_option("--q", c.tl.q, "TLMS q(u)");
    parametric->add_option("--r", c.tl.r, "TLMS r(v)");
    parametric->add_option("--mode", c.we.mode, "W-E mode");
    parametric->add_option("--zeta0", c.we.zeta0, "W-E basepoint");
    parametric->add_option("--variant", c.tl.variant, "TLMS variant");

    auto* we_cmd = app.add_subcommand("we", "Weierstrass-Enneper representation")->require_subcommand(1);
    auto* we_eval = we_cmd->add_subcommand("eval", "surface point at zeta");
    c.we.attach(we_eval);
    we_eval->add_option("--zeta", c.zeta, "parameter")->required();
    we_eval->add_option("--theta", c.theta, "associated family angle")->capture_default_str();
    auto* we_mesh = we_cmd->add_subcommand("mesh", "sample a patch");
    c.we.attach(we_mesh);
    c.mesh.attach(we_mesh);
    we_mesh->add_option("--grid", c.grid, "zeta grid, or (x, y) grid with --invert");
    we_mesh->add_option("--theta", c.theta, "associated family angle")->capture_default_str();
    we_mesh->add_flag("--invert", c.invert, "sample the height over an (x, y) grid by inversion");
    we_mesh->add_option("--guess", c.guess, "inversion seed at the first lattice point")->capture_default_str();
    auto* we_invert = we_cmd->add_subcommand("invert", "solve (x(zeta), y(zeta)) = (x, y)");
    c.we.attach(we_invert);
    we_invert->add_option("--x", c.px, "target x")->required();
    we_invert->add_option("--y", c.py, "target y")->required();
    we_invert->add_option("--guess", c.guess, "initial zeta")->capture_default_str();
    auto* we_split = we_cmd->add_subcommand("split", "split R into parts");
    c.we.attach(we_split);
    we_split->add_option("--weights", c.weights, "comma-separated weights summing to 1");
    we_split->add_option("--parts", c.parts, "semicolon-separated expressions R_i (checked by sampling)");
    we_split->add_option("--region", c.region, "sampling rectangle for --parts")->capture_default_str();
    we_split->add_flag("--verify", c.verify, "check sum z_i = z at random zeta");
    we_split->add_option("--samples", c.samples, "random zeta count")->capture_default_str();
    we_split->add_option("--radius", c.radius, "sampling disk radius about zeta0")->capture_default_str();
    we_split->add_option("--seed", c.seed, "sampling seed")->capture_default_str();
    we_split->add_option("--tol", c.tol, "tolerance (default 1e-10)");
    we_split->add_option("--report", c.report, "JSON report path");

    const auto add_mesh_check = [&c](CLI::App* cmd) {
        c.mesh.attach(cmd);
        cmd->add_option("--grid", c.grid, "parameter grid");
        cmd->add_flag("--check", c.check, "run the parametric ZMC check on the grid");
        cmd->add_option("--metric", c.metric, "metric for --check (default l3x for tlms, l3p for bc)");
        cmd->add_option("--step", c.h, "finite-difference step")->capture_default_str();
        cmd->add_option("--tol", c.tol, "tolerance (default 1e-6)");
        cmd->add_option("--report", c.report, "JSON report path");
    };
    auto* tlms_cmd = app.add_subcommand("tlms", "timelike minimal surfaces")->require_subcommand(1);
    auto* tlms_mesh = tlms_cmd->add_subcommand("mesh", "sample a patch");
    c.tl.attach(tlms_mesh);
    add_mesh_check(tlms_mesh);
    auto* bc_cmd = app.add_subcommand("bc", "Barbishov-Charnikov Born-Infeld solitons")->require_subcommand(1);
    auto* bc_mesh = bc_cmd->add_subcommand("mesh", "sample a patch");
    c.bc.attach(bc_mesh);
    add_mesh_check(bc_mesh);

    auto* foliate = app.add_subcommand("foliate", "helicoid foliation leaves and checks");
    foliate->add_option("--t", c.t_list, "comma-separated leaf offsets")->capture_default_str();
    foliate->add_option("--bands", c.bands, "band range k..k")->capture_default_str();
    foliate->add_option("--out", c.outdir, "directory for leaf meshes");
    foliate->add_option("--n", c.lattice, "lattice points per band side")->capture_default_str();
    foliate->add_option("--y-range", c.y_range, "ymin:ymax")->capture_default_str();
    foliate->add_flag("--check", c.check, "run the foliation checks");
    foliate->add_option("--seed", c.seed, "seed for random round trips")->capture_default_str();
    foliate->add_option("--report", c.report, "JSON report path");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        if (surface_eval->parsed()) return c.surface_eval();
        if (verify->parsed()) return c.identity_verify();
        if (parametric->parsed()) return c.residual_parametric();
        if (residual->parsed()) return c.residual_graph();
        if (we_eval->parsed()) return c.we_eval();
        if (we_mesh->parsed()) return c.we_mesh();
        if (we_invert->parsed()) return c.we_invert();
        if (we_split->parsed()) return c.we_split();
        if (tlms_mesh->parsed()) return c.tlms_mesh();
        if (bc_mesh->parsed()) return c.bc_mesh();
        if (foliate->parsed()) {
            if (c.outdir.empty() && !c.check) throw UsageError("foliate needs --out and/or --check");
            return c.foliate();
        }
        throw UsageError("no command given");
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        const std::string& k = e.kind();
        const bool usage = k == "SyntaxError" || k == "UnknownIdentifier" || k == "UnknownSurface" ||
                           k == "UnknownIdentity" || k == "ParamDomainError";
        err << (usage ? "usage error: " : "error: ") << k << ": " << e.what() << "\n";
        return usage ? 2 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace zmc::cli
