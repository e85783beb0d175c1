// Acceptance suite: one PASS/FAIL line per criterion; nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "zmc/catalog.hpp"
#include "zmc/errors.hpp"
#include "zmc/foliation.hpp"
#include "zmc/pde.hpp"
#include "zmc/reps.hpp"

using namespace zmc;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

constexpr cplx I(0.0, 1.0);

GridSpec grid(double u0, double u1, int nu, double v0, double v1, int nv, double margin = 0.05) {
    GridSpec g;
    g.u_min = u0;
    g.u_max = u1;
    g.nu = nu;
    g.v_min = v0;
    g.v_max = v1;
    g.nv = nv;
    g.margin = margin;
    return g;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

GraphEquation equation_for(SurfaceKind k) {
    switch (k) {
        case SurfaceKind::maximal: return GraphEquation::maximal;
        case SurfaceKind::bi_soliton: return GraphEquation::bi_soliton;
        default: return GraphEquation::minimal;
    }
}

double dist(const Vec3& a, const Vec3& b) { return (a - b).cwiseAbs().maxCoeff(); }

// Collects sub-checks for one criterion; the first failures are reported.
class Criterion {
public:
    void check(bool ok, const std::string& what) {
        ++count_;
        if (!ok) failures_.push_back(what);
    }
    // Value below a bound, tracking the worst ratio for the summary.
    void below(double value, double bound, const std::string& what) {
        check(value < bound, what + " = " + fmt(value) + " (bound " + fmt(bound) + ")");
    }
    template <class E, class F>
    void throws(F&& f, const std::string& what) {
        bool ok = false;
        try {
            f();
        } catch (const E&) {
            ok = true;
        } catch (const std::exception& e) {
            failures_.push_back(what + ": wrong exception " + e.what());
            ++count_;
            return;
        }
        check(ok, what + ": nothing thrown");
    }
    bool pass() const { return failures_.empty(); }
    std::string summary() const {
        std::ostringstream s;
        s << count_ - failures_.size() << "/" << count_ << " checks";
        for (std::size_t k = 0; k < failures_.size() && k < 5; ++k) s << "\n    " << failures_[k];
        if (failures_.size() > 5) s << "\n    ... " << failures_.size() - 5 << " more";
        return s.str();
    }

private:
    std::size_t count_ = 0;
    std::vector<std::string> failures_;
};

std::mt19937_64 rng_for(unsigned long long seed) { return std::mt19937_64(seed); }

double uniform(std::mt19937_64& r, double a, double b) { return std::uniform_real_distribution<double>(a, b)(r); }

cplx in_disk(std::mt19937_64& r, double radius) {
    return std::polar(radius * std::sqrt(uniform(r, 0.0, 1.0)), uniform(r, 0.0, 2.0 * pi));
}

// ---------------------------------------------------------------------------

void scherk_decomposition(Criterion& c) {
    const auto g = grid(-1.0, 1.0, 41, -1.0, 1.0, 41);
    for (int n = 2; n <= 5; ++n) {
        const auto start = std::chrono::steady_clock::now();
        const auto inst = identity_terms("scherk2-decomp", n);
        const auto mult = verify_identity(inst, g, BranchPolicy::multiplicative);
        const double half = pi / (2.0 * n) - 1e-9;
        const auto prin = verify_identity(inst, grid(-half, half, 41, -half, half, 41), BranchPolicy::principal);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const std::string tag = "n=" + std::to_string(n);
        c.below(mult.max_abs_err, 1e-9, tag + " multiplicative");
        c.below(prin.max_abs_err, 1e-9, tag + " principal");
        c.below(secs, 1.0, tag + " seconds");
    }
}

void kamien_decomposition(Criterion& c) {
    for (int n : {2, 3}) {
        for (double beta : {pi / 6.0, pi / 3.0}) {
            IdentityParams p;
            p.beta = beta;
            const double sb = std::sin(beta);
            const auto r = verify_identity(identity_terms("kamien-decomp", n, p),
                                           grid(-1.0, 1.0, 31, 0.1 * n / sb, (pi - 0.1 * n) / sb, 31));
            c.check(r.policy == "mod-pi", "policy " + r.policy);
            c.below(r.max_abs_err, 1e-9, "n=" + std::to_string(n) + " beta=" + fmt(beta));
        }
    }
}

void helicoid_decomposition(Criterion& c) {
    const auto g = grid(0.1, 2.9, 41, -2.0, 2.0, 41, 0.02);
    for (int n : {2, 3}) {
        const auto r = verify_identity(identity_terms("helicoid-decomp", n), g);
        c.check(r.policy == "mod-pi", "policy " + r.policy);
        c.below(r.max_abs_err, 1e-9, "n=" + std::to_string(n));
    }
    auto rng = rng_for(0xacce0003);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double x = uniform(rng, 0.1, 2.9);
        const double y = uniform(rng, -2.0, 2.0);
        const double closed = std::atan(std::tanh(y) / std::tan(x));
        worst = std::max(worst, std::abs(er_series_partial(ERSeriesKind::arctan_bilateral, y, x, 10000) - closed));
    }
    c.below(worst, 1e-4, "bilateral series K=1e4, worst of 100 points");
}

void complex_decompositions(Criterion& c) {
    const auto probes = random_complex_probes(grid(-1.0, 1.0, 2, -1.0, 1.0, 2), 50, 0.5, 0xacce0004);
    for (const char* id : {"scherk2max-decomp", "scherkBI-decomp"}) {
        for (int n : {2, 3}) {
            const auto inst = identity_terms(id, n);
            const auto r = verify_identity_probes(inst, probes, 0.05);
            c.check(r.policy == "mod-2pi-i", "policy " + r.policy);
            c.check(r.points_checked == 50, std::string(id) + " probes checked " + std::to_string(r.points_checked));
            c.below(r.max_abs_err, 1e-9, std::string(id) + " n=" + std::to_string(n));
        }
    }
}

void graph_residuals(Criterion& c) {
    const auto sweep = [&](const HeightSurface& s, GraphEquation eq) {
        GridSpec g = s.default_grid;
        g.nu = g.nv = 41;
        return residual_sweep(s, eq, g);
    };
    const std::pair<const char*, GraphEquation> cases[] = {{"scherk2", GraphEquation::minimal},
                                                           {"scherk2max", GraphEquation::maximal},
                                                           {"scherkBI", GraphEquation::bi_soliton},
                                                           {"helicoid", GraphEquation::minimal}};
    for (const auto& [id, eq] : cases) c.below(sweep(builtin_surface(id), eq).max_abs_err, 1e-10, id);
    for (auto eq : {GraphEquation::minimal, GraphEquation::maximal, GraphEquation::bi_soliton}) {
        c.below(sweep(builtin_surface("plane"), eq).max_abs_err, 1e-10, "plane " + std::string(to_string(eq)));
    }
    const auto par = residual_sweep(builtin_surface("expr:x*x + y*y"), GraphEquation::minimal,
                                    grid(-1.0, 1.0, 41, -1.0, 1.0, 41));
    c.check(!par.pass && par.max_abs_err > 1.0, "paraboloid control " + fmt(par.max_abs_err));
}

void representations(Criterion& c) {
    const auto closed = [](cplx z) {
        return Vec3((z - z * z * z / 3.0).real(), (I * (z + z * z * z / 3.0)).real(), (z * z).real());
    };
    const WEData minimal;
    for (cplx z : {cplx(1.0), I, cplx(0.4, 0.3)}) c.below(dist(we_point(minimal, z), closed(z)), 1e-10, "Enneper");
    WEData maximal;
    maximal.mode = WEMode::maximal;
    c.below(dist(we_point(maximal, 1.0), Vec3(4.0 / 3.0, 0.0, -1.0)), 1e-10, "maximal Enneper at 1");

    const auto disk = grid(-0.56, 0.56, 21, -0.56, 0.56, 21);
    c.below(parametric_sweep(we_source(minimal), SignatureMetric::euclid(), disk).max_abs_err, 1e-6, "we minimal");
    c.below(parametric_sweep(we_source(maximal), SignatureMetric::l3(), disk).max_abs_err, 1e-6, "we maximal");
    c.below(parametric_sweep(tlms_source(TLMSData{}), SignatureMetric::l3x(), grid(0.0, 1.0, 21, 2.0, 3.0, 21))
                .max_abs_err,
            1e-6, "tlms");
    const BCData bc;
    c.below(parametric_sweep(bc_source(bc), SignatureMetric::l3p(), grid(0.1, 1.0, 21, 0.1, 1.0, 21)).max_abs_err,
            1e-6, "bc");
    c.below(dist(bc_point(bc, 1.0, 1.0), Vec3(2.0 / 3.0, 0.0, 1.0)), 1e-10, "bc at (1, 1)");
    c.below(dist(bc_point(bc, 1.0, 0.0), Vec3(1.0 / 3.0, -2.0 / 3.0, 0.5)), 1e-10, "bc at (1, 0)");
}

void splitting(Criterion& c) {
    auto rng = rng_for(0xacce0007);
    WEData d;
    d.mode = WEMode::reduced_R;
    for (const std::vector<double>& w : {std::vector<double>{0.5, 0.5}, std::vector<double>{2.0, -1.0},
                                         std::vector<double>{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}}) {
        const auto parts = split_weierstrass(d, w);
        double worst = 0.0;
        for (int k = 0; k < 50; ++k) {
            const cplx z = in_disk(rng, 1.2);
            double sum = 0.0;
            for (const auto& p : parts) sum += we_point(p, z)[2];
            worst = std::max(worst, std::abs(sum - we_point(d, z)[2]));
        }
        c.below(worst, 1e-10, "weights of size " + std::to_string(w.size()));
    }

    IdentityParams p;
    p.a = {2.0, -0.5, 1.5};
    p.b = {0.3, -0.1, 0.0};
    p.c = {3.0, 2.0, 6.0};
    p.d = {-0.2, 0.4, 0.1};
    for (const char* id : {"scherk2", "scherk2max", "scherkBI"}) {
        p.surface = id;
        const auto inst = identity_terms("general-scaled", 3, p);
        const auto base = builtin_surface(id);
        double worst = 0.0;
        for (int k = 0; k < 50; ++k) {
            const double x = uniform(rng, -1.0, 1.0), y = uniform(rng, -1.0, 1.0);
            worst = std::max(worst, std::abs(inst.rhs_sum(x, y) - inst.lhs_value(x, y)));
        }
        c.below(worst, 1e-12, std::string(id) + " general-scaled sum");
        for (std::size_t m = 0; m < p.a.size(); ++m) {
            const auto comp = scaled_component(base, p.a[m], p.b[m], p.c[m], p.d[m], homothety_alpha(p.a[m], p.c[m]));
            GridSpec g = comp.default_grid;
            g.nu = g.nv = 21;
            const auto r = residual_sweep(comp, equation_for(base.kind), g, JetMethod::exact, 1e-6);
            c.below(r.max_abs_err, 1e-6, std::string(id) + " component " + std::to_string(m));
        }
    }
}

void inversion(Criterion& c) {
    auto rng = rng_for(0xacce0008);
    const WEData d;
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const cplx target = in_disk(rng, 0.8);
        const Vec3 X = we_point(d, target);
        const cplx guess = target + std::polar(0.05, uniform(rng, 0.0, 2.0 * pi));
        worst = std::max(worst, std::abs(invert_parametrization(d, X[0], X[1], guess) - target));
    }
    c.below(worst, 1e-10, "round trip");

    WEData r;
    r.mode = WEMode::reduced_R;
    r.f = parse("exp(w/3) + 2", "w");
    constexpr double h = 1e-5;
    const auto eta = [&](cplx w) {
        const Vec3 X = we_point(r, w);
        return cplx(X[0], -X[1]);
    };
    worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const cplx z = in_disk(rng, 0.8);
        const cplx du = (eta(z + h) - eta(z - h)) / (2.0 * h);
        const cplx dv = (eta(z + I * h) - eta(z - I * h)) / (2.0 * h);
        worst = std::max(worst, std::abs(0.5 * (du - I * dv) - r.f(z)));
    }
    c.below(worst, 1e-8, "Wirtinger derivative");

    WEData lin;
    lin.mode = WEMode::reduced_R;
    lin.f = parse("w", "w");
    const Vec3 X0 = we_point(lin, 0.0);
    c.throws<JacobianSingular>([&] { invert_parametrization(lin, X0[0], X0[1], 0.0); }, "R = w at 0");
}

void foliation(Criterion& c) {
    auto rng = rng_for(0xacce0009);
    double worst = 0.0;
    for (std::int64_t k = -5; k <= 5; ++k) {
        const double xb = (2.0 * static_cast<double>(k) + 1.0) * pi;
        for (int n = 0; n < 200; ++n) {
            const double y = uniform(rng, -5.0, 5.0);
            worst = std::max(worst, std::abs(band_value(k, xb, y) - band_value(k + 1, xb, y)));
        }
    }
    c.below(worst, 1e-12, "band boundaries");

    worst = 0.0;
    for (int n = 0; n < 10000; ++n) {
        const double x = uniform(rng, -30.0, 30.0), y = uniform(rng, -5.0, 5.0), z = uniform(rng, -10.0, 10.0);
        const double t = leaf_of_point(x, y, z);
        worst = std::max(worst, std::abs(leaf_point(x, y, t)[2] - z) / (1.0 + std::abs(z)));
    }
    c.below(worst, 1e-12, "leaf round trip");

    for (std::int64_t k : {-1, 0, 1}) {
        const auto s = leaf_surface(k, 0.7);
        GridSpec g = s.default_grid;
        g.nu = g.nv = 41;
        c.below(residual_sweep(s, GraphEquation::minimal, g).max_abs_err, 1e-10, "leaf k=" + std::to_string(k));
    }

    for (std::int64_t k : {-2, 0, 3}) {
        const double x = 2.0 * pi * static_cast<double>(k);
        c.throws<ExcludedPoint>([&] { leaf_height(x, 0.0); }, "excluded x=" + std::to_string(2 * k) + "pi");
        c.throws<ExcludedPoint>([&] { leaf_of_point(x, 0.0, 1.0); }, "leaf through x=" + std::to_string(2 * k) + "pi");
    }
    const std::vector<double> ts{0.0};
    c.throws<DomainViolation>([&] { foliation_check(grid(0.0, 4.0 * pi, 3, -1.0, 1.0, 3), ts); },
                              "grid through excluded lines");
}

// ---------------------------------------------------------------------------

#ifndef ZMC_EXE
#define ZMC_EXE "zmc"
#endif

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::string without_timestamp(const std::string& text) {
    std::istringstream in(text);
    std::string line, out;
    while (std::getline(in, line)) {
        if (line.find("\"timestamp\"") == std::string::npos) out += line + "\n";
    }
    return out;
}

void cli_determinism(Criterion& c) {
    const fs::path root = fs::temp_directory_path() / "zmc-acceptance";
    fs::remove_all(root);
    for (const char* run : {"a", "b"}) {
        const fs::path dir = root / run;
        fs::create_directories(dir);
        const std::string d = dir.string() + "/";
        const std::vector<std::string> commands = {
            "we mesh --grid -1:1:17,-1:1:17 --obj " + d + "we.obj --csv " + d + "we.csv",
            "we mesh --invert --grid -0.5:0.5:9,-0.5:0.5:9 --obj " + d + "inv.obj",
            "tlms mesh --obj " + d + "tlms.obj --csv " + d + "tlms.csv --check --report " + d + "tlms.json",
            "bc mesh --obj " + d + "bc.obj --csv " + d + "bc.csv --check --report " + d + "bc.json",
            "foliate --t 0,1.5 --bands -1..1 --n 9 --out " + d + "leaves --check",
            "identity verify --identity scherk2-decomp --n 3 --grid -1:1:21,-1:1:21 --report " + d + "id.json",
        };
        for (const auto& cmd : commands) {
            const std::string line = std::string("\"") + ZMC_EXE + "\" " + cmd + " > " + d + "stdout.txt 2>&1";
            c.check(std::system(line.c_str()) == 0, std::string(run) + ": " + cmd);
        }
    }
    std::size_t compared = 0;
    for (const auto& e : fs::recursive_directory_iterator(root / "a")) {
        if (!e.is_regular_file()) continue;
        const fs::path rel = fs::relative(e.path(), root / "a");
        const fs::path other = root / "b" / rel;
        if (!fs::exists(other)) {
            c.check(false, "missing " + rel.string());
            continue;
        }
        std::string x = slurp(e.path()), y = slurp(other);
        if (rel.extension() == ".json") {
            c.check(x.find("\"timestamp\"") != std::string::npos, rel.string() + " has a timestamp");
            x = without_timestamp(x);
            y = without_timestamp(y);
        }
        c.check(!x.empty() && x == y, rel.string() + " differs");
        ++compared;
    }
    c.check(compared >= 20, "only " + std::to_string(compared) + " files compared");
    fs::remove_all(root);
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria = {
        {"scherk2 decomposition", scherk_decomposition},
        {"kamien decomposition", kamien_decomposition},
        {"helicoid decomposition and series", helicoid_decomposition},
        {"maximal and Born-Infeld decompositions", complex_decompositions},
        {"graph residuals", graph_residuals},
        {"representations", representations},
        {"splitting", splitting},
        {"inversion", inversion},
        {"foliation", foliation},
        {"CLI determinism", cli_determinism},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Criterion c;
        try {
            criteria[k].second(c);
        } catch (const std::exception& e) {
            c.check(false, std::string("uncaught: ") + e.what());
        }
        failed += !c.pass();
        std::cout << "criterion " << k + 1 << " (" << criteria[k].first << "): " << (c.pass() ? "PASS" : "FAIL")
                  << "  " << c.summary() << "\n";
    }
    std::cout << criteria.size() - static_cast<std::size_t>(failed) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
