#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "zmc/catalog.hpp"
#include "zmc/errors.hpp"
#include "zmc/parallel.hpp"

namespace zmc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Real arguments take the real library functions; complex ones the
// principal complex branch.
cplx catan(cplx z) { return z.imag() == 0.0 ? cplx(std::atan(z.real()), 0.0) : std::atan(z); }

cplx cot(cplx z) { return std::cos(z) / std::sin(z); }

// tan^{-1}(tanh(Y) cot(X)).
cplx er_arctan(cplx X, cplx Y) { return catan(std::tanh(Y) * cot(X)); }

IdentityTerm term(std::string label, std::function<cplx(cplx, cplx)> eval,
                  std::function<double(cplx, cplx)> standoff) {
    return IdentityTerm{std::move(label), std::move(eval), std::move(standoff)};
}

std::string idx(const char* name, int m) { return std::string(name) + "[m=" + std::to_string(m) + "]"; }

void check_n(int n) {
    if (n < 1) throw ParamDomainError("n must be a positive integer");
}

// Scherk's second minimal surface: z = ln(cos y / cos x).
IdentityInstance scherk2_decomp(int n) {
    IdentityInstance inst;
    inst.id = "scherk2-decomp";
    inst.n = n;
    inst.branch_policy = BranchPolicy::multiplicative;
    const auto shifts = scherk_shifts(n);
    inst.record["c"] = shifts;
    const auto z = [](cplx x, cplx y) { return std::log(std::cos(y) / std::cos(x)); };
    const auto so = [](cplx x, cplx y) { return std::min(std::abs(std::cos(x)), std::abs(std::cos(y))); };
    inst.lhs = term("z(x,y)", z, so);
    const double nn = n;
    for (int m = 0; m < n; ++m) {
        const double c = shifts[static_cast<std::size_t>(m)];
        inst.rhs_terms.push_back(term(
            idx("z(x/n - c(m), y/n - c(m))", m), [=](cplx x, cplx y) { return z(x / nn - c, y / nn - c); },
            [=](cplx x, cplx y) { return so(x / nn - c, y / nn - c); }));
    }
    return inst;
}

// Scherk's second maximal surface, complex: z = ln(cosh y / cosh x).
IdentityInstance scherk2max_decomp(int n) {
    IdentityInstance inst;
    inst.id = "scherk2max-decomp";
    inst.n = n;
    inst.branch_policy = BranchPolicy::mod_2pi_i;
    const auto shifts = scherk_shifts(n);
    inst.record["c"] = shifts;
    const auto z = [](cplx x, cplx y) { return std::log(std::cosh(y) / std::cosh(x)); };
    const auto so = [](cplx x, cplx y) { return std::min(std::abs(std::cosh(x)), std::abs(std::cosh(y))); };
    inst.lhs = term("z(x,y)", z, so);
    const double nn = n;
    const cplx I(0.0, 1.0);
    for (int m = 0; m < n; ++m) {
        const cplx ic = I * shifts[static_cast<std::size_t>(m)];
        inst.rhs_terms.push_back(term(
            idx("z(x/n + i c(m), y/n + i c(m))", m), [=](cplx x, cplx y) { return z(x / nn + ic, y / nn + ic); },
            [=](cplx x, cplx y) { return so(x / nn + ic, y / nn + ic); }));
    }
    return inst;
}

// Complex Born-Infeld soliton: z = ln(cosh y / cos x).
IdentityInstance scherk_bi_decomp(int n) {
    IdentityInstance inst;
    inst.id = "scherkBI-decomp";
    inst.n = n;
    inst.branch_policy = BranchPolicy::mod_2pi_i;
    const auto shifts = scherk_shifts(n);
    inst.record["c"] = shifts;
    const auto z = [](cplx x, cplx y) { return std::log(std::cosh(y) / std::cos(x)); };
    const auto so = [](cplx x, cplx y) { return std::min(std::abs(std::cos(x)), std::abs(std::cosh(y))); };
    inst.lhs = term("z(x,y)", z, so);
    const double nn = n;
    const cplx I(0.0, 1.0);
    for (int m = 0; m < n; ++m) {
        const double c = shifts[static_cast<std::size_t>(m)];
        inst.rhs_terms.push_back(term(
            idx("z(x/n - c(m), y/n + i c(m))", m),
            [=](cplx x, cplx y) { return z(x / nn - c, y / nn + I * c); },
            [=](cplx x, cplx y) { return so(x / nn - c, y / nn + I * c); }));
    }
    return inst;
}

// h[x, y; alpha] = -sec(alpha/2) atan(tanh(x sin(alpha)/2) cot(y sin(alpha/2))).
cplx kamien_h(cplx x, cplx y, double alpha) {
    return -catan(std::tanh(0.5 * x * std::sin(alpha)) * cot(y * std::sin(alpha / 2.0))) / std::cos(alpha / 2.0);
}

IdentityInstance kamien_decomp(int n, const IdentityParams& p) {
    if (!p.beta) throw ParamDomainError("kamien-decomp requires parameter beta");
    const double beta = *p.beta;
    const double sb = std::sin(beta);
    if (std::cos(beta) == 0.0) throw ParamDomainError("kamien-decomp: cos(beta) must be nonzero");
    if (std::abs(sb) / n > 1.0) throw ParamDomainError("kamien-decomp: |sin(beta)| > n admits no beta_tilde");
    const double bt = n == 1 ? beta : std::asin(sb / n);
    if (std::sin(bt) == 0.0) throw ParamDomainError("kamien-decomp: sin(beta) must be nonzero");
    const double prefactor = n == 1 ? 1.0 : std::cos(bt) / std::cos(beta);

    IdentityInstance inst;
    inst.id = "kamien-decomp";
    inst.n = n;
    inst.branch_policy = BranchPolicy::mod_pi;
    inst.record["beta"] = beta;
    inst.record["beta_tilde"] = bt;
    inst.record["prefactor"] = prefactor;

    const double sec_b = 1.0 / std::cos(beta);
    const double sec_bt = 1.0 / std::cos(bt);
    const double csc_bt = 1.0 / std::sin(bt);
    inst.lhs = term(
        "h[x sec(beta), y; 2 beta]", [=](cplx x, cplx y) { return kamien_h(x * sec_b, y, 2.0 * beta); },
        [=](cplx, cplx y) { return std::abs(std::sin(y * std::sin(beta))); });
    for (int m = 0; m < n; ++m) {
        const double shift = static_cast<double>(m) / n * kPi * csc_bt;
        inst.rhs_terms.push_back(term(
            idx("(cos bt / cos b) h[x sec(bt), y + (m/n) pi csc(bt); 2 bt]", m),
            [=](cplx x, cplx y) { return prefactor * kamien_h(x * sec_bt, y + shift, 2.0 * bt); },
            [=](cplx, cplx y) { return std::abs(std::sin((y + shift) * std::sin(bt))); }));
    }
    return inst;
}

// atan(tanh y cot x) as the six term groups of the helicoid decomposition.
IdentityInstance helicoid_decomp(int n) {
    IdentityInstance inst;
    inst.id = "helicoid-decomp";
    inst.n = n;
    inst.branch_policy = BranchPolicy::mod_pi;
    const double nn = n;
    const auto sin_standoff = [](cplx X) { return std::abs(std::sin(X)); };
    inst.lhs = term("atan(tanh(y) cot(x))", er_arctan, [=](cplx x, cplx) { return sin_standoff(x); });

    auto& t = inst.rhs_terms;
    for (int m = 1; m < n; ++m) {
        const double mp = m * kPi;
        t.push_back(term(
            idx("+atan(tanh(y/n) cot((x + m pi)/n))", m),
            [=](cplx x, cplx y) { return er_arctan((x + mp) / nn, y / nn); },
            [=](cplx x, cplx) { return sin_standoff((x + mp) / nn); }));
        t.push_back(term(
            idx("-atan((y/n) / ((x + m pi)/n))", m),
            [=](cplx x, cplx y) { return -catan((y / nn) / ((x + mp) / nn)); },
            [=](cplx x, cplx) { return std::abs((x + mp) / nn); }));
    }
    t.push_back(term(
        "+atan(tanh(y/n) cot(x/n))", [=](cplx x, cplx y) { return er_arctan(x / nn, y / nn); },
        [=](cplx x, cplx) { return sin_standoff(x / nn); }));
    for (int m = 1; m < n; ++m) {
        const double mp = m * kPi;
        t.push_back(term(
            idx("-atan((y/n) / ((x + m pi)/n - pi))", m),
            [=](cplx x, cplx y) { return -catan((y / nn) / ((x + mp) / nn - kPi)); },
            [=](cplx x, cplx) { return std::abs((x + mp) / nn - kPi); }));
    }
    for (int m = 1; m < n; ++m) {
        const double mp = m * kPi;
        t.push_back(term(
            idx("+atan(y / (x + m pi))", m), [=](cplx x, cplx y) { return catan(y / (x + mp)); },
            [=](cplx x, cplx) { return std::abs(x + mp); }));
    }
    for (int m = 1; m < n; ++m) {
        const double mp = m * kPi;
        t.push_back(term(
            idx("+atan(y / (x - m pi))", m), [=](cplx x, cplx y) { return catan(y / (x - mp)); },
            [=](cplx x, cplx) { return std::abs(x - mp); }));
    }
    return inst;
}

IdentityInstance general_scaled(int n, const IdentityParams& p) {
    const auto sz = static_cast<std::size_t>(n);
    auto fill = [&](const std::vector<double>& v, double dflt, const char* name) {
        if (v.empty()) return std::vector<double>(sz, dflt);
        if (v.size() != sz) {
            throw ParamDomainError(std::string("general-scaled: list '") + name + "' must have n entries");
        }
        return v;
    };
    const auto a = fill(p.a, 1.0, "a");
    const auto b = fill(p.b, 0.0, "b");
    const auto c = fill(p.c, static_cast<double>(n), "c");
    const auto d = fill(p.d, 0.0, "d");
    double Cn = 0.0;
    for (std::size_t m = 0; m < sz; ++m) {
        if (a[m] == 0.0) throw ParamDomainError("general-scaled: every a_m must be nonzero");
        if (c[m] == 0.0) throw ParamDomainError("general-scaled: every c_m must be nonzero");
        Cn += 1.0 / c[m];
    }
    if (Cn == 0.0) throw ParamDomainError("general-scaled: C_n = sum 1/c_m must be nonzero");

    const HeightSurface Z = builtin_surface(p.surface);

    IdentityInstance inst;
    inst.id = "general-scaled";
    inst.n = n;
    inst.params = p;
    inst.branch_policy = BranchPolicy::principal;
    inst.record["surface"] = p.surface;
    inst.record["a"] = a;
    inst.record["b"] = b;
    inst.record["c"] = c;
    inst.record["d"] = d;
    inst.record["C_n"] = Cn;
    std::vector<double> alpha(sz);
    for (std::size_t m = 0; m < sz; ++m) alpha[m] = homothety_alpha(a[m], c[m]);
    inst.record["alpha"] = alpha;

    inst.lhs = term("Z(x,y)", Z.complex_eval, Z.standoff);
    for (std::size_t m = 0; m < sz; ++m) {
        const double am = a[m], bm = b[m], cm = c[m], dm = d[m];
        // Z_m(u, v) = (1/c_m) Z((u - b_m)/a_m, (v - d_m)/a_m), evaluated at
        // (u, v) = (a_m x + b_m, a_m y + d_m) and weighted by 1/C_n.
        inst.rhs_terms.push_back(term(
            idx("(1/C_n) Z_m(a_m x + b_m, a_m y + d_m)", static_cast<int>(m) + 1),
            [=, f = Z.complex_eval](cplx x, cplx y) {
                const cplx u = am * x + bm;
                const cplx v = am * y + dm;
                return (f((u - bm) / am, (v - dm) / am) / cm) / Cn;
            },
            [=, f = Z.standoff](cplx x, cplx y) {
                const cplx u = am * x + bm;
                const cplx v = am * y + dm;
                return f((u - bm) / am, (v - dm) / am);
            }));
    }
    return inst;
}

struct Sample {
    double err;
    cplx lhs;
    cplx rhs;
};

Sample sample(const IdentityInstance& inst, BranchPolicy policy, cplx x, cplx y) {
    const cplx l = inst.lhs_value(x, y);
    const cplx r = inst.rhs_sum(x, y);
    return {policy_error(policy, l, r), l, r};
}

void describe(const IdentityInstance& inst, VerificationReport& r) {
    r.subject = inst.id;
    r.parameters = inst.record;
    r.parameters["n"] = static_cast<std::int64_t>(inst.n);
    r.parameters["terms"] = static_cast<std::int64_t>(inst.rhs_terms.size());
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(BranchPolicy p) {
    switch (p) {
        case BranchPolicy::principal: return "principal";
        case BranchPolicy::mod_pi: return "mod-pi";
        case BranchPolicy::mod_2pi_i: return "mod-2pi-i";
        case BranchPolicy::multiplicative: return "multiplicative";
    }
    return "principal";
}

BranchPolicy parse_branch_policy(std::string_view name) {
    for (auto p : {BranchPolicy::principal, BranchPolicy::mod_pi, BranchPolicy::mod_2pi_i,
                   BranchPolicy::multiplicative}) {
        if (to_string(p) == name) return p;
    }
    throw std::invalid_argument("unknown branch policy '" + std::string(name) + "'");
}

double policy_error(BranchPolicy policy, cplx lhs, cplx rhs) {
    const cplx diff = lhs - rhs;
    switch (policy) {
        case BranchPolicy::principal: return std::abs(diff);
        case BranchPolicy::mod_pi: {
            const double re = diff.real() - kPi * std::round(diff.real() / kPi);
            return std::hypot(re, diff.imag());
        }
        case BranchPolicy::mod_2pi_i: {
            const double k = std::round(diff.imag() / (2.0 * kPi));
            return std::abs(diff - cplx(0.0, 2.0 * kPi * k));
        }
        case BranchPolicy::multiplicative: {
            const cplx el = std::exp(lhs);
            return std::abs(el - std::exp(rhs)) / (1.0 + std::abs(el));
        }
    }
    return std::abs(diff);
}

std::vector<double> scherk_shifts(int n) {
    check_n(n);
    std::vector<double> c(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) {
        c[static_cast<std::size_t>(m)] = static_cast<double>(2 * m - n + 1) * kPi / (2.0 * n);
    }
    return c;
}

cplx IdentityInstance::rhs_sum(cplx x, cplx y) const {
    cplx s(0.0, 0.0);
    for (const auto& t : rhs_terms) s += t.eval(x, y);
    return s;
}

double IdentityInstance::standoff(cplx x, cplx y) const {
    double s = lhs.standoff ? lhs.standoff(x, y) : kInf;
    for (const auto& t : rhs_terms) {
        if (t.standoff) s = std::min(s, t.standoff(x, y));
    }
    return s;
}

IdentityInstance identity_terms(std::string_view id, int n, const IdentityParams& params) {
    check_n(n);
    IdentityInstance inst;
    if (id == "scherk2-decomp") {
        inst = scherk2_decomp(n);
    } else if (id == "kamien-decomp") {
        inst = kamien_decomp(n, params);
    } else if (id == "helicoid-decomp") {
        inst = helicoid_decomp(n);
    } else if (id == "scherk2max-decomp") {
        inst = scherk2max_decomp(n);
    } else if (id == "scherkBI-decomp") {
        inst = scherk_bi_decomp(n);
    } else if (id == "general-scaled") {
        inst = general_scaled(n, params);
    } else {
        throw UnknownIdentity("unknown identity '" + std::string(id) + "'");
    }
    inst.params = params;
    return inst;
}

std::vector<std::string> identity_ids() {
    return {"scherk2-decomp", "kamien-decomp", "helicoid-decomp", "scherk2max-decomp", "scherkBI-decomp",
            "general-scaled"};
}

VerificationReport verify_identity(const IdentityInstance& inst, const GridSpec& grid,
                                   std::optional<BranchPolicy> policy, double tolerance) {
    if (grid.nu < 1 || grid.nv < 1) throw EmptyGrid("identity sweep: grid has no points");
    grid.validate();
    const BranchPolicy pol = policy.value_or(inst.branch_policy);

    std::vector<DomainViolation::Point> bad;
    for (int j = 0; j < grid.nv; ++j) {
        for (int i = 0; i < grid.nu; ++i) {
            const double x = grid.u(i);
            const double y = grid.v(j);
            if (!(inst.standoff(cplx(x, 0.0), cplx(y, 0.0)) > grid.margin)) bad.emplace_back(x, y);
        }
    }
    if (!bad.empty()) {
        throw DomainViolation("identity '" + inst.id + "': grid points within margin of a singular set",
                              std::move(bad));
    }

    std::vector<ErrorAccumulator> rows(static_cast<std::size_t>(grid.nv));
    parallel_rows(grid.nv, [&](int j) {
        auto& acc = rows[static_cast<std::size_t>(j)];
        const double y = grid.v(j);
        for (int i = 0; i < grid.nu; ++i) {
            const double x = grid.u(i);
            const Sample s = sample(inst, pol, cplx(x, 0.0), cplx(y, 0.0));
            acc.add(s.err, {x, y}, s.lhs, s.rhs);
        }
    });
    ErrorAccumulator total;
    for (const auto& r : rows) total.merge(r);

    VerificationReport report;
    describe(inst, report);
    report.grid = grid;
    report.policy = std::string(to_string(pol));
    report.tolerance = tolerance;
    total.fill(report);
    report.finalize();
    return report;
}

std::vector<ComplexProbe> random_complex_probes(const GridSpec& ranges, int count, double imag_max,
                                                unsigned long long seed) {
    std::mt19937_64 rng(seed);
    // Map raw 53-bit draws to [0,1) directly so the sequence does not depend
    // on the standard library's distribution implementation.
    const auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    const auto in = [&](double lo, double hi) { return lo + (hi - lo) * unit(); };
    std::vector<ComplexProbe> out;
    out.reserve(static_cast<std::size_t>(std::max(count, 0)));
    for (int k = 0; k < count; ++k) {
        const double xr = in(ranges.u_min, ranges.u_max);
        const double xi = in(-imag_max, imag_max);
        const double yr = in(ranges.v_min, ranges.v_max);
        const double yi = in(-imag_max, imag_max);
        out.push_back({cplx(xr, xi), cplx(yr, yi)});
    }
    return out;
}

VerificationReport verify_identity_probes(const IdentityInstance& inst, std::span<const ComplexProbe> probes,
                                          double margin, std::optional<BranchPolicy> policy, double tolerance) {
    if (probes.empty()) throw EmptyGrid("identity sweep: no probes");
    const BranchPolicy pol = policy.value_or(inst.branch_policy);
    std::vector<DomainViolation::Point> bad;
    for (const auto& p : probes) {
        if (!(inst.standoff(p.x, p.y) > margin)) bad.emplace_back(p.x.real(), p.y.real());
    }
    if (!bad.empty()) {
        throw DomainViolation("identity '" + inst.id + "': probes within margin of a singular set", std::move(bad));
    }
    ErrorAccumulator acc;
    for (const auto& p : probes) {
        const Sample s = sample(inst, pol, p.x, p.y);
        acc.add(s.err, {p.x.real(), p.x.imag(), p.y.real(), p.y.imag()}, s.lhs, s.rhs);
    }
    VerificationReport report;
    describe(inst, report);
    report.parameters["probes"] = static_cast<std::int64_t>(probes.size());
    report.parameters["margin"] = margin;
    report.policy = std::string(to_string(pol));
    report.tolerance = tolerance;
    acc.fill(report);
    report.finalize();
    return report;
}

}  // namespace zmc
