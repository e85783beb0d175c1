#pragma once

// Closed-form zero-mean-curvature graphs and the finite decomposition
// identities between them, as executable term lists.

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zmc/grid.hpp"
#include "zmc/jet.hpp"
#include "zmc/report.hpp"

namespace zmc {

using cplx = std::complex<double>;

enum class SurfaceKind { minimal, maximal, bi_soliton, timelike, generic };

std::string_view to_string(SurfaceKind k);

using SurfaceParams = std::map<std::string, double>;

/// A named graph surface z = Z(x, y).
///
/// `standoff` measures how far a (possibly complex) point sits from the
/// singular set of the formula, e.g. |cos x| for ln(cos y / cos x); the point
/// is admissible when standoff > margin and `real_ok` holds.
struct HeightSurface {
    std::string id;
    SurfaceKind kind = SurfaceKind::generic;
    std::function<double(double, double)> real_eval;
    std::function<cplx(cplx, cplx)> complex_eval;
    std::function<double(cplx, cplx)> standoff;
    std::function<bool(double, double)> real_ok;
    std::function<GraphJet(double, double)> exact_jet;
    std::function<ComplexGraphJet(cplx, cplx)> exact_jet_complex;
    GridSpec default_grid;

    double operator()(double x, double y) const { return real_eval(x, y); }
    cplx operator()(cplx x, cplx y) const { return complex_eval(x, y); }

    bool in_domain(double x, double y, double margin) const;
};

/// Registry ids: scherk2, scherk1 (param alpha), helicoid, er-arctan,
/// scherk2max, scherkBI, plane (params a, b), and "expr:<text>" for a
/// user-defined Z(x, y).
HeightSurface builtin_surface(std::string_view id, const SurfaceParams& params = {});
std::vector<std::string> builtin_surface_ids();

/// z = alpha * (1/c) * Z((x - b)/a, (y - d)/a), the rescaled component of a
/// general-scaled decomposition. Exact jets follow by the chain rule.
HeightSurface scaled_component(const HeightSurface& base, double a, double b, double c, double d, double alpha);

/// The factor alpha_m for which alpha_m * Z_m is again a ZMC graph of the
/// same kind: the homothety ratio a_m * c_m.
double homothety_alpha(double a, double c);

// ---------------------------------------------------------------------------
// Identities

enum class BranchPolicy { principal, mod_pi, mod_2pi_i, multiplicative };

std::string_view to_string(BranchPolicy p);
BranchPolicy parse_branch_policy(std::string_view name);

/// Discrepancy between two sides of an identity under a branch policy.
double policy_error(BranchPolicy policy, cplx lhs, cplx rhs);

struct IdentityTerm {
    std::string label;
    std::function<cplx(cplx, cplx)> eval;
    std::function<double(cplx, cplx)> standoff;
};

struct IdentityParams {
    std::optional<double> beta;  ///< kamien-decomp
    std::vector<double> a, b, c, d;  ///< general-scaled
    std::string surface = "scherk2";  ///< general-scaled base surface
};

struct IdentityInstance {
    std::string id;
    int n = 1;
    IdentityParams params;
    std::map<std::string, ParamValue> record;  ///< derived values (c(m), beta_tilde, C_n, ...)
    IdentityTerm lhs;
    std::vector<IdentityTerm> rhs_terms;
    BranchPolicy branch_policy = BranchPolicy::principal;

    cplx lhs_value(cplx x, cplx y) const { return lhs.eval(x, y); }
    cplx rhs_sum(cplx x, cplx y) const;
    /// Smallest standoff over the left side and every right-side term.
    double standoff(cplx x, cplx y) const;
};

/// c(m) = (2m - n + 1) pi / (2n), m = 0..n-1.
std::vector<double> scherk_shifts(int n);

/// Identity ids: scherk2-decomp, kamien-decomp, helicoid-decomp,
/// scherk2max-decomp, scherkBI-decomp, general-scaled.
IdentityInstance identity_terms(std::string_view id, int n, const IdentityParams& params = {});
std::vector<std::string> identity_ids();

/// Sweep a real lattice. Throws EmptyGrid for an empty lattice and
/// DomainViolation listing every point whose standoff is <= grid.margin.
VerificationReport verify_identity(const IdentityInstance& inst, const GridSpec& grid,
                                   std::optional<BranchPolicy> policy = std::nullopt,
                                   double tolerance = 1e-9);

struct ComplexProbe {
    cplx x;
    cplx y;
};

/// Deterministic random complex probes: real parts uniform on the grid's
/// ranges, imaginary parts uniform on (-imag_max, imag_max).
std::vector<ComplexProbe> random_complex_probes(const GridSpec& ranges, int count, double imag_max,
                                                unsigned long long seed);

/// Sweep explicit complex probes with the same admissibility rule.
VerificationReport verify_identity_probes(const IdentityInstance& inst, std::span<const ComplexProbe> probes,
                                          double margin, std::optional<BranchPolicy> policy = std::nullopt,
                                          double tolerance = 1e-9);

// ---------------------------------------------------------------------------
// Truncated Euler-Ramanujan series

enum class ERSeriesKind {
    arctan_sum,        ///< atan(a/b) + sum_{p=1..K} [atan(a/(b+p pi)) + atan(a/(b-p pi))]
    cos_product,       ///< sum_{k=1..K} ln|(1 - X/((k-1/2)pi - A))(1 + X/((k-1/2)pi + A))|, A = a, X = b - a
    arctan_bilateral,  ///< sum_{k=-K..K} atan(a/(b + k pi)), accumulated in +/-k pairs
};

std::string_view to_string(ERSeriesKind k);
ERSeriesKind parse_er_series_kind(std::string_view name);

/// Partial sum of an Euler-Ramanujan series. The arctan kinds approximate
/// atan(tanh(a) cot(b)); cos_product approximates ln|cos(b) / cos(a)|.
/// Throws SingularArgument when a denominator vanishes.
double er_series_partial(ERSeriesKind kind, double a, double b, long K);

}  // namespace zmc
