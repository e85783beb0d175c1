#include <cmath>
#include <numbers>
#include <string>

#include "zmc/catalog.hpp"
#include "zmc/errors.hpp"

namespace zmc {

namespace {

constexpr double kPi = std::numbers::pi;

bool near_multiple(double v, double period, double offset = 0.0) {
    const double r = (v - offset) / period;
    return std::abs(r - std::round(r)) * period < 1e-15 * (1.0 + std::abs(v));
}

double arctan_pairs(double a, double b, long K) {
    double s = std::atan(a / b);
    for (long p = 1; p <= K; ++p) {
        const double shift = static_cast<double>(p) * kPi;
        s += std::atan(a / (b + shift)) + std::atan(a / (b - shift));
    }
    return s;
}

}  // namespace

std::string_view to_string(ERSeriesKind k) {
    switch (k) {
        case ERSeriesKind::arctan_sum: return "arctan-sum";
        case ERSeriesKind::cos_product: return "cos-product";
        case ERSeriesKind::arctan_bilateral: return "arctan-bilateral";
    }
    return "arctan-sum";
}

ERSeriesKind parse_er_series_kind(std::string_view name) {
    for (auto k : {ERSeriesKind::arctan_sum, ERSeriesKind::cos_product, ERSeriesKind::arctan_bilateral}) {
        if (to_string(k) == name) return k;
    }
    throw std::invalid_argument("unknown series kind '" + std::string(name) + "'");
}

double er_series_partial(ERSeriesKind kind, double a, double b, long K) {
    if (K < 1) throw std::invalid_argument("series truncation K must be positive");
    switch (kind) {
        case ERSeriesKind::arctan_sum:
        case ERSeriesKind::arctan_bilateral: {
            if (near_multiple(b, kPi)) throw SingularArgument("b is a multiple of pi");
            if (kind == ERSeriesKind::arctan_sum) return arctan_pairs(a, b, K);
            // Bilateral sum over k = -K..K, grouped as (k, -k) so the
            // conditionally convergent tail cancels pairwise.
            double s = std::atan(a / b);
            for (long k = K; k >= 1; --k) {
                const double shift = static_cast<double>(k) * kPi;
                s += std::atan(a / (b + shift)) + std::atan(a / (b - shift));
            }
            return s;
        }
        case ERSeriesKind::cos_product: {
            if (near_multiple(a, kPi, kPi / 2.0)) throw SingularArgument("a is an odd multiple of pi/2");
            if (near_multiple(b, kPi, kPi / 2.0)) throw SingularArgument("b is an odd multiple of pi/2");
            const double A = a;
            const double X = b - a;
            double s = 0.0;
            for (long k = 1; k <= K; ++k) {
                const double h = (static_cast<double>(k) - 0.5) * kPi;
                s += std::log(std::abs((1.0 - X / (h - A)) * (1.0 + X / (h + A))));
            }
            return s;
        }
    }
    return 0.0;
}

}  // namespace zmc
