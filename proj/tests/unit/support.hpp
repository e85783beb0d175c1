#pragma once

// Seeded generators and small helpers shared by the unit tests.

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "zmc/expr.hpp"
#include "zmc/grid.hpp"

namespace zmc::test {

using cplx = std::complex<double>;

/// Uniform doubles from raw 64-bit draws, so sequences are identical across
/// standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    int below(int n) { return static_cast<int>(gen_() % static_cast<std::uint64_t>(n)); }
    cplx in_box(double re_lo, double re_hi, double im_lo, double im_hi) {
        const double re = uniform(re_lo, re_hi);
        return {re, uniform(im_lo, im_hi)};
    }
    cplx in_disk(cplx centre, double radius) {
        const double r = radius * std::sqrt(unit());
        const double t = 2.0 * 3.141592653589793 * unit();
        return centre + std::polar(r, t);
    }

private:
    std::mt19937_64 gen_;
};

/// Random expression tree in one variable (slot 0). Constants are the kind
/// the parser produces: non-negative reals and the unit i.
inline NodePtr random_tree(Rng& rng, int depth) {
    if (depth <= 0 || rng.below(4) == 0) {
        switch (rng.below(3)) {
            case 0: return node::variable(0);
            case 1: return node::constant(cplx(0.0, 1.0));
            default: return node::constant(cplx(rng.uniform(0.0, 3.0), 0.0));
        }
    }
    switch (rng.below(3)) {
        case 0: {
            static constexpr UnaryOp ops[] = {UnaryOp::neg,  UnaryOp::exp,  UnaryOp::log,  UnaryOp::sin,
                                              UnaryOp::cos,  UnaryOp::tan,  UnaryOp::atan, UnaryOp::sinh,
                                              UnaryOp::cosh, UnaryOp::tanh, UnaryOp::sqrt};
            const UnaryOp op = ops[rng.below(11)];
            return node::unary(op, random_tree(rng, depth - 1));
        }
        case 1: {
            static constexpr BinaryOp ops[] = {BinaryOp::add, BinaryOp::sub, BinaryOp::mul, BinaryOp::div};
            const BinaryOp op = ops[rng.below(4)];
            NodePtr a = random_tree(rng, depth - 1);
            return node::binary(op, a, random_tree(rng, depth - 1));
        }
        default: {
            NodePtr base = random_tree(rng, depth - 1);
            return node::power(base, rng.below(7) - 3);
        }
    }
}

inline GridSpec make_grid(double u0, double u1, int nu, double v0, double v1, int nv, double margin = 0.05) {
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

}  // namespace zmc::test
