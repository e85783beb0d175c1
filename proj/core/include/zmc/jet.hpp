#pragma once

#include <complex>

namespace zmc {

/// Value and derivatives of a height function z = Z(x, y) up to second order.
/// T is double for real graphs and std::complex<double> for complexified ones.
template <typename T>
struct BasicGraphJet {
    T z{};
    T z_x{};
    T z_y{};
    T z_xx{};
    T z_xy{};
    T z_yy{};
};

using GraphJet = BasicGraphJet<double>;
using ComplexGraphJet = BasicGraphJet<std::complex<double>>;

}  // namespace zmc
