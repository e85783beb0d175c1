#pragma once

#include <string>
#include <string_view>

namespace zmc {

/// Uniform nu x nv lattice over [u_min, u_max] x [v_min, v_max]. Lattice point
/// (i, j) is (u(i), v(j)) and is stored row-major at index j * nu + i.
struct GridSpec {
    double u_min = 0.0;
    double u_max = 1.0;
    int nu = 2;
    double v_min = 0.0;
    double v_max = 1.0;
    int nv = 2;
    double margin = 0.05;  ///< singularity standoff

    double u(int i) const;
    double v(int j) const;
    int size() const { return nu * nv; }

    /// Throws std::invalid_argument when an invariant is broken.
    void validate() const;
};

/// Parse `umin:umax:nu,vmin:vmax:nv[,margin]`.
GridSpec parse_grid_spec(std::string_view text);
std::string format_grid_spec(const GridSpec& g);

}  // namespace zmc
