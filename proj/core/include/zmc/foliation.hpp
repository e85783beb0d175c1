#pragma once

// The piecewise helicoid leaf function F and its foliation of space minus
// the lines (2 pi k, 0, z).

#include <cstdint>
#include <span>

#include "zmc/catalog.hpp"
#include "zmc/grid.hpp"
#include "zmc/pde.hpp"
#include "zmc/report.hpp"

namespace zmc {

/// Band index k = round(x / 2 pi); band k covers [(2k-1) pi, (2k+1) pi].
std::int64_t band_of(double x);

/// (-1)^k atan(y / (x - 2 k pi)), the formula of band k, without the
/// excluded-point check.
double band_value(std::int64_t k, double x, double y);

/// F(x, y). Throws ExcludedPoint when y == 0 and |x - 2 k pi| < 1e-12.
double leaf_height(double x, double y);

/// The leaf through (x, y, z): t = z - F(x, y).
double leaf_of_point(double x, double y, double z);

/// (x, y, F(x, y) + t).
Vec3 leaf_point(double x, double y, double t);

/// Band k of the leaf t as a graph surface (a helicoid), with exact jets.
/// Its domain is the open band minus a margin around x = 2 k pi.
HeightSurface leaf_surface(std::int64_t k, double t = 0.0);

/// Continuity at band boundaries inside the grid's x-range (pairs at
/// x_b +/- 1e-7 for every grid y), leaf round trips for every t sample at
/// grid points and at seeded random points, and single-valuedness. The
/// headline error is the boundary jump (tolerance 1e-6); the round trip is a
/// sub-check at 1e-12. Throws EmptyGrid, and DomainViolation when a grid
/// point lies within 1e-6 of an excluded point.
VerificationReport foliation_check(const GridSpec& grid, std::span<const double> t_samples,
                                   std::uint64_t seed = 1, int random_points = 1000);

}  // namespace zmc
