#pragma once

// Structured surface patches and their OBJ / CSV export.

#include <cstdint>
#include <string>
#include <vector>

#include "zmc/catalog.hpp"
#include "zmc/grid.hpp"
#include "zmc/pde.hpp"
#include "zmc/reps.hpp"

namespace zmc {

/// nu x nv lattice of points, row-major (index j * nu + i), with a validity
/// mask. Invalid points hold (0, 0, 0).
struct SurfacePatch {
    int nu = 0;
    int nv = 0;
    std::vector<Vec3> points;
    std::vector<std::uint8_t> valid;

    std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nu + i; }
    std::size_t valid_count() const;
    std::size_t face_count() const;
};

/// Height samples (x, y, Z(x, y)); points outside the domain (with the grid's
/// margin) or failing to evaluate are invalid. Throws EmptyGrid when no
/// point is valid.
SurfacePatch sample_patch(const HeightSurface& surface, const GridSpec& grid);

/// Samples of a parametrization over the (u, v) lattice; evaluation errors
/// and non-finite values mark points invalid.
SurfacePatch sample_patch(const ParametricSampler& sampler, const GridSpec& grid);

/// The leaf t of the helicoid foliation; excluded points are invalid.
SurfacePatch sample_leaf(double t, const GridSpec& grid);

/// Height of a W-E surface over an (x, y) lattice by Newton inversion with
/// continuation: column 0 is walked upward from `seed`, then each row
/// continues rightward from its left neighbour. Failed inversions are
/// invalid.
SurfacePatch sample_inverted(const WEData& data, const GridSpec& grid, cplx seed, const NewtonOptions& opt = {});

std::string obj_text(const SurfacePatch& patch);
std::string csv_text(const SurfacePatch& patch);

/// Atomic writes (temporary file, then rename). Throw IoError.
void write_obj(const SurfacePatch& patch, const std::string& path);
void write_csv(const SurfacePatch& patch, const std::string& path);
void write_text_atomic(const std::string& text, const std::string& path);

/// Parse a CSV written by write_csv.
SurfacePatch read_csv(const std::string& path);

}  // namespace zmc
