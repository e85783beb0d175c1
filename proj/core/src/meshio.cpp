#include "zmc/meshio.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "zmc/errors.hpp"
#include "zmc/foliation.hpp"
#include "zmc/parallel.hpp"

namespace zmc {

namespace {

bool finite(const Vec3& p) { return std::isfinite(p[0]) && std::isfinite(p[1]) && std::isfinite(p[2]); }

SurfacePatch blank(const GridSpec& grid) {
    if (grid.nu < 1 || grid.nv < 1) throw EmptyGrid("patch: grid has no points");
    grid.validate();
    SurfacePatch p;
    p.nu = grid.nu;
    p.nv = grid.nv;
    p.points.assign(static_cast<std::size_t>(grid.size()), Vec3::Zero());
    p.valid.assign(static_cast<std::size_t>(grid.size()), 0);
    return p;
}

SurfacePatch checked(SurfacePatch p) {
    if (p.valid_count() == 0) throw EmptyGrid("patch: no lattice point could be evaluated");
    return p;
}

// Fill the lattice row by row; `eval` returns false for an invalid point.
template <typename Eval>
SurfacePatch fill(const GridSpec& grid, Eval&& eval) {
    SurfacePatch p = blank(grid);
    parallel_rows(grid.nv, [&](int j) {
        for (int i = 0; i < grid.nu; ++i) {
            Vec3 x;
            bool ok = false;
            try {
                ok = eval(grid.u(i), grid.v(j), x) && finite(x);
            } catch (const Error&) {
                ok = false;
            }
            const std::size_t k = p.index(i, j);
            if (ok) {
                p.points[k] = x;
                p.valid[k] = 1;
            }
        }
    });
    return checked(std::move(p));
}

void append(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

}  // namespace

std::size_t SurfacePatch::valid_count() const {
    std::size_t n = 0;
    for (auto v : valid) n += v ? 1 : 0;
    return n;
}

std::size_t SurfacePatch::face_count() const {
    std::size_t n = 0;
    for (int j = 0; j + 1 < nv; ++j) {
        for (int i = 0; i + 1 < nu; ++i) {
            n += valid[index(i, j)] && valid[index(i + 1, j)] && valid[index(i + 1, j + 1)] &&
                 valid[index(i, j + 1)];
        }
    }
    return n;
}

SurfacePatch sample_patch(const HeightSurface& surface, const GridSpec& grid) {
    return fill(grid, [&](double x, double y, Vec3& out) {
        if (!surface.in_domain(x, y, grid.margin)) return false;
        out = Vec3(x, y, surface.real_eval(x, y));
        return true;
    });
}

SurfacePatch sample_patch(const ParametricSampler& sampler, const GridSpec& grid) {
    return fill(grid, [&](double u, double v, Vec3& out) {
        out = sampler(u, v);
        return true;
    });
}

SurfacePatch sample_leaf(double t, const GridSpec& grid) {
    return fill(grid, [&](double x, double y, Vec3& out) {
        out = leaf_point(x, y, t);
        return true;
    });
}

SurfacePatch sample_inverted(const WEData& data, const GridSpec& grid, cplx seed, const NewtonOptions& opt) {
    SurfacePatch p = blank(grid);
    std::vector<cplx> zeta(p.points.size());

    const auto solve = [&](int i, int j, cplx guess) {
        const double x = grid.u(i);
        const double y = grid.v(j);
        try {
            const cplx z = invert_parametrization(data, x, y, guess, opt);
            const Vec3 X = we_point(data, z);
            if (!finite(X)) return false;
            const std::size_t k = p.index(i, j);
            p.points[k] = Vec3(x, y, X[2]);
            p.valid[k] = 1;
            zeta[k] = z;
            return true;
        } catch (const Error&) {
            return false;
        }
    };

    // Seed column walked upward, then rows in parallel.
    cplx guess = seed;
    for (int j = 0; j < grid.nv; ++j) {
        if (solve(0, j, guess)) guess = zeta[p.index(0, j)];
    }
    parallel_rows(grid.nv, [&](int j) {
        cplx g = p.valid[p.index(0, j)] ? zeta[p.index(0, j)] : seed;
        for (int i = 1; i < grid.nu; ++i) {
            if (solve(i, j, g)) g = zeta[p.index(i, j)];
        }
    });
    return checked(std::move(p));
}

std::string obj_text(const SurfacePatch& patch) {
    if (patch.points.empty()) throw EmptyGrid("cannot export an empty patch");
    std::string out;
    std::vector<std::size_t> vertex(patch.points.size(), 0);
    std::size_t next = 1;
    for (std::size_t k = 0; k < patch.points.size(); ++k) {
        if (!patch.valid[k]) continue;
        vertex[k] = next++;
        out += "v ";
        append(out, patch.points[k][0]);
        out += ' ';
        append(out, patch.points[k][1]);
        out += ' ';
        append(out, patch.points[k][2]);
        out += '\n';
    }
    for (int j = 0; j + 1 < patch.nv; ++j) {
        for (int i = 0; i + 1 < patch.nu; ++i) {
            const std::size_t c[4] = {patch.index(i, j), patch.index(i + 1, j), patch.index(i + 1, j + 1),
                                      patch.index(i, j + 1)};
            if (!(patch.valid[c[0]] && patch.valid[c[1]] && patch.valid[c[2]] && patch.valid[c[3]])) continue;
            out += "f";
            for (auto k : c) out += ' ' + std::to_string(vertex[k]);
            out += '\n';
        }
    }
    return out;
}

std::string csv_text(const SurfacePatch& patch) {
    std::string out = "u_index,v_index,x,y,z,valid\n";
    for (int j = 0; j < patch.nv; ++j) {
        for (int i = 0; i < patch.nu; ++i) {
            const std::size_t k = patch.index(i, j);
            out += std::to_string(i) + ',' + std::to_string(j);
            for (int c = 0; c < 3; ++c) {
                out += ',';
                append(out, patch.points[k][c]);
            }
            out += patch.valid[k] ? ",1\n" : ",0\n";
        }
    }
    return out;
}

void write_text_atomic(const std::string& text, const std::string& path) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open '" + tmp.string() + "' for writing");
        f.write(text.data(), static_cast<std::streamsize>(text.size()));
        f.flush();
        if (!f) throw IoError("write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move output into place at '" + path + "'");
    }
}

void write_obj(const SurfacePatch& patch, const std::string& path) { write_text_atomic(obj_text(patch), path); }

void write_csv(const SurfacePatch& patch, const std::string& path) { write_text_atomic(csv_text(patch), path); }

SurfacePatch read_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(f, line) || line != "u_index,v_index,x,y,z,valid") throw IoError("bad CSV header in " + path);
    struct Row {
        int i, j;
        Vec3 p;
        bool valid;
    };
    std::vector<Row> rows;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::istringstream s(line);
        std::string cell[6];
        for (auto& c : cell) {
            if (!std::getline(s, c, ',')) throw IoError("short CSV row in " + path);
        }
        rows.push_back({std::stoi(cell[0]), std::stoi(cell[1]),
                        Vec3(std::strtod(cell[2].c_str(), nullptr), std::strtod(cell[3].c_str(), nullptr),
                             std::strtod(cell[4].c_str(), nullptr)),
                        cell[5] == "1"});
    }
    SurfacePatch p;
    for (const auto& r : rows) {
        p.nu = std::max(p.nu, r.i + 1);
        p.nv = std::max(p.nv, r.j + 1);
    }
    p.points.assign(static_cast<std::size_t>(p.nu) * p.nv, Vec3::Zero());
    p.valid.assign(p.points.size(), 0);
    for (const auto& r : rows) {
        p.points[p.index(r.i, r.j)] = r.p;
        p.valid[p.index(r.i, r.j)] = r.valid;
    }
    return p;
}

}  // namespace zmc
