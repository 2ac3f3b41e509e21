#pragma once

#include <random>

#include "ptmac/fields.hpp"
#include "ptmac/mesh.hpp"

namespace ptmac::testing {

inline CellField random_cells(const Mesh& m, std::mt19937& rng, double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    CellField f(m.cell_count());
    for (int k = 0; k < m.cell_count(); ++k) f[k] = d(rng);
    return f;
}

inline FaceField random_faces(const Mesh& m, std::mt19937& rng, double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    FaceField u(m);
    for (int a = 0; a < m.dim(); ++a)
        for (int f = 0; f < m.face_count(a); ++f) u(a, f) = d(rng);
    return u;
}

inline Mesh mesh_1d(int n, double lo = 0.0, double hi = 1.0) {
    const Interval e[] = {{lo, hi}};
    const int c[] = {n};
    return Mesh::uniform(e, c);
}

inline Mesh mesh_2d(int nx, int ny, Interval ex = {0.0, 1.0}, Interval ey = {0.0, 1.0}) {
    const Interval e[] = {ex, ey};
    const int c[] = {nx, ny};
    return Mesh::uniform(e, c);
}

} // namespace ptmac::testing
