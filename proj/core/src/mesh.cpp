#include "ptmac/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ptmac/errors.hpp"

namespace ptmac {

Mesh Mesh::uniform(std::span<const Interval> extents, std::span<const int> counts) {
    if (extents.size() != counts.size() || extents.empty() || extents.size() > kMaxDim) {
        throw ConfigError("mesh: extents and counts must both have 1 or 2 entries");
    }
    Mesh m;
    m.dim_ = static_cast<int>(extents.size());
    m.n_cells_ = 1;
    for (int a = 0; a < m.dim_; ++a) {
        if (counts[a] <= 0) {
            throw ConfigError("mesh: cell count along axis " + std::to_string(a) +
                              " must be positive, got " + std::to_string(counts[a]));
        }
        const double len = extents[a].length();
        if (!(len > 0.0) || !std::isfinite(len)) {
            throw ConfigError("mesh: degenerate extent along axis " + std::to_string(a));
        }
        m.counts_[a] = counts[a];
        m.extents_[a] = extents[a];
        m.spacing_[a] = len / counts[a];
        m.n_cells_ *= counts[a];
    }

    m.cell_volume_ = 1.0;
    for (int a = 0; a < m.dim_; ++a) m.cell_volume_ *= m.spacing_[a];
    for (int a = 0; a < m.dim_; ++a) m.face_area_[a] = m.cell_volume_ / m.spacing_[a];

    const int nx = m.counts_[0];
    for (int a = 0; a < m.dim_; ++a) {
        auto& minus = m.shift_[a][0];
        auto& plus = m.shift_[a][1];
        minus.resize(m.n_cells_);
        plus.resize(m.n_cells_);
        for (int c = 0; c < m.n_cells_; ++c) {
            auto ij = m.cell_ijk(c);
            const int n = m.counts_[a];
            auto lo = ij;
            auto hi = ij;
            lo[a] = (ij[a] + n - 1) % n;
            hi[a] = (ij[a] + 1) % n;
            minus[c] = lo[0] + nx * lo[1];
            plus[c] = hi[0] + nx * hi[1];
        }
    }
    return m;
}

Mesh build_uniform_mesh(std::span<const Interval> extents, std::span<const int> counts) {
    return Mesh::uniform(extents, counts);
}

double Mesh::min_spacing() const {
    double h = spacing_[0];
    for (int a = 1; a < dim_; ++a) h = std::min(h, spacing_[a]);
    return h;
}

double Mesh::dual_face_area(int axis, int dual_axis) const {
    if (axis == dual_axis) return face_area_[axis];
    // transverse dual face: spans h_axis along `axis`, and every remaining
    // direction other than dual_axis
    double area = 1.0;
    for (int a = 0; a < dim_; ++a) {
        if (a != dual_axis) area *= spacing_[a];
    }
    return area;
}

double Mesh::domain_volume() const {
    double v = 1.0;
    for (int a = 0; a < dim_; ++a) v *= extents_[a].length();
    return v;
}

double Mesh::perimeter_ratio(int) const {
    double perimeter = 0.0;
    for (int a = 0; a < dim_; ++a) perimeter += 2.0 * face_area_[a];
    return perimeter / cell_volume_;
}

std::array<int, kMaxDim> Mesh::cell_ijk(int c) const {
    const int nx = counts_[0];
    return {c % nx, c / nx};
}

Point Mesh::cell_center(int c) const {
    auto ij = cell_ijk(c);
    Point p{0.0, 0.0};
    for (int a = 0; a < dim_; ++a) p[a] = extents_[a].lo + (ij[a] + 0.5) * spacing_[a];
    return p;
}

Point Mesh::face_center(int axis, int f) const {
    Point p = cell_center(f);
    p[axis] -= 0.5 * spacing_[axis];
    return p;
}

} // namespace ptmac
