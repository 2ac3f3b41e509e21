#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace ptmac {

inline constexpr int kMaxDim = 2;

using Point = std::array<double, kMaxDim>;

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
    double length() const { return hi - lo; }
};

/// Uniform periodic MAC grid in one or two dimensions.
///
/// Cells are numbered row-major, c = i + nx * j. Faces are partitioned by the
/// axis of their normal; the face with index f on axis a is the minus-side
/// face of cell f, so it separates K = (cell f shifted by -1 along a) from
/// L = cell f and its reference normal e^(a) points from K to L. Every face
/// is internal because the grid wraps around.
///
/// The dual cell D_sigma of a face spans from the center of K to the center
/// of L. Dual faces are indexed by the face they start from: the dual face
/// (a, b, f) separates D_f from D_{f shifted by +1 along b}.
class Mesh {
public:
    static Mesh uniform(std::span<const Interval> extents, std::span<const int> counts);

    int dim() const { return dim_; }
    int cell_count() const { return n_cells_; }
    int face_count(int axis) const { return n_cells_; }
    int count(int axis) const { return counts_[axis]; }
    const Interval& extent(int axis) const { return extents_[axis]; }
    double spacing(int axis) const { return spacing_[axis]; }
    double min_spacing() const;

    double cell_volume() const { return cell_volume_; }
    double face_area(int axis) const { return face_area_[axis]; }
    double dual_volume(int axis) const { return cell_volume_; }
    /// Area of the dual face (a, b, .): the full primal face area when b == a,
    /// otherwise the transverse segment from the K center to the L center.
    double dual_face_area(int axis, int dual_axis) const;
    double domain_volume() const;

    /// |dK| / |K| for cell c.
    double perimeter_ratio(int c) const;

    /// Cell index reached from c after `steps` cells along `axis` (periodic).
    int shift(int c, int axis, int steps) const { return shift_[axis][steps > 0 ? 1 : 0][c]; }

    int face_minus_cell(int axis, int f) const { return shift_[axis][0][f]; }
    int face_plus_cell(int, int f) const { return f; }
    int cell_minus_face(int, int c) const { return c; }
    int cell_plus_face(int axis, int c) const { return shift_[axis][1][c]; }

    std::array<int, kMaxDim> cell_ijk(int c) const;
    Point cell_center(int c) const;
    Point face_center(int axis, int f) const;

private:
    int dim_ = 1;
    int n_cells_ = 0;
    std::array<int, kMaxDim> counts_{1, 1};
    std::array<Interval, kMaxDim> extents_{};
    std::array<double, kMaxDim> spacing_{1.0, 1.0};
    std::array<double, kMaxDim> face_area_{1.0, 1.0};
    double cell_volume_ = 1.0;
    // shift_[axis][0] = -1 neighbour, shift_[axis][1] = +1 neighbour
    std::array<std::array<std::vector<int>, 2>, kMaxDim> shift_;
};

Mesh build_uniform_mesh(std::span<const Interval> extents, std::span<const int> counts);

} // namespace ptmac
