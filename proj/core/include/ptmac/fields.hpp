#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "ptmac/mesh.hpp"

namespace ptmac {

/// Piecewise-constant scalar on primal cells.
class CellField {
public:
    CellField() = default;
    explicit CellField(int n, double value = 0.0) : values_(static_cast<std::size_t>(n), value) {}
    explicit CellField(std::vector<double> values) : values_(std::move(values)) {}

    int size() const { return static_cast<int>(values_.size()); }
    double& operator[](int k) { return values_[static_cast<std::size_t>(k)]; }
    double operator[](int k) const { return values_[static_cast<std::size_t>(k)]; }
    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }

    bool all_finite() const;
    double min() const;
    double max() const;

    friend bool operator==(const CellField&, const CellField&) = default;

private:
    std::vector<double> values_;
};

/// One scalar per face, stored per normal direction. Used for velocities,
/// face gradients, and single-valued face fluxes (flux from the minus cell
/// to the plus cell).
class FaceField {
public:
    FaceField() = default;
    FaceField(const Mesh& mesh, double value = 0.0);

    int dim() const { return dim_; }
    int size(int axis) const { return static_cast<int>(comp_[axis].size()); }
    double& operator()(int axis, int f) { return comp_[axis][static_cast<std::size_t>(f)]; }
    double operator()(int axis, int f) const { return comp_[axis][static_cast<std::size_t>(f)]; }
    std::span<double> component(int axis) { return comp_[axis]; }
    std::span<const double> component(int axis) const { return comp_[axis]; }

    bool all_finite() const;
    double max_abs() const;

    friend bool operator==(const FaceField&, const FaceField&) = default;

private:
    int dim_ = 0;
    std::array<std::vector<double>, kMaxDim> comp_;
};

/// Discrete unknowns at one time level.
struct State {
    CellField rho;
    CellField theta;
    FaceField u;
    double time = 0.0;
    long step_index = 0;

    CellField theta_total() const;
};

struct CaseSpec;

/// Samples the case's initial functions at cell and face centers.
/// Throws InvalidInitialData if rho or theta is non-positive anywhere.
State init_state(const Mesh& mesh, const CaseSpec& spec, double eps);

/// p = (rho theta)^gamma elementwise.
CellField eos_pressure(const CellField& theta_total, double gamma);
double eos_pressure(double theta_total, double gamma);

} // namespace ptmac
