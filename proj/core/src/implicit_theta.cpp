#include "ptmac/implicit_theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ptmac/errors.hpp"
#include "ptmac/fluxes.hpp"

namespace ptmac {

namespace {

double inf_norm(const CellField& r) {
    double m = 0.0;
    for (int k = 0; k < r.size(); ++k) m = std::max(m, std::abs(r[k]));
    return m;
}

double sum(const CellField& q) {
    double s = 0.0;
    for (int k = 0; k < q.size(); ++k) s += q[k];
    return s;
}

CellField pressure_of(const CellField& theta, double gamma) {
    CellField p(theta.size());
    for (int k = 0; k < theta.size(); ++k) p[k] = std::pow(theta[k], gamma);
    return p;
}

std::vector<signed char> shift_signs(const ThetaProblem& pb, const CellField& p) {
    const Mesh& mesh = *pb.mesh;
    std::vector<signed char> s;
    s.reserve(static_cast<std::size_t>(mesh.dim()) * mesh.cell_count());
    for (int a = 0; a < mesh.dim(); ++a) {
        for (int f = 0; f < mesh.face_count(a); ++f) {
            const double d = p[f] - p[mesh.face_minus_cell(a, f)];
            s.push_back(static_cast<signed char>((d > 0.0) - (d < 0.0)));
        }
    }
    return s;
}

} // namespace

CellField theta_residual(const ThetaProblem& pb, const CellField& theta) {
    const Mesh& mesh = *pb.mesh;
    const CellField p = pressure_of(theta, pb.gamma);
    const double c = pb.shift_coefficient();
    const double inv_vol = 1.0 / mesh.cell_volume();
    CellField r(mesh.cell_count(), 0.0);
    for (int a = 0; a < mesh.dim(); ++a) {
        const double area = mesh.face_area(a);
        const double cs = c / mesh.spacing(a);
        for (int f = 0; f < mesh.face_count(a); ++f) {
            const int K = mesh.face_minus_cell(a, f);
            const int L = f;
            const auto v = sign_split(pb.u(a, f), cs * (p[L] - p[K]));
            const double F = area * (theta[K] * v.plus + theta[L] * v.minus) * inv_vol;
            r[K] += F;
            r[L] -= F;
        }
    }
    for (int k = 0; k < r.size(); ++k) r[k] += (theta[k] - pb.theta_old[k]) / pb.dt;
    return r;
}

double theta_residual_floor(const ThetaProblem& pb, const CellField& theta) {
    const Mesh& mesh = *pb.mesh;
    const CellField p = pressure_of(theta, pb.gamma);
    const double c = pb.shift_coefficient();
    const double inv_vol = 1.0 / mesh.cell_volume();
    CellField mag(mesh.cell_count(), 0.0);
    for (int k = 0; k < mag.size(); ++k) mag[k] = (std::abs(theta[k]) + std::abs(pb.theta_old[k])) / pb.dt;
    for (int a = 0; a < mesh.dim(); ++a) {
        const double area = mesh.face_area(a);
        const double cs = c / mesh.spacing(a);
        for (int f = 0; f < mesh.face_count(a); ++f) {
            const int K = mesh.face_minus_cell(a, f);
            const int L = f;
            const double m = area * inv_vol * (std::abs(theta[K]) + std::abs(theta[L])) *
                             (std::abs(pb.u(a, f)) + cs * (std::abs(p[K]) + std::abs(p[L])));
            mag[K] += m;
            mag[L] += m;
        }
    }
    return 8.0 * std::numeric_limits<double>::epsilon() * mag.max();
}

ThetaJacobian theta_jacobian(const ThetaProblem& pb, const CellField& theta) {
    const Mesh& mesh = *pb.mesh;
    const int n = mesh.cell_count();
    const CellField p = pressure_of(theta, pb.gamma);
    const double c = pb.shift_coefficient();
    const double inv_vol = 1.0 / mesh.cell_volume();

    ThetaJacobian J;
    J.alpha = 1.0 / pb.dt;
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(n) * (1 + 4 * mesh.dim()));
    for (int k = 0; k < n; ++k) trip.emplace_back(k, k, 1.0 / pb.dt);

    for (int a = 0; a < mesh.dim(); ++a) {
        const double area = mesh.face_area(a) * inv_vol;
        const double cs = c / mesh.spacing(a);
        double sum_u = 0.0;
        double sum_w = 0.0;
        for (int f = 0; f < mesh.face_count(a); ++f) {
            const int K = mesh.face_minus_cell(a, f);
            const int L = f;
            const double du = cs * (p[L] - p[K]);
            const auto v = sign_split(pb.u(a, f), du);
            const double up = du < 0.0 ? theta[K] : theta[L];
            const double dpK = pb.gamma * std::pow(theta[K], pb.gamma - 1.0);
            const double dpL = pb.gamma * std::pow(theta[L], pb.gamma - 1.0);
            const double dK = area * (v.plus + up * cs * dpK);
            const double dL = area * (v.minus - up * cs * dpL);
            trip.emplace_back(K, K, dK);
            trip.emplace_back(K, L, dL);
            trip.emplace_back(L, K, -dK);
            trip.emplace_back(L, L, -dL);
            sum_u += std::abs(pb.u(a, f));
            sum_w += up * 0.5 * (dpK + dpL);
        }
        const int nf = mesh.face_count(a);
        J.alpha += sum_u / nf / mesh.spacing(a);
        J.beta[a] = c * sum_w / nf;
    }
    J.matrix.resize(n, n);
    J.matrix.setFromTriplets(trip.begin(), trip.end());
    J.matrix.makeCompressed();
    return J;
}

SparseMatrix theta_transport_matrix(const Mesh& mesh, const FaceField& u, const FaceField& du, double dt) {
    const int n = mesh.cell_count();
    const double inv_vol = 1.0 / mesh.cell_volume();
    std::vector<Eigen::Triplet<double>> trip;
    for (int k = 0; k < n; ++k) trip.emplace_back(k, k, 1.0 / dt);
    for (int a = 0; a < mesh.dim(); ++a) {
        const double area = mesh.face_area(a) * inv_vol;
        for (int f = 0; f < mesh.face_count(a); ++f) {
            const int K = mesh.face_minus_cell(a, f);
            const int L = f;
            const auto v = sign_split(u(a, f), du(a, f));
            trip.emplace_back(K, K, area * v.plus);
            trip.emplace_back(K, L, area * v.minus);
            trip.emplace_back(L, K, -area * v.plus);
            trip.emplace_back(L, L, -area * v.minus);
        }
    }
    SparseMatrix A(n, n);
    A.setFromTriplets(trip.begin(), trip.end());
    return A;
}

ThetaSolver::ThetaSolver(const Mesh& mesh, NewtonOptions options)
    : options_(options), linear_(std::make_unique<SparseSystemSolver>(mesh, options.linear)) {
    // Periodic 1D systems are banded; LU is always cheaper there.
    if (mesh.dim() == 1 && options_.linear.method == LinearMethod::Auto) {
        options_.linear.method = LinearMethod::Direct;
        linear_ = std::make_unique<SparseSystemSolver>(mesh, options_.linear);
    }
}

ThetaSolver::~ThetaSolver() = default;

ThetaSolveResult ThetaSolver::solve(const ThetaProblem& pb) {
    const int n = pb.theta_old.size();
    if (!(pb.dt > 0.0)) throw ConfigError("implicit temperature solve needs dt > 0");
    if (pb.theta_old.min() <= 0.0) throw DomainError("rho theta must be positive");

    const double tol = options_.tol > 0.0
                           ? options_.tol
                           : 1e-11 * std::max(1.0, inf_norm(pb.theta_old) / pb.dt);
    const double target_sum = sum(pb.theta_old);

    ThetaSolveResult res;
    CellField theta = pb.theta_old;
    CellField r = theta_residual(pb, theta);
    double rnorm = inf_norm(r);
    std::vector<signed char> last_signs;
    bool prev_below = false;

    for (int it = 0;; ++it) {
        const double floor = theta_residual_floor(pb, theta);
        const double tol_eff = std::max(tol, floor);
        const bool below = rnorm <= tol_eff;
        if (below) {
            const auto signs = shift_signs(pb, pressure_of(theta, pb.gamma));
            if (it == 0 || signs == last_signs || prev_below) {
                res.iterations = it;
                res.residual = rnorm;
                res.tolerance = tol_eff;
                res.theta_total = std::move(theta);
                res.pressure = pressure_of(res.theta_total, pb.gamma);
                return res;
            }
        }
        prev_below = below;
        if (it >= options_.max_iter) {
            throw NonlinearSolverFailure("Newton iteration for rho theta did not converge", rnorm);
        }

        ThetaJacobian J = theta_jacobian(pb, theta);
        last_signs = shift_signs(pb, pressure_of(theta, pb.gamma));
        Eigen::VectorXd rhs(n);
        for (int k = 0; k < n; ++k) rhs[k] = -r[k];
        Eigen::VectorXd delta = Eigen::VectorXd::Zero(n);
        const LinearSolveStats st = linear_->solve(J.matrix, rhs, delta, J.alpha, J.beta);
        res.linear_iterations += st.iterations;

        double lambda = 1.0;
        bool have_best = false;
        CellField best;
        CellField best_r;
        double best_norm = std::numeric_limits<double>::infinity();
        bool accepted = false;
        for (int h = 0; h <= options_.max_halvings; ++h, lambda *= 0.5) {
            CellField trial(n);
            for (int k = 0; k < n; ++k) trial[k] = theta[k] + lambda * delta[k];
            const double shift = (target_sum - sum(trial)) / n;
            for (int k = 0; k < n; ++k) trial[k] += shift;
            if (!(trial.min() > 0.0) || !trial.all_finite()) continue;
            CellField rt = theta_residual(pb, trial);
            const double tn = inf_norm(rt);
            if (tn < best_norm) {
                best_norm = tn;
                best = trial;
                best_r = rt;
                have_best = true;
            }
            // Near the rounding floor the residual is noise; do not let it
            // force tiny steps.
            if (rnorm <= 10.0 * floor || tn <= (1.0 - 1e-4 * lambda) * rnorm) {
                theta = std::move(trial);
                r = std::move(rt);
                rnorm = tn;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            if (!have_best) {
                throw NonlinearSolverFailure("Newton update lost positivity of rho theta", rnorm);
            }
            theta = std::move(best);
            r = std::move(best_r);
            rnorm = best_norm;
        }
    }
}

ThetaSolveResult solve_theta_implicit(const Mesh& mesh, const State& state, double dt, double eta,
                                      double eps, double gamma, const NewtonOptions& options) {
    ThetaProblem pb;
    pb.mesh = &mesh;
    pb.theta_old = state.theta_total();
    pb.u = state.u;
    pb.dt = dt;
    pb.eta = eta;
    pb.eps = eps;
    pb.gamma = gamma;
    ThetaSolver solver(mesh, options);
    return solver.solve(pb);
}

} // namespace ptmac
