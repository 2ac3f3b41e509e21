#pragma once

#include <stdexcept>
#include <string>

namespace ptmac {

/// Invalid mesh, case or run configuration. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sampled initial data violates positivity of rho or theta.
class InvalidInitialData : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Argument outside the domain of a thermodynamic function.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Diagnostic that is undefined for the current parameters (psi_gamma with gamma = 1).
class UnsupportedDiagnostic : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Any failure inside a time step. The CLI maps this to exit code 3.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Explicit mass update produced a non-positive density.
class CflViolation : public SolverError {
public:
    using SolverError::SolverError;
};

/// Newton iteration for the implicit temperature update did not converge.
class NonlinearSolverFailure : public SolverError {
public:
    NonlinearSolverFailure(const std::string& what, double last_residual)
        : SolverError(what), last_residual_(last_residual) {}
    double last_residual() const noexcept { return last_residual_; }

private:
    double last_residual_;
};

/// Linear solver stagnated or broke down.
class LinearSolverFailure : public SolverError {
public:
    LinearSolverFailure(const std::string& what, double residual)
        : SolverError(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

} // namespace ptmac
