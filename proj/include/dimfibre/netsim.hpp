#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "dimfibre/channel.hpp"

namespace dimfibre {

// Input-mode coefficients of the output annihilation operators of the
// finite-M interferometer. a_matrix is lower-triangular; gram_residual is
// the max entry of |A A^T + E E^T - I| when the environment block is tracked.
struct FiniteMCoefficients {
    int m_steps;
    int n;
    Eigen::MatrixXd a_matrix;
    std::optional<double> gram_residual;
};

FiniteMCoefficients finite_m_coefficients(int m_steps, int n, double lambda, double mu,
                                          bool track_environment = false);

// Full (n + n*m_steps)-mode orthogonal matrix of the interferometer, built
// as the ordered product of 2-mode rotations. Rows are output operators,
// columns input modes; the top-left n x n block equals the a_matrix above.
Eigen::MatrixXd full_interferometer(int m_steps, int n, double lambda, double mu);

struct ConvergencePoint {
    int m_steps;
    double max_abs_error;  // max-entry error of A^(M) vs the closed-form limit
};

std::vector<ConvergencePoint> convergence_study(int n, double lambda, double mu,
                                                const std::vector<int>& m_list);

// n-mode Gaussian state in quadrature order (x1, p1, ..., xn, pn),
// vacuum = identity covariance, thermal nu = (2 nu + 1) * identity per mode.
struct GaussianState {
    int n;
    Eigen::VectorXd mean;
    Eigen::MatrixXd covariance;

    // Checks sizes, symmetry (1e-12) and the uncertainty relation
    // cov + i*Omega >= 0 (Hermitian spectrum down to -1e-9).
    void validate() const;
};

GaussianState vacuum_state(int n);
GaussianState thermal_state(int n, double nu);

// n-use fibre acting on a Gaussian state: with S the x/p doubling of the
// transfer matrix, mean -> S mean and
// cov -> S cov S^T + (2 nu + 1)(I - S S^T).
GaussianState propagate_gaussian(const GaussianState& state, int n,
                                 const ChannelParams& params);

// Single-mode thermal attenuator: mean -> sqrt(lambda) mean,
// cov -> lambda cov + (1 - lambda)(2 nu + 1) I.
GaussianState apply_attenuator(const GaussianState& state, double lambda, double nu);

// Passive transformation associated with an orthogonal matrix o acting
// identically on x and p quadratures.
GaussianState apply_passive(const GaussianState& state, const Eigen::MatrixXd& o);

std::string to_json(const GaussianState& state);
GaussianState gaussian_state_from_json(const std::string& text);

}  // namespace dimfibre
