#include "dimfibre/netsim.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "dimfibre/errors.hpp"
#include "dimfibre/toeplitz.hpp"
#include "json.hpp"

namespace dimfibre {

namespace {

constexpr long kEnvironmentGuard = 5000;  // max n * m_steps with E tracked
constexpr int kInterferometerGuard = 256; // max n + n * m_steps

void check_lambda_mu(double lambda, double mu) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("lambda must be in [0, 1]");
    }
    if (!(mu >= 0.0 && mu < 1.0)) {
        throw std::invalid_argument("mu must be in [0, 1)");
    }
}

// x/p doubling of an n x n matrix acting identically on both quadratures.
Eigen::MatrixXd double_quadratures(const Eigen::MatrixXd& m) {
    const Eigen::Index n = m.rows();
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = 0; k < n; ++k) {
            s(2 * i, 2 * k) = m(i, k);
            s(2 * i + 1, 2 * k + 1) = m(i, k);
        }
    }
    return s;
}

}  // namespace

FiniteMCoefficients finite_m_coefficients(int m_steps, int n, double lambda, double mu,
                                          bool track_environment) {
    if (m_steps < 1) throw std::invalid_argument("m_steps must be >= 1");
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    check_lambda_mu(lambda, mu);
    if (track_environment &&
        static_cast<long>(n) * static_cast<long>(m_steps) > kEnvironmentGuard) {
        throw std::invalid_argument("environment tracking limited to n * m_steps <= 5000");
    }

    const double seg = std::pow(lambda, 1.0 / m_steps);  // per-segment transmissivity
    const double c_sig = std::sqrt(seg);
    const double s_sig = std::sqrt(1.0 - seg);
    const double c_mem = std::sqrt(mu * seg);
    const double s_mem = std::sqrt(mu * (1.0 - seg));
    const double s_bath = std::sqrt(1.0 - mu);

    const int env_dim = track_environment ? n * m_steps : 0;
    const int dim = n + env_dim;
    // env mode (h, l) = fresh bath injected before use h on segment l,
    // column n + (h-1)*m_steps + (l-1); (1, l) is the initial line state.
    const auto env_col = [&](int h, int l) { return n + (h - 1) * m_steps + (l - 1); };

    // mem.row(l-1) carries the coefficients of the environment line state on
    // segment l right before the current use; a_cur those of the signal.
    Eigen::MatrixXd mem = Eigen::MatrixXd::Zero(m_steps, dim);
    if (track_environment) {
        for (int l = 1; l <= m_steps; ++l) mem(l - 1, env_col(1, l)) = 1.0;
    }

    FiniteMCoefficients out;
    out.m_steps = m_steps;
    out.n = n;
    out.a_matrix = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd e_matrix;
    if (track_environment) e_matrix = Eigen::MatrixXd::Zero(n, env_dim);

    Eigen::RowVectorXd a_cur(dim);
    for (int i = 1; i <= n; ++i) {
        a_cur.setZero();
        a_cur(i - 1) = 1.0;
        for (int l = 1; l <= m_steps; ++l) {
            const Eigen::RowVectorXd a_prev = a_cur;
            a_cur = c_sig * a_prev + s_sig * mem.row(l - 1);
            if (i < n) {  // thermalisation feeding the next use
                mem.row(l - 1) = c_mem * mem.row(l - 1) - s_mem * a_prev;
                if (track_environment) {
                    mem(l - 1, env_col(i + 1, l)) -= s_bath;
                }
            }
        }
        out.a_matrix.row(i - 1) = a_cur.head(n);
        if (track_environment) e_matrix.row(i - 1) = a_cur.tail(env_dim);
    }

    if (track_environment) {
        const Eigen::MatrixXd gram = out.a_matrix * out.a_matrix.transpose() +
                                     e_matrix * e_matrix.transpose() -
                                     Eigen::MatrixXd::Identity(n, n);
        out.gram_residual = gram.cwiseAbs().maxCoeff();
    }
    return out;
}

Eigen::MatrixXd full_interferometer(int m_steps, int n, double lambda, double mu) {
    if (m_steps < 1) throw std::invalid_argument("m_steps must be >= 1");
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    check_lambda_mu(lambda, mu);
    const int dim = n + n * m_steps;
    if (dim > kInterferometerGuard) {
        throw std::invalid_argument("interferometer limited to n + n * m_steps <= 256");
    }

    const double seg = std::pow(lambda, 1.0 / m_steps);
    const double c_sig = std::sqrt(seg), s_sig = std::sqrt(1.0 - seg);
    const double c_mem = std::sqrt(mu), s_mem = std::sqrt(1.0 - mu);

    Eigen::MatrixXd o = Eigen::MatrixXd::Identity(dim, dim);
    // rotation on wires (u, v): row_u' = c row_u + s row_v, row_v' = -s row_u + c row_v
    const auto rotate = [&o](int u, int v, double c, double s) {
        const Eigen::RowVectorXd ru = o.row(u);
        o.row(u) = c * ru + s * o.row(v);
        o.row(v) = -s * ru + c * o.row(v);
    };

    // wire layout: signals 0..n-1; env mode (h, l) on wire n + (h-1)*m_steps + (l-1);
    // the line state of segment l lives on the wire of its initial mode (1, l).
    for (int i = 1; i <= n; ++i) {
        for (int l = 1; l <= m_steps; ++l) {
            const int line = n + (l - 1);
            rotate(i - 1, line, c_sig, s_sig);
            if (i < n) {
                const int fresh = n + i * m_steps + (l - 1);
                rotate(fresh, line, c_mem, s_mem);
            }
        }
    }
    return o;
}

std::vector<ConvergencePoint> convergence_study(int n, double lambda, double mu,
                                                const std::vector<int>& m_list) {
    if (m_list.empty()) throw std::invalid_argument("m_list must be nonempty");
    for (size_t i = 1; i < m_list.size(); ++i) {
        if (m_list[i] <= m_list[i - 1]) {
            throw std::invalid_argument("m_list must be strictly increasing");
        }
    }
    const ChannelParams params{lambda, mu, 0.0, 1.0};
    const Eigen::MatrixXd limit = build_dim_matrix(n, params).entries;
    std::vector<ConvergencePoint> out;
    out.reserve(m_list.size());
    for (const int m : m_list) {
        const FiniteMCoefficients c = finite_m_coefficients(m, n, lambda, mu);
        out.push_back({m, (c.a_matrix - limit).cwiseAbs().maxCoeff()});
    }
    return out;
}

void GaussianState::validate() const {
    if (n < 1) throw std::invalid_argument("state must have n >= 1 modes");
    if (mean.size() != 2 * n || covariance.rows() != 2 * n || covariance.cols() != 2 * n) {
        throw std::invalid_argument("state dimensions inconsistent with n");
    }
    const double asym = (covariance - covariance.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12) {
        throw std::invalid_argument("covariance not symmetric");
    }
    // uncertainty relation: cov + i Omega >= 0
    Eigen::MatrixXcd herm = covariance.cast<std::complex<double>>();
    const std::complex<double> im(0.0, 1.0);
    for (int k = 0; k < n; ++k) {
        herm(2 * k, 2 * k + 1) += im;
        herm(2 * k + 1, 2 * k) -= im;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw numeric_error("uncertainty check failed");
    if (solver.eigenvalues().minCoeff() < -1e-9) {
        throw std::invalid_argument("covariance violates the uncertainty relation");
    }
}

GaussianState vacuum_state(int n) {
    if (n < 1) throw std::invalid_argument("state must have n >= 1 modes");
    return {n, Eigen::VectorXd::Zero(2 * n), Eigen::MatrixXd::Identity(2 * n, 2 * n)};
}

GaussianState thermal_state(int n, double nu) {
    if (!(nu >= 0.0)) throw std::invalid_argument("nu must be >= 0");
    GaussianState s = vacuum_state(n);
    s.covariance *= 2.0 * nu + 1.0;
    return s;
}

GaussianState propagate_gaussian(const GaussianState& state, int n,
                                 const ChannelParams& params) {
    if (state.n != n) throw std::invalid_argument("state mode count does not match n");
    params.validate();
    const Eigen::MatrixXd s = double_quadratures(build_dim_matrix(n, params).entries);
    const double noise = 2.0 * params.nu + 1.0;
    GaussianState out;
    out.n = n;
    out.mean = s * state.mean;
    out.covariance = s * state.covariance * s.transpose() +
                     noise * (Eigen::MatrixXd::Identity(2 * n, 2 * n) - s * s.transpose());
    return out;
}

GaussianState apply_attenuator(const GaussianState& state, double lambda, double nu) {
    if (state.n != 1) throw std::invalid_argument("apply_attenuator expects a single mode");
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must be in [0, 1]");
    if (!(nu >= 0.0)) throw std::invalid_argument("nu must be >= 0");
    GaussianState out;
    out.n = 1;
    out.mean = std::sqrt(lambda) * state.mean;
    out.covariance = lambda * state.covariance +
                     (1.0 - lambda) * (2.0 * nu + 1.0) * Eigen::MatrixXd::Identity(2, 2);
    return out;
}

GaussianState apply_passive(const GaussianState& state, const Eigen::MatrixXd& o) {
    if (o.rows() != state.n || o.cols() != state.n) {
        throw std::invalid_argument("orthogonal matrix size does not match state");
    }
    const Eigen::MatrixXd s = double_quadratures(o);
    return {state.n, s * state.mean, s * state.covariance * s.transpose()};
}

std::string to_json(const GaussianState& state) {
    nlohmann::json j;
    j["n"] = state.n;
    j["mean"] = std::vector<double>(state.mean.data(), state.mean.data() + state.mean.size());
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < state.covariance.rows(); ++i) {
        std::vector<double> row(state.covariance.cols());
        for (Eigen::Index k = 0; k < state.covariance.cols(); ++k) row[k] = state.covariance(i, k);
        rows.push_back(row);
    }
    j["covariance"] = rows;
    return j.dump();
}

GaussianState gaussian_state_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed state JSON: ") + e.what());
    }
    GaussianState state;
    try {
        state.n = j.at("n").get<int>();
        const auto mean = j.at("mean").get<std::vector<double>>();
        const auto cov = j.at("covariance").get<std::vector<std::vector<double>>>();
        state.mean = Eigen::Map<const Eigen::VectorXd>(mean.data(), mean.size());
        state.covariance.resize(cov.size(), cov.size());
        for (size_t i = 0; i < cov.size(); ++i) {
            if (cov[i].size() != cov.size()) {
                throw std::invalid_argument("covariance rows must form a square matrix");
            }
            for (size_t k = 0; k < cov[i].size(); ++k) {
                state.covariance(i, k) = cov[i][k];
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed state JSON: ") + e.what());
    }
    state.validate();
    return state;
}

}  // namespace dimfibre
