#include "dimfibre/toeplitz.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "dimfibre/errors.hpp"
#include "dimfibre/specialfn.hpp"

namespace dimfibre {

namespace {

constexpr int kJacobiSvdMaxN = 128;

void check_n(int n) {
    if (n < 1) throw std::invalid_argument("matrix dimension n must be >= 1");
}

// First-column generator a_j = sqrt(lambda*gamma) mu^(j/2) L_j^(-1)(-ln lambda).
std::vector<double> generator(int n, double lambda, double mu, double gamma) {
    std::vector<double> a(static_cast<size_t>(n), 0.0);
    if (lambda == 0.0) return a;  // zero matrix limit
    const double scale = std::sqrt(lambda * gamma);
    a[0] = scale;
    if (n == 1 || mu == 0.0) return a;  // memoryless: diagonal only
    const LaguerreRow row = laguerre_row(n - 1, -std::log(lambda));
    const double sqrt_mu = std::sqrt(mu);
    double mu_pow = 1.0;
    for (int j = 1; j < n; ++j) {
        mu_pow *= sqrt_mu;
        a[static_cast<size_t>(j)] = scale * mu_pow * row.values[static_cast<size_t>(j)];
    }
    return a;
}

struct SvdParts {
    Eigen::VectorXd singular;  // decreasing, Eigen convention
    Eigen::MatrixXd u;
    Eigen::MatrixXd v;
};

SvdParts run_svd(const Eigen::MatrixXd& m, bool want_vectors) {
    const unsigned opts = want_vectors ? (Eigen::ComputeFullU | Eigen::ComputeFullV) : 0u;
    SvdParts out;
    if (m.rows() <= kJacobiSvdMaxN) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, opts);
        if (svd.info() != Eigen::Success) throw numeric_error("SVD did not converge");
        out.singular = svd.singularValues();
        if (want_vectors) {
            out.u = svd.matrixU();
            out.v = svd.matrixV();
        }
    } else {
        Eigen::BDCSVD<Eigen::MatrixXd> svd(m, opts);
        if (svd.info() != Eigen::Success) throw numeric_error("SVD did not converge");
        out.singular = svd.singularValues();
        if (want_vectors) {
            out.u = svd.matrixU();
            out.v = svd.matrixV();
        }
    }
    return out;
}

}  // namespace

TransferMatrix build_dim_matrix(int n, const ChannelParams& params) {
    check_n(n);
    params.validate();
    const std::vector<double> a = generator(n, params.lambda, params.mu, params.gamma);
    Eigen::MatrixXd entries = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k <= i; ++k) {
            entries(i, k) = a[static_cast<size_t>(i - k)];
        }
    }
    return TransferMatrix{n, std::move(entries)};
}

TransmissivitySpectrum transmissivity_spectrum(int n, const ChannelParams& params) {
    const TransferMatrix m = build_dim_matrix(n, params);
    const SvdParts svd = run_svd(m.entries, false);
    TransmissivitySpectrum spectrum{n, {}};
    spectrum.values.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        // ascending order; clamp squares into the physical range
        const double s = svd.singular(n - 1 - i);
        spectrum.values[static_cast<size_t>(i)] = std::clamp(s * s, 0.0, 1.0);
    }
    return spectrum;
}

ChannelDecomposition decompose(int n, const ChannelParams& params) {
    const TransferMatrix m = build_dim_matrix(n, params);
    const SvdParts svd = run_svd(m.entries, true);

    // Reorder ascending: A = (U P)(P S P)(V P)^T, P the reversal permutation.
    ChannelDecomposition dec;
    dec.spectrum.n = n;
    dec.spectrum.values.resize(static_cast<size_t>(n));
    dec.o1.resize(n, n);
    Eigen::MatrixXd o2t(n, n);  // decoder transpose, columns are left singular vectors
    for (int i = 0; i < n; ++i) {
        const int src = n - 1 - i;
        const double s = svd.singular(src);
        dec.spectrum.values[static_cast<size_t>(i)] = std::clamp(s * s, 0.0, 1.0);
        dec.o1.row(i) = svd.v.col(src).transpose();
        o2t.col(i) = svd.u.col(src);
    }

    // Fix signs: first non-negligible entry of each right singular vector > 0.
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const double v = dec.o1(i, k);
            if (std::abs(v) > 1e-12) {
                if (v < 0.0) {
                    dec.o1.row(i) *= -1.0;
                    o2t.col(i) *= -1.0;
                }
                break;
            }
        }
    }
    dec.o2 = o2t.transpose();
    return dec;
}

double semigroup_residual(int n, double lambda1, double lambda2, double mu) {
    const ChannelParams p1{lambda1, mu, 0.0, 1.0};
    const ChannelParams p2{lambda2, mu, 0.0, 1.0};
    const ChannelParams p12{lambda1 * lambda2, mu, 0.0, 1.0};
    const Eigen::MatrixXd a1 = build_dim_matrix(n, p1).entries;
    const Eigen::MatrixXd a2 = build_dim_matrix(n, p2).entries;
    const Eigen::MatrixXd a12 = build_dim_matrix(n, p12).entries;
    return (a1 * a2 - a12).cwiseAbs().maxCoeff();
}

std::string dump_matrix(const Eigen::MatrixXd& m) {
    std::string out;
    out.reserve(static_cast<size_t>(m.size()) * 26);
    char buf[40];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            std::snprintf(buf, sizeof(buf), "%.17g", m(i, k));
            if (k > 0) out += ' ';
            out += buf;
        }
        out += '\n';
    }
    return out;
}

}  // namespace dimfibre
