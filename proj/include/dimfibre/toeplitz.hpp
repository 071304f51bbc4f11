#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "dimfibre/channel.hpp"

namespace dimfibre {

// Transfer matrix of n uses of the fibre: lower-triangular Toeplitz with
// first-column generator
//   a_j = sqrt(lambda * gamma) * mu^(j/2) * L_j^(-1)(-ln lambda),  j >= 0.
struct TransferMatrix {
    int n;
    Eigen::MatrixXd entries;
};

// Per-use effective transmissivities of the unraveled channel: squared
// singular values of the transfer matrix, sorted nondecreasing.
struct TransmissivitySpectrum {
    int n;
    std::vector<double> values;
};

// Orthogonal encoder/decoder pair: o2^T * diag(sqrt(eta)) * o1 reconstructs
// the transfer matrix.
struct ChannelDecomposition {
    Eigen::MatrixXd o1;
    Eigen::MatrixXd o2;
    TransmissivitySpectrum spectrum;
};

TransferMatrix build_dim_matrix(int n, const ChannelParams& params);

TransmissivitySpectrum transmissivity_spectrum(int n, const ChannelParams& params);

ChannelDecomposition decompose(int n, const ChannelParams& params);

// Max-entry residual of A(lambda1) * A(lambda2) - A(lambda1 * lambda2)
// at gamma = 1; zero in exact arithmetic (composition consistency).
double semigroup_residual(int n, double lambda1, double lambda2, double mu);

// Debug dump: one text row per matrix row, entries with 17 significant digits.
std::string dump_matrix(const Eigen::MatrixXd& m);

}  // namespace dimfibre
