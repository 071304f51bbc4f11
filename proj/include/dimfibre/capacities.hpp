#pragma once

#include <string>
#include <utility>

#include "dimfibre/channel.hpp"
#include "dimfibre/spectral.hpp"

namespace dimfibre {

enum class CapacityKind { Q, Q2, K };

enum class CapacityStatus { Zero, Positive, Unknown };

// Capacity value in bits per channel use, with rigorous monotone-Riemann
// brackets and quadrature diagnostics. At nu > 0 the value is a lower bound
// (is_exact = false) and upper is +inf.
struct CapacityResult {
    double value;
    double lower;
    double upper;
    CapacityKind kind;
    SymbolModel model;
    bool is_exact;
    long quadrature_points;
    ChannelParams params;
};

// Closed-form capacities of the pure-loss channel:
//   Q = max{0, log2(lambda / (1 - lambda))},  Q2 = K = log2(1 / (1 - lambda)).
// lambda = 1 is rejected (divergence).
double pure_loss_capacity(double lambda, CapacityKind kind);

// Zero/positive classification of the thermal attenuator. Unknown is only
// reachable for Q at nu > 0, between the necessary and sufficient bounds.
CapacityStatus attenuator_capacity_status(double lambda, double nu, CapacityKind kind);

// Critical memory value(s) in sqrt(mu) above which the fibre capacity is
// positive. Exact for Q at nu = 0 and for Q2/K at any nu; for Q at nu > 0
// only a [necessary, sufficient] pair is known.
struct PositivityThreshold {
    bool exact;
    double sqrt_mu;             // the exact threshold (when exact)
    double sqrt_mu_necessary;   // capacity > 0 implies sqrt(mu) > this
    double sqrt_mu_sufficient;  // sqrt(mu) > this implies capacity > 0
};

PositivityThreshold dim_positivity_threshold(double lambda, double nu, CapacityKind kind);

// Capacity of the memory channel. nu = 0: exact integral of the per-mode
// pure-loss capacity over the (gamma-scaled) symbol, with the Q integrand
// split at its kink before quadrature. nu > 0: the per-mode
// max{0, log2(g eta/(1 - g eta)) - g(nu)} lower bound.
CapacityResult channel_capacity(const ChannelParams& params, SymbolModel model,
                                CapacityKind kind, double tolerance = 1e-9);

// Monotone-Riemann sandwich of the nu = 0 capacity integral with P blocks:
//   lower = (1/P) sum_{p=1}^{P-1} C(eta(2 pi p / P)),
//   upper = lower + C(eta(2 pi)) / P.
std::pair<double, double> capacity_brackets(const ChannelParams& params,
                                            SymbolModel model, CapacityKind kind,
                                            long p_blocks);

// Per-use capacity of n uses: (1/n) sum_i C(eta_i) over the finite-n
// spectrum (nu = 0 only, where the per-mode capacities are exact).
double finite_n_capacity_density(int n, const ChannelParams& params, CapacityKind kind);

std::string to_json(const CapacityResult& result);

const char* to_string(CapacityKind kind);
const char* to_string(CapacityStatus status);

}  // namespace dimfibre
