#include "dimfibre/capacities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dimfibre/quadrature.hpp"
#include "dimfibre/specialfn.hpp"
#include "dimfibre/toeplitz.hpp"
#include "json.hpp"

namespace dimfibre {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr long kBracketMinBlocks = 1L << 10;
constexpr long kBracketMaxBlocks = 1L << 18;

// Per-mode pure-loss capacity, assuming transmissivity in [0, 1).
double pure_loss(double t, CapacityKind kind) {
    if (kind == CapacityKind::Q) {
        return t <= 0.5 ? 0.0 : std::log2(t / (1.0 - t));
    }
    return -std::log2(1.0 - t);
}

void check_capacity_params(const ChannelParams& params) {
    params.validate();
    if (params.lambda >= 1.0) {
        throw std::invalid_argument("capacities diverge at lambda = 1");
    }
}

}  // namespace

double pure_loss_capacity(double lambda, CapacityKind kind) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("lambda must be in [0, 1]");
    }
    if (lambda == 1.0) {
        throw std::invalid_argument("pure-loss capacities diverge at lambda = 1");
    }
    return pure_loss(lambda, kind);
}

CapacityStatus attenuator_capacity_status(double lambda, double nu, CapacityKind kind) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("lambda must be in [0, 1]");
    }
    if (!(nu >= 0.0)) throw std::invalid_argument("nu must be >= 0");
    if (kind != CapacityKind::Q) {
        return lambda <= nu / (nu + 1.0) ? CapacityStatus::Zero : CapacityStatus::Positive;
    }
    if (lambda <= (nu + 0.5) / (nu + 1.0)) return CapacityStatus::Zero;
    if (lambda > 1.0 / (1.0 + std::exp2(-entropy_g(nu)))) return CapacityStatus::Positive;
    return CapacityStatus::Unknown;
}

PositivityThreshold dim_positivity_threshold(double lambda, double nu, CapacityKind kind) {
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw std::invalid_argument("threshold requires lambda in (0, 1)");
    }
    if (!(nu >= 0.0)) throw std::invalid_argument("nu must be >= 0");
    const double big_l = std::log(1.0 / lambda);
    // the symbol maximum lambda^((1-s)/(1+s)) exceeds a critical transmissivity
    // t exactly when s = sqrt(mu) > (ln(1/lambda) - ln(1/t)) / (ln(1/lambda) + ln(1/t))
    const auto threshold = [big_l](double log_inv_t) {
        return std::max(0.0, (big_l - log_inv_t) / (big_l + log_inv_t));
    };

    PositivityThreshold out{};
    if (kind != CapacityKind::Q) {
        out.exact = true;
        out.sqrt_mu = nu == 0.0 ? 0.0 : threshold(std::log1p(1.0 / nu));
        out.sqrt_mu_necessary = out.sqrt_mu;
        out.sqrt_mu_sufficient = out.sqrt_mu;
        return out;
    }
    if (nu == 0.0) {
        out.exact = true;
        out.sqrt_mu = threshold(std::log(2.0));
        out.sqrt_mu_necessary = out.sqrt_mu;
        out.sqrt_mu_sufficient = out.sqrt_mu;
        return out;
    }
    out.exact = false;
    out.sqrt_mu = std::numeric_limits<double>::quiet_NaN();
    out.sqrt_mu_necessary = threshold(std::log1p(1.0 / (2.0 * nu + 1.0)));
    out.sqrt_mu_sufficient = threshold(std::log1p(std::exp2(-entropy_g(nu))));
    return out;
}

std::pair<double, double> capacity_brackets(const ChannelParams& params, SymbolModel model,
                                            CapacityKind kind, long p_blocks) {
    check_capacity_params(params);
    if (params.nu != 0.0) {
        throw std::invalid_argument("brackets are exact only at nu = 0");
    }
    if (p_blocks < 1) throw std::invalid_argument("p_blocks must be >= 1");
    if (params.lambda == 0.0) return {0.0, 0.0};

    double lower = 0.0;
    double top = 0.0;
    for (long p = 1; p <= p_blocks; ++p) {
        const double x =
            std::min(kTwoPi, kTwoPi * static_cast<double>(p) / static_cast<double>(p_blocks));
        const double c = pure_loss(params.gamma * eta_symbol(x, params.lambda, params.mu, model),
                                   kind);
        if (p < p_blocks) {
            lower += c;
        } else {
            top = c;
        }
    }
    lower /= static_cast<double>(p_blocks);
    return {lower, lower + top / static_cast<double>(p_blocks)};
}

CapacityResult channel_capacity(const ChannelParams& params, SymbolModel model,
                                CapacityKind kind, double tolerance) {
    check_capacity_params(params);
    if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");

    CapacityResult result{};
    result.kind = kind;
    result.model = model;
    result.params = params;
    result.is_exact = params.nu == 0.0;
    result.quadrature_points = 0;

    if (params.lambda == 0.0) {  // nothing is transmitted
        result.value = result.lower = 0.0;
        result.upper = result.is_exact ? 0.0 : kInf;
        return result;
    }

    const double gamma = params.gamma;
    const auto symbol = [&](double x) {
        return gamma * eta_symbol(x, params.lambda, params.mu, model);
    };

    if (params.nu == 0.0) {
        if (params.mu == 0.0) {  // constant symbol: plain pure loss
            result.value = pure_loss(gamma * params.lambda, kind);
            result.lower = result.upper = result.value;
            result.quadrature_points = 1;
            return result;
        }

        double from = 0.0;
        bool empty = false;
        if (kind == CapacityKind::Q) {
            // integrand vanishes below the transmissivity-1/2 kink
            const QCrossing cross = eta_crossing(params.lambda, params.mu, model, 0.5 / gamma);
            if (cross.kind == QCrossing::NoneAbove) empty = true;
            if (cross.kind == QCrossing::CrossAt) from = cross.x_star;
        }
        if (empty) {
            result.value = result.lower = result.upper = 0.0;
            return result;
        }

        const auto integrand = [&](double x) {
            const double t = symbol(x);
            return kind == CapacityKind::Q ? std::max(0.0, std::log2(t / (1.0 - t)))
                                           : -std::log2(1.0 - t);
        };
        const QuadratureResult quad =
            integrate_adaptive(integrand, from, kTwoPi, tolerance * kTwoPi);
        result.value = quad.value / kTwoPi;
        result.quadrature_points = quad.evaluations;

        long blocks = kBracketMinBlocks;
        for (;;) {
            const auto [lo, hi] = capacity_brackets(params, model, kind, blocks);
            result.lower = lo;
            result.upper = hi;
            if (hi - lo <= tolerance || blocks >= kBracketMaxBlocks) break;
            blocks *= 2;
        }
        // the brackets are rigorous, the quadrature estimate is not
        result.value = std::clamp(result.value, result.lower, result.upper);
        return result;
    }

    // nu > 0: per-mode lower bound max{0, log2(t/(1-t)) - g(nu)}
    const double g_nu = entropy_g(params.nu);
    const double big_g = std::exp2(g_nu);
    const double kink_level = big_g / (1.0 + big_g) / gamma;
    double from = 0.0;
    bool empty = false;
    if (params.mu == 0.0) {
        result.value = std::max(
            0.0, std::log2(gamma * params.lambda / (1.0 - gamma * params.lambda)) - g_nu);
        result.lower = result.value;
        result.upper = kInf;
        result.quadrature_points = 1;
        return result;
    }
    const QCrossing cross = eta_crossing(params.lambda, params.mu, model, kink_level);
    if (cross.kind == QCrossing::NoneAbove) empty = true;
    if (cross.kind == QCrossing::CrossAt) from = cross.x_star;
    if (empty) {
        result.value = result.lower = 0.0;
        result.upper = kInf;
        return result;
    }
    const auto integrand = [&](double x) {
        const double t = symbol(x);
        return std::max(0.0, std::log2(t / (1.0 - t)) - g_nu);
    };
    const QuadratureResult quad = integrate_adaptive(integrand, from, kTwoPi, tolerance * kTwoPi);
    result.value = quad.value / kTwoPi;
    result.quadrature_points = quad.evaluations;
    result.lower = result.value;
    result.upper = kInf;
    return result;
}

double finite_n_capacity_density(int n, const ChannelParams& params, CapacityKind kind) {
    check_capacity_params(params);
    if (params.nu != 0.0) {
        throw std::invalid_argument("finite-n density is exact only at nu = 0");
    }
    const TransmissivitySpectrum spectrum = transmissivity_spectrum(n, params);
    double sum = 0.0;
    for (const double eta : spectrum.values) {
        sum += pure_loss(std::min(eta, 1.0 - 1e-15), kind);
    }
    return sum / n;
}

std::string to_json(const CapacityResult& result) {
    nlohmann::json j;
    j["value"] = result.value;
    j["lower"] = result.lower;
    j["upper"] = std::isinf(result.upper) ? nlohmann::json("inf") : nlohmann::json(result.upper);
    j["kind"] = to_string(result.kind);
    j["model"] = to_string(result.model);
    j["exact"] = result.is_exact;
    if (!result.is_exact) j["bound"] = "rci";
    j["nu"] = result.params.nu;
    j["lambda"] = result.params.lambda;
    j["mu"] = result.params.mu;
    j["gamma"] = result.params.gamma;
    j["quad_points"] = result.quadrature_points;
    return j.dump();
}

const char* to_string(CapacityKind kind) {
    switch (kind) {
        case CapacityKind::Q: return "q";
        case CapacityKind::Q2: return "q2";
        case CapacityKind::K: return "k";
    }
    return "?";
}

const char* to_string(CapacityStatus status) {
    switch (status) {
        case CapacityStatus::Zero: return "zero";
        case CapacityStatus::Positive: return "positive";
        case CapacityStatus::Unknown: return "unknown";
    }
    return "?";
}

}  // namespace dimfibre
