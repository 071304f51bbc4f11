#include "dimfibre/spectral.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "dimfibre/errors.hpp"
#include "dimfibre/netsim.hpp"
#include "dimfibre/toeplitz.hpp"
#include "json.hpp"

namespace dimfibre {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void check_symbol_args(double x, double lambda, double mu) {
    if (!(x >= 0.0 && x <= kTwoPi)) {
        throw std::invalid_argument("x must lie in [0, 2pi]");
    }
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("lambda must be in [0, 1]");
    }
    if (!(mu >= 0.0 && mu < 1.0)) {
        throw std::invalid_argument("mu must be in [0, 1)");
    }
}

QCrossing classify_cos_level(double c) {
    if (c >= 1.0) return {QCrossing::AllAbove, 0.0};
    if (c <= -1.0) return {QCrossing::NoneAbove, 0.0};
    return {QCrossing::CrossAt, 2.0 * std::acos(c)};
}

}  // namespace

double eta_dim(double x, double lambda, double mu) {
    check_symbol_args(x, lambda, mu);
    if (lambda == 0.0) return 0.0;
    if (lambda == 1.0) return 1.0;
    const double denom = 1.0 + mu - 2.0 * std::sqrt(mu) * std::cos(x / 2.0);
    return std::pow(lambda, (1.0 - mu) / denom);
}

double eta_lim(double x, double lambda, double mu) {
    check_symbol_args(x, lambda, mu);
    const double cross = 2.0 * std::sqrt(mu * lambda) * std::cos(x / 2.0);
    return (mu + lambda - cross) / (1.0 + mu * lambda - cross);
}

double eta_symbol(double x, double lambda, double mu, SymbolModel model) {
    return model == SymbolModel::Dim ? eta_dim(x, lambda, mu) : eta_lim(x, lambda, mu);
}

double eta_sup(double lambda, double mu, SymbolModel model) {
    check_symbol_args(0.0, lambda, mu);
    const double sq = std::sqrt(mu);
    if (model == SymbolModel::Dim) {
        if (lambda == 0.0) return 0.0;
        return std::pow(lambda, (1.0 - sq) / (1.0 + sq));
    }
    const double r = (sq + std::sqrt(lambda)) / (1.0 + std::sqrt(mu * lambda));
    return r * r;
}

QCrossing eta_crossing(double lambda, double mu, SymbolModel model, double target) {
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw std::invalid_argument("eta_crossing requires lambda in (0, 1)");
    }
    if (!(mu > 0.0 && mu < 1.0)) {
        throw std::invalid_argument("eta_crossing requires mu in (0, 1)");
    }
    if (target <= 0.0) return {QCrossing::AllAbove, 0.0};
    if (target >= 1.0) return {QCrossing::NoneAbove, 0.0};
    // eta(x) > target iff cos(x/2) < c, with c from the inverted symbol.
    double c;
    if (model == SymbolModel::Dim) {
        const double width = (1.0 - mu) * std::log(1.0 / lambda) / std::log(1.0 / target);
        c = (1.0 + mu - width) / (2.0 * std::sqrt(mu));
    } else {
        c = (mu + lambda - target * (1.0 + mu * lambda)) /
            (2.0 * std::sqrt(mu * lambda) * (1.0 - target));
    }
    return classify_cos_level(c);
}

QCrossing q_positive_crossing(double lambda, double mu, SymbolModel model) {
    return eta_crossing(lambda, mu, model, 0.5);
}

std::vector<double> model_spectrum(int n, double lambda, double mu, double gamma,
                                   SymbolModel model) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must be in (0, 1]");
    if (model == SymbolModel::Dim) {
        return transmissivity_spectrum(n, ChannelParams{lambda, mu, 0.0, gamma}).values;
    }
    // localised model: squared singular values of the single-segment matrix
    const FiniteMCoefficients c = finite_m_coefficients(1, n, lambda, mu);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(std::sqrt(gamma) * c.a_matrix);
    if (svd.info() != Eigen::Success) throw numeric_error("SVD did not converge");
    std::vector<double> eta(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double s = svd.singularValues()(n - 1 - i);
        eta[static_cast<size_t>(i)] = std::clamp(s * s, 0.0, 1.0);
    }
    return eta;
}

TailReport tail_convergence_report(int n, double lambda, double mu, SymbolModel model) {
    const std::vector<double> eta = model_spectrum(n, lambda, mu, 1.0, model);

    TailReport report;
    report.n = n;
    report.j_start = static_cast<int>(std::ceil(std::pow(n, 0.75)));
    report.max_deviation = 0.0;
    for (int j = report.j_start; j <= n; ++j) {
        const double x = std::min(kTwoPi, kTwoPi * j / n);
        const double symbol = eta_symbol(x, lambda, mu, model);
        report.max_deviation =
            std::max(report.max_deviation, std::abs(eta[static_cast<size_t>(j - 1)] - symbol));
    }
    // band widened by a roundoff guard so exact-boundary spectra count as inside
    const double lo = eta_symbol(0.0, lambda, mu, model) - 1e-12;
    const double hi = eta_symbol(kTwoPi, lambda, mu, model) + 1e-12;
    int outside = 0;
    for (const double e : eta) {
        if (e < lo || e > hi) ++outside;
    }
    report.outside_fraction = static_cast<double>(outside) / n;
    return report;
}

std::string to_json(const TailReport& report) {
    nlohmann::json j;
    j["n"] = report.n;
    j["j_start"] = report.j_start;
    j["max_deviation"] = report.max_deviation;
    j["outside_fraction"] = report.outside_fraction;
    return j.dump();
}

const char* to_string(SymbolModel model) {
    return model == SymbolModel::Dim ? "dim" : "lim";
}

}  // namespace dimfibre
