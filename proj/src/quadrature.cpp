#include "dimfibre/quadrature.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "dimfibre/errors.hpp"

namespace dimfibre {

namespace {

constexpr int kOrder = 15;

struct GaussRule {
    std::array<double, kOrder> nodes;    // on [-1, 1]
    std::array<double, kOrder> weights;  // sum to 2
};

// Nodes are the roots of the Legendre polynomial, found by Newton iteration
// from the Chebyshev-like initial guess; weights w = 2 / ((1 - x^2) P'^2).
GaussRule make_rule() {
    GaussRule rule;
    constexpr double pi = 3.14159265358979323846;
    for (int k = 0; k < kOrder; ++k) {
        double x = std::cos(pi * (k + 0.75) / (kOrder + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int m = 2; m <= kOrder; ++m) {
                const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
                p0 = p1;
                p1 = p2;
            }
            dp = kOrder * (x * p1 - p0) / (x * x - 1.0);
            const double step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-15) break;
        }
        rule.nodes[static_cast<size_t>(k)] = x;
        rule.weights[static_cast<size_t>(k)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

const GaussRule& rule() {
    static const GaussRule r = make_rule();
    return r;
}

double gauss_segment(const std::function<double(double)>& f, double a, double b,
                     long& evaluations) {
    const GaussRule& r = rule();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int k = 0; k < kOrder; ++k) {
        sum += r.weights[static_cast<size_t>(k)] * f(mid + half * r.nodes[static_cast<size_t>(k)]);
    }
    evaluations += kOrder;
    return half * sum;
}

struct Accumulator {
    double value = 0.0;
    double error = 0.0;
    long evaluations = 0;
    long budget = 0;
};

void refine(const std::function<double(double)>& f, double a, double b, double whole,
            double tol, int depth, Accumulator& acc) {
    if (acc.evaluations > acc.budget) {
        throw numeric_error("quadrature evaluation budget exhausted");
    }
    const double mid = 0.5 * (a + b);
    const double left = gauss_segment(f, a, mid, acc.evaluations);
    const double right = gauss_segment(f, mid, b, acc.evaluations);
    const double diff = std::abs(left + right - whole);
    if (diff <= tol || depth >= 48) {
        if (depth >= 48 && diff > tol) {
            throw numeric_error("quadrature failed to converge (max depth)");
        }
        acc.value += left + right;
        acc.error += diff;
        return;
    }
    refine(f, a, mid, left, 0.5 * tol, depth + 1, acc);
    refine(f, mid, b, right, 0.5 * tol, depth + 1, acc);
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                    double b, double abs_tol, long max_evaluations) {
    if (!(abs_tol > 0.0)) throw std::invalid_argument("abs_tol must be positive");
    if (a == b) return {0.0, 0.0, 0};
    Accumulator acc;
    acc.budget = max_evaluations;
    const double whole = gauss_segment(f, a, b, acc.evaluations);
    refine(f, a, b, whole, abs_tol, 0, acc);
    return {acc.value, acc.error, acc.evaluations};
}

}  // namespace dimfibre
