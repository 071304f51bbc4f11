#pragma once

#include <functional>

namespace dimfibre {

struct QuadratureResult {
    double value;
    double error_estimate;
    long evaluations;
};

// Adaptive composite Gauss-Legendre integration of f on [a, b] to an
// absolute tolerance. Throws numeric_error when the evaluation budget is
// exhausted before the tolerance is met.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tol,
                                    long max_evaluations = 4'000'000);

}  // namespace dimfibre
