#include "dimfibre/specialfn.hpp"

#include <cmath>
#include <stdexcept>

namespace dimfibre {

namespace {

void check_finite(double x) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument("laguerre argument must be finite");
    }
}

}  // namespace

double laguerre_gen_m1(int m, double x) {
    if (m < 0) {
        throw std::invalid_argument("laguerre order must be nonnegative");
    }
    check_finite(x);
    if (m == 0) return 1.0;
    double prev2 = 1.0;   // L_0
    double prev1 = -x;    // L_1
    for (int k = 2; k <= m; ++k) {
        const double cur = ((2.0 * k - 2.0 - x) * prev1 - (k - 2.0) * prev2) / k;
        prev2 = prev1;
        prev1 = cur;
    }
    return prev1;
}

LaguerreRow laguerre_row(int order_max, double x) {
    if (order_max < 0) {
        throw std::invalid_argument("laguerre order must be nonnegative");
    }
    check_finite(x);
    LaguerreRow row{order_max, x, {}};
    row.values.resize(static_cast<size_t>(order_max) + 1);
    row.values[0] = 1.0;
    if (order_max >= 1) row.values[1] = -x;
    for (int m = 2; m <= order_max; ++m) {
        row.values[m] =
            ((2.0 * m - 2.0 - x) * row.values[m - 1] - (m - 2.0) * row.values[m - 2]) / m;
    }
    return row;
}

double entropy_g(double nu) {
    if (!(nu >= 0.0)) {
        throw std::invalid_argument("entropy_g requires nu >= 0");
    }
    if (nu == 0.0) return 0.0;  // 0 log 0 = 0 convention
    return (nu + 1.0) * std::log2(nu + 1.0) - nu * std::log2(nu);
}

double memory_from_delay(double delta_t, double t_e) {
    if (!(t_e > 0.0)) {
        throw std::invalid_argument("memory_from_delay requires t_e > 0");
    }
    if (!(delta_t >= 0.0)) {
        throw std::invalid_argument("memory_from_delay requires delta_t >= 0");
    }
    return std::exp(-delta_t / t_e);
}

}  // namespace dimfibre
