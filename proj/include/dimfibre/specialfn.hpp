#pragma once

#include <vector>

namespace dimfibre {

// Batch of generalised Laguerre values L_m^(-1)(x) for m = 0..order_max.
struct LaguerreRow {
    int order_max;
    double x;
    std::vector<double> values;  // values[m] = L_m^(-1)(x)
};

// L_m^(-1)(x) via the three-term recurrence
//   m L_m = (2m - 2 - x) L_{m-1} - (m - 2) L_{m-2},  L_0 = 1, L_1 = -x.
double laguerre_gen_m1(int m, double x);

LaguerreRow laguerre_row(int order_max, double x);

// Bosonic entropy g(nu) = (nu+1) log2(nu+1) - nu log2(nu), with g(0) = 0.
double entropy_g(double nu);

// Memory parameter from the signal delay: exp(-delta_t / t_e).
double memory_from_delay(double delta_t, double t_e);

}  // namespace dimfibre
