#pragma once

#include <string>
#include <vector>

namespace dimfibre {

enum class SymbolModel { Dim, Lim };

// Effective transmissivity symbol of the delocalised model:
//   eta(x) = lambda^((1 - mu) / (1 + mu - 2 sqrt(mu) cos(x/2))),  x in [0, 2pi].
double eta_dim(double x, double lambda, double mu);

// Effective transmissivity symbol of the localised (single-interaction) model:
//   eta(x) = (mu + lambda - 2 sqrt(mu lambda) cos(x/2))
//          / (1 + mu lambda - 2 sqrt(mu lambda) cos(x/2)).
double eta_lim(double x, double lambda, double mu);

double eta_symbol(double x, double lambda, double mu, SymbolModel model);

// Supremum of the symbol, attained at x = 2pi.
double eta_sup(double lambda, double mu, SymbolModel model);

// Location of the first x where the (nondecreasing) symbol crosses a level.
struct QCrossing {
    enum Kind { AllAbove, NoneAbove, CrossAt } kind;
    double x_star;  // meaningful only for CrossAt
};

// Crossing of eta(x) = 1/2, the kink of the quantum-capacity integrand.
// Closed form; requires lambda in (0,1) and mu in (0,1).
QCrossing q_positive_crossing(double lambda, double mu, SymbolModel model);

// Generalisation to an arbitrary target level in (0, 1); targets <= 0 give
// AllAbove, targets >= 1 give NoneAbove.
QCrossing eta_crossing(double lambda, double mu, SymbolModel model, double target);

// Finite-n transmissivities of the chosen model, sorted nondecreasing and
// scaled by gamma. The delocalised model uses the closed-form Toeplitz
// matrix, the localised one the single-segment interferometer matrix.
std::vector<double> model_spectrum(int n, double lambda, double mu, double gamma,
                                   SymbolModel model);

// Tail agreement between the finite-n transmissivities and the symbol,
// over the window j in [j_start, n] with j_start = ceil(n^(3/4)).
struct TailReport {
    int n;
    int j_start;
    double max_deviation;
    double outside_fraction;  // fraction of eta_j outside [eta(0), eta(2pi)]
};

TailReport tail_convergence_report(int n, double lambda, double mu, SymbolModel model);

std::string to_json(const TailReport& report);

const char* to_string(SymbolModel model);

}  // namespace dimfibre
