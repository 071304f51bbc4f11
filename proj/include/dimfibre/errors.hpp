#pragma once

#include <stdexcept>

namespace dimfibre {

// Raised when a computation fails numerically (SVD non-convergence,
// quadrature budget exhausted). Invalid inputs throw std::invalid_argument
// instead, so callers can tell the two apart.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dimfibre
