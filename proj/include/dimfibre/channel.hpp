#pragma once

namespace dimfibre {

// Physical parameters of a fibre instance.
//
// lambda  single-signal transmissivity, in [0, 1]
// mu      memory parameter, in [0, 1)
// nu      thermal photon number of the local baths, >= 0
// gamma   transversal memoryless transmissivity, in (0, 1]
struct ChannelParams {
    double lambda = 0.5;
    double mu = 0.0;
    double nu = 0.0;
    double gamma = 1.0;

    // Throws std::invalid_argument when any field is out of range.
    void validate() const;
};

}  // namespace dimfibre
