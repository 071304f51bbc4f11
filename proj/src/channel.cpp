#include "dimfibre/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dimfibre {

void ChannelParams::validate() const {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("lambda must be in [0, 1], got " + std::to_string(lambda));
    }
    if (!(mu >= 0.0 && mu < 1.0)) {
        throw std::invalid_argument("mu must be in [0, 1), got " + std::to_string(mu));
    }
    if (!(nu >= 0.0) || !std::isfinite(nu)) {
        throw std::invalid_argument("nu must be finite and >= 0, got " + std::to_string(nu));
    }
    if (!(gamma > 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("gamma must be in (0, 1], got " + std::to_string(gamma));
    }
}

}  // namespace dimfibre
