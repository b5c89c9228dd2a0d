#include "foresight/rng.hpp"

#include <cmath>
#include <numbers>

namespace foresight {

double Rng::gaussian(double mean, double stddev) noexcept {
  const double u1 = uniform_open_low();
  const double u2 = uniform();
  const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  return mean + stddev * z;
}

}  // namespace foresight
