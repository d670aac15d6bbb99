#include "qotto/spectrum.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qotto/errors.hpp"

namespace qotto {

void validate(const BoxSpectrum& spec) {
    if (!(spec.mass > 0.0) || !std::isfinite(spec.mass)) {
        throw std::domain_error("BoxSpectrum: mass must be finite and > 0, got " +
                                std::to_string(spec.mass));
    }
    if (!(spec.length > 0.0) || !std::isfinite(spec.length)) {
        throw std::domain_error("BoxSpectrum: length must be finite and > 0, got " +
                                std::to_string(spec.length));
    }
    if (spec.n_levels < 2) {
        throw std::domain_error("BoxSpectrum: n_levels must be >= 2, got " +
                                std::to_string(spec.n_levels));
    }
}

double energy_level(const BoxSpectrum& spec, int n) {
    validate(spec);
    if (n < 1 || n > spec.n_levels) {
        throw std::domain_error("energy_level: index " + std::to_string(n) +
                                " outside [1, " + std::to_string(spec.n_levels) + "]");
    }
    // One shared reciprocal keeps E_n == n^2 * E_1 an exact identity in
    // floating point; n^2 is exact for every representable level index.
    const double ground = 1.0 / (spec.mass * spec.length * spec.length);
    if (!std::isfinite(ground)) {
        throw NumericError("energy_level: ground energy overflowed for mass=" +
                           std::to_string(spec.mass) + " length=" +
                           std::to_string(spec.length));
    }
    const double energy = static_cast<double>(n) * static_cast<double>(n) * ground;
    if (!std::isfinite(energy)) {
        throw NumericError("energy_level: level " + std::to_string(n) + " overflowed");
    }
    return energy;
}

double level_gap(const BoxSpectrum& spec, int n_lower, int n_upper) {
    if (n_lower >= n_upper) {
        throw std::domain_error("level_gap: need n_lower < n_upper, got " +
                                std::to_string(n_lower) + " >= " + std::to_string(n_upper));
    }
    return energy_level(spec, n_upper) - energy_level(spec, n_lower);
}

}  // namespace qotto
