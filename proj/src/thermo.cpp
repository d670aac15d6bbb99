#include "qotto/thermo.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qotto/errors.hpp"

namespace qotto {
namespace {

void check_state(const ThermalState& state) {
    if (state.populations.empty()) {
        throw std::domain_error("ThermalState: populations are empty");
    }
    double sum = 0.0;
    for (double p : state.populations) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw std::domain_error("ThermalState: populations must be finite and >= 0");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::domain_error("ThermalState: populations sum to " + std::to_string(sum) +
                                ", expected 1");
    }
}

}  // namespace

double partition_function(const BoxSpectrum& spec, double temperature) {
    validate(spec);
    if (!(temperature > 0.0) || !std::isfinite(temperature)) {
        throw std::domain_error("partition_function: temperature must be finite and > 0, got " +
                                std::to_string(temperature));
    }
    // Z = exp(-E_1/T) * sum_n exp(-(E_n - E_1)/T).  Factoring the ground
    // term keeps the sum itself well conditioned at low temperature; the
    // leading factor can still underflow to 0 once E_1/T passes ~700, which
    // callers that only need population ratios avoid by going through
    // thermal_populations instead.
    const double e1 = energy_level(spec, 1);
    double shifted_sum = 0.0;
    for (int n = 1; n <= spec.n_levels; ++n) {
        shifted_sum += std::exp(-(energy_level(spec, n) - e1) / temperature);
    }
    const double z = std::exp(-e1 / temperature) * shifted_sum;
    if (std::isnan(z)) {
        throw NumericError("partition_function: result is NaN");
    }
    return z;
}

ThermalState thermal_populations(const BoxSpectrum& spec, double temperature) {
    validate(spec);
    if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
        throw std::domain_error("thermal_populations: temperature must be finite and >= 0, got " +
                                std::to_string(temperature));
    }
    ThermalState state;
    state.temperature = temperature;
    state.populations.assign(static_cast<size_t>(spec.n_levels), 0.0);
    if (temperature == 0.0) {
        state.populations[0] = 1.0;  // everything condenses into the ground level
        return state;
    }
    // Shifted Boltzmann weights exp(-(E_n - E_1)/T) never overflow and give
    // the same normalized populations as the raw weights.
    const double e1 = energy_level(spec, 1);
    double norm = 0.0;
    for (int n = 1; n <= spec.n_levels; ++n) {
        const double w = std::exp(-(energy_level(spec, n) - e1) / temperature);
        state.populations[static_cast<size_t>(n - 1)] = w;
        norm += w;
    }
    if (!std::isfinite(norm) || norm <= 0.0) {
        throw NumericError("thermal_populations: normalization failed");
    }
    for (double& p : state.populations) {
        p /= norm;
    }
    return state;
}

double mean_energy(const BoxSpectrum& spec, const ThermalState& state) {
    validate(spec);
    check_state(state);
    if (state.populations.size() != static_cast<size_t>(spec.n_levels)) {
        throw std::domain_error("mean_energy: state has " +
                                std::to_string(state.populations.size()) +
                                " populations for " + std::to_string(spec.n_levels) +
                                " levels");
    }
    double acc = 0.0;
    for (int n = 1; n <= spec.n_levels; ++n) {
        acc += energy_level(spec, n) * state.populations[static_cast<size_t>(n - 1)];
    }
    if (!std::isfinite(acc)) {
        throw NumericError("mean_energy: accumulation overflowed");
    }
    return acc;
}

int choose_truncation(double mass, double length, double t_max, double tail_tolerance) {
    BoxSpectrum probe{mass, length, 2};
    validate(probe);
    if (!(t_max > 0.0) || !std::isfinite(t_max)) {
        throw std::domain_error("choose_truncation: t_max must be finite and > 0");
    }
    if (!(tail_tolerance > 0.0) || !(tail_tolerance < 1.0)) {
        throw std::domain_error("choose_truncation: tail_tolerance must be in (0, 1)");
    }
    const double ground = 1.0 / (mass * length * length);
    // Smallest N >= 2 whose first omitted Boltzmann factor, relative to the
    // ground level, is already below the tolerance.
    constexpr int kMaxLevels = 1'000'000;
    for (int n = 2; n <= kMaxLevels; ++n) {
        const double next = static_cast<double>(n + 1) * static_cast<double>(n + 1);
        const double tail = std::exp(-(next - 1.0) * ground / t_max);
        if (tail < tail_tolerance) {
            return n;
        }
    }
    throw NumericError("choose_truncation: no truncation below " +
                       std::to_string(kMaxLevels) + " levels for t_max=" +
                       std::to_string(t_max));
}

}  // namespace qotto
