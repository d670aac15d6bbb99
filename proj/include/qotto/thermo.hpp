#pragma once

#include <vector>

#include "qotto/spectrum.hpp"

namespace qotto {

/// Canonical occupation probabilities over a truncated spectrum, p_1..p_N.
/// Boltzmann's constant is 1, so temperatures carry energy units.
struct ThermalState {
    std::vector<double> populations;  // sum to 1 within 1e-12
    double temperature = 0.0;         // bath temperature that produced them
};

/// Z = sum_n exp(-E_n / T) over the retained levels. The ground-state weight
/// exp(-E_1/T) is factored out before summing, so the shifted sum stays
/// accurate at low T; Z itself can underflow to 0 once E_1/T exceeds ~700.
/// Requires T > 0.
double partition_function(const BoxSpectrum& spec, double temperature);

/// Gibbs distribution p_n = exp(-E_n/T) / Z, evaluated through shifted
/// weights exp(-(E_n - E_1)/T) so low temperatures cannot underflow the
/// normalization. T = 0 returns the analytic limit (1, 0, ..., 0).
/// Requires T >= 0.
ThermalState thermal_populations(const BoxSpectrum& spec, double temperature);

/// <H> = sum_n E_n p_n. The population count must match spec.n_levels.
double mean_energy(const BoxSpectrum& spec, const ThermalState& state);

/// Smallest N >= 2 with exp(-(E_{N+1} - E_1)/t_max) < tail_tolerance: the
/// per-level Boltzmann weight discarded by truncating at N stays below the
/// tolerance at the hottest bath the spectrum will see.
/// Requires t_max > 0 and 0 < tail_tolerance < 1.
int choose_truncation(double mass, double length, double t_max,
                      double tail_tolerance = 1e-12);

}  // namespace qotto
