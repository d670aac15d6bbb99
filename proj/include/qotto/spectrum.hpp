#pragma once

namespace qotto {

/// Energy spectrum of a single particle in a 1D infinite well, in reduced
/// units where hbar^2 pi^2 / 2 = 1, masses are multiples of a reference mass
/// and lengths multiples of a reference length:
///
///   E_n = n^2 / (mass * length^2),  n = 1..n_levels
///
/// The spectrum is fully determined by (mass, length); no wavefunctions or
/// operators are represented.
struct BoxSpectrum {
    double mass = 1.0;    // effective mass, > 0
    double length = 1.0;  // well width, > 0
    int n_levels = 2;     // retained levels, >= 2
};

/// Throws std::domain_error unless mass > 0, length > 0 and n_levels >= 2.
void validate(const BoxSpectrum& spec);

/// E_n for 1 <= n <= spec.n_levels. Computed as n^2 * (1 / (m L^2)) so that
/// energy_level(spec, n) == n^2 * energy_level(spec, 1) holds bit-for-bit.
/// Out-of-range n raises std::domain_error naming the offending index.
double energy_level(const BoxSpectrum& spec, int n);

/// E_upper - E_lower, strictly positive. Requires 1 <= n_lower < n_upper <= n_levels.
double level_gap(const BoxSpectrum& spec, int n_lower, int n_upper);

}  // namespace qotto
