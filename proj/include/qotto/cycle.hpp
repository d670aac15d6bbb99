#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "qotto/spectrum.hpp"
#include "qotto/thermo.hpp"

namespace qotto {

/// The six physical knobs of the four-stroke Otto cycle plus the shared
/// level truncation. T_h >= T_c is not required; reverse-oriented operation
/// is legal input and classified from the resulting sign pattern.
struct OttoCycleSpec {
    double m_h = 1.0;  // effective mass while coupled to the hot bath
    double m_c = 2.0;  // effective mass while coupled to the cold bath
    double l_h = 1.0;  // well width at the hot stage
    double l_c = 1.0;  // well width at the cold stage
    double t_h = 10.0;
    double t_c = 1.0;
    int n_levels = 2;  // truncation shared by both spectra
};

/// Throws std::domain_error unless every physical field is > 0 and n_levels >= 2.
void validate(const OttoCycleSpec& spec);

/// Compression ratio r = L_c / L_h; r = 1 is the incompressible machine.
double compression_ratio(const OttoCycleSpec& spec);

/// Sign-pattern classification of (Q_h, Q_c, W). Heat is positive into the
/// working substance; W < 0 means net work extracted.
enum class Regime { engine, refrigerator, heater, accelerator, idle };

std::string_view to_string(Regime regime);

/// Classifies the heat/work sign pattern. Any of the three magnitudes at or
/// below zero_tol yields idle, so sign flutter near a regime boundary cannot
/// fabricate an operating mode. zero_tol must be finite and >= 0.
///
///   engine        Q_h > 0, Q_c < 0, W < 0
///   refrigerator  Q_h < 0, Q_c > 0          (either W sign: with W < 0 the
///                 machine extracts work while pumping heat into the
///                 hot-labelled bath, which happens when T_c > T_h)
///   heater        Q_h < 0, Q_c < 0, W > 0
///   accelerator   Q_h > 0, Q_c < 0, W > 0
Regime classify_regime(double q_hot, double q_cold, double work, double zero_tol);

/// Spectrum plus populations at one of the four cycle corners.
struct StageState {
    char label = '?';  // 'A', 'B', 'C' or 'D'
    BoxSpectrum spectrum;
    ThermalState state;
};

struct CycleResult {
    double q_hot = 0.0;   // heat absorbed from the hot bath
    double q_cold = 0.0;  // heat absorbed from the cold bath
    double work = 0.0;    // net work, negative when extracted
    double work_extracted = 0.0;  // -work
    std::optional<double> efficiency;  // -W/Q_h, engine regime only
    Regime regime = Regime::idle;
    std::array<StageState, 4> states;  // A, B, C, D
};

/// Runs one full cycle:
///   A  equilibrium with the hot bath on the (m_h, l_h) spectrum
///   B  adiabatic stroke to (m_c, l_c); populations carried over unchanged
///   C  equilibrium with the cold bath on the (m_c, l_c) spectrum
///   D  adiabatic stroke back to (m_h, l_h); populations carried over
///
///   Q_h = sum_n E_{n,h} [p_n(A) - p_n(C)]
///   Q_c = sum_n E_{n,c} [p_n(C) - p_n(A)]
///   W   = -Q_h - Q_c            (energy conservation over the closed cycle)
///
/// Throws NumericError naming the stage if a spectrum or heat sum overflows.
CycleResult run_cycle(const OttoCycleSpec& spec);

/// Closed-form two-level efficiency 1 - (m_h/m_c)(L_h/L_c)^2. Because the
/// box spectrum scales uniformly across levels, run_cycle reproduces this
/// value for every truncation, not just N = 2. Values <= 0 mean the
/// parameters do not support work extraction.
double two_level_efficiency(double m_h, double m_c, double l_h, double l_c);

/// Work-extraction condition on the two lowest levels:
/// T_h/T_c > Delta_h/Delta_c > 1 with strict comparisons.
bool extraction_condition(const OttoCycleSpec& spec);

}  // namespace qotto
