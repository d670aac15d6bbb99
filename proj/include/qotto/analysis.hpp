#pragma once

#include <span>
#include <string>
#include <vector>

#include "qotto/cycle.hpp"

namespace qotto {

/// eta_Car = 1 - T_c/T_h. Requires 0 < t_c <= t_h.
double carnot_efficiency(double t_c, double t_h);

/// Compression ratio of the classical Otto cycle that reaches Carnot
/// efficiency between the same baths: r = (T_h/T_c)^(1/(gamma-1)).
/// Requires 0 < t_c < t_h and gamma > 1.
double classical_otto_r_carnot(double t_c, double t_h, double gamma);

struct SweepRecord {
    double axis = 0.0;             // compression ratio r
    double eta = 0.0;              // closed-form two-level efficiency
    double eta_over_carnot = 0.0;
    double work_extracted = 0.0;   // from a full cycle at the reference spec
    Regime regime = Regime::idle;
};

struct SweepSeries {
    std::string label;      // mass ratio m_h/m_c, rendered
    double mass_ratio = 1.0;
    std::vector<SweepRecord> records;  // one per axis value, axis-ascending
};

struct SweepGrid {
    std::string axis_name;          // "compression_ratio"
    std::vector<double> axis_values;  // strictly increasing
    std::vector<SweepSeries> series;
    double r_carnot = 0.0;          // classical marker for the same baths
};

/// Fixed hot-stage parameters the sweep builds its cycles around; the cold
/// stage follows from the mass ratio and the compression ratio.
struct SweepReference {
    double m_h = 1.0;
    double l_h = 1.0;
    int n_levels = 2;
};

/// Tabulates, for each mass ratio rho = m_h/m_c and each r on a uniform
/// count-point grid over [r_lo, r_hi], the closed-form efficiency, its ratio
/// to Carnot, and the extracted work and regime of the full cycle with
/// m_c = m_h/rho, L_c = r L_h. Rows with eta <= 0 are kept. Deterministic:
/// grid points come from the index formula, records are assembled in order.
/// Requires r_lo > 0, r_hi > r_lo, count >= 2, t_h > t_c > 0, gamma > 1.
SweepGrid efficiency_sweep(std::span<const double> mass_ratios,
                           double r_lo, double r_hi, int count,
                           double t_c, double t_h, double gamma,
                           const SweepReference& ref = {});

/// Cycle knobs held fixed while the cold-stage mass varies.
struct OptimizationSetup {
    double r = 1.0;    // compression ratio L_c/L_h
    double l_h = 1.0;
    double m_h = 1.0;
    double t_h = 10.0;
    double t_c = 1.0;
    int n_levels = 2;
};

struct OptimizationResult {
    double best_mass_ratio = 0.0;      // m_c/m_h at the maximum
    double best_work_extracted = 0.0;  // 0 when no engine point was found
    long evaluations = 0;              // objective (run_cycle) calls
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    Regime regime = Regime::idle;      // regime at the reported optimum
};

/// Maximizes work_extracted over the cold/hot mass ratio m_c/m_h inside
/// [bracket_lo, bracket_hi]: a 64-point coarse grid followed by
/// golden-section refinement around the best grid point down to interval
/// width tol. The reported value dominates every sample evaluated. If no
/// sample operates as an engine the result carries best_work_extracted = 0
/// and the idle regime instead of failing.
OptimizationResult optimize_mass_ratio(const OptimizationSetup& fixed,
                                       double bracket_lo, double bracket_hi,
                                       double tol);

}  // namespace qotto
