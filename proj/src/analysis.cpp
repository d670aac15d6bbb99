#include "qotto/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

#include "qotto/errors.hpp"

namespace qotto {
namespace {

std::string render_ratio(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

/// i-th point of a count-point uniform grid over [lo, hi]; pure index
/// formula so repeated calls are bit-identical.
double grid_point(double lo, double hi, int count, int i) {
    if (i == count - 1) {
        return hi;
    }
    return lo + (hi - lo) * (static_cast<double>(i) / static_cast<double>(count - 1));
}

}  // namespace

double carnot_efficiency(double t_c, double t_h) {
    if (!(t_c > 0.0) || !std::isfinite(t_c) || !std::isfinite(t_h)) {
        throw std::domain_error("carnot_efficiency: need finite temperatures with t_c > 0");
    }
    if (t_c > t_h) {
        throw std::domain_error("carnot_efficiency: baths must be oriented t_c <= t_h, got t_c=" +
                                std::to_string(t_c) + " t_h=" + std::to_string(t_h));
    }
    return 1.0 - t_c / t_h;
}

double classical_otto_r_carnot(double t_c, double t_h, double gamma) {
    if (!(t_c > 0.0) || !(t_h > t_c) || !std::isfinite(t_h)) {
        throw std::domain_error("classical_otto_r_carnot: need 0 < t_c < t_h");
    }
    if (!(gamma > 1.0) || !std::isfinite(gamma)) {
        throw std::domain_error("classical_otto_r_carnot: need gamma > 1, got " +
                                std::to_string(gamma));
    }
    return std::pow(t_h / t_c, 1.0 / (gamma - 1.0));
}

SweepGrid efficiency_sweep(std::span<const double> mass_ratios,
                           double r_lo, double r_hi, int count,
                           double t_c, double t_h, double gamma,
                           const SweepReference& ref) {
    if (!(r_lo > 0.0) || !(r_hi > r_lo) || !std::isfinite(r_hi)) {
        throw std::domain_error("efficiency_sweep: need 0 < r_lo < r_hi");
    }
    if (count < 2) {
        throw std::domain_error("efficiency_sweep: need count >= 2, got " +
                                std::to_string(count));
    }
    if (!(t_c > 0.0) || !(t_h > t_c) || !std::isfinite(t_h)) {
        throw std::domain_error("efficiency_sweep: need 0 < t_c < t_h");
    }
    if (!(ref.m_h > 0.0) || !(ref.l_h > 0.0) || ref.n_levels < 2) {
        throw std::domain_error("efficiency_sweep: reference spec must be valid");
    }
    for (double rho : mass_ratios) {
        if (!(rho > 0.0) || !std::isfinite(rho)) {
            throw std::domain_error("efficiency_sweep: mass ratios must be finite and > 0");
        }
    }

    SweepGrid grid;
    grid.axis_name = "compression_ratio";
    grid.r_carnot = classical_otto_r_carnot(t_c, t_h, gamma);
    grid.axis_values.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        grid.axis_values.push_back(grid_point(r_lo, r_hi, count, i));
    }
    for (size_t i = 1; i < grid.axis_values.size(); ++i) {
        if (!(grid.axis_values[i] > grid.axis_values[i - 1])) {
            throw std::domain_error("efficiency_sweep: grid step degenerates below "
                                    "double resolution; reduce count or widen the range");
        }
    }

    const double eta_car = carnot_efficiency(t_c, t_h);
    grid.series.reserve(mass_ratios.size());
    for (double rho : mass_ratios) {
        SweepSeries series;
        series.mass_ratio = rho;
        series.label = "m_h/m_c=" + render_ratio(rho);
        series.records.reserve(grid.axis_values.size());
        for (double r : grid.axis_values) {
            const double m_c = ref.m_h / rho;
            const double l_c = r * ref.l_h;
            SweepRecord record;
            record.axis = r;
            record.eta = two_level_efficiency(ref.m_h, m_c, ref.l_h, l_c);
            record.eta_over_carnot = record.eta / eta_car;
            const OttoCycleSpec spec{ref.m_h, m_c, ref.l_h, l_c, t_h, t_c, ref.n_levels};
            const CycleResult cycle = run_cycle(spec);
            record.work_extracted = cycle.work_extracted;
            record.regime = cycle.regime;
            series.records.push_back(record);
        }
        grid.series.push_back(std::move(series));
    }
    return grid;
}

OptimizationResult optimize_mass_ratio(const OptimizationSetup& fixed,
                                       double bracket_lo, double bracket_hi,
                                       double tol) {
    if (!(bracket_lo > 0.0) || !(bracket_hi > bracket_lo) || !std::isfinite(bracket_hi)) {
        throw std::domain_error("optimize_mass_ratio: need 0 < bracket_lo < bracket_hi");
    }
    if (!(tol > 0.0) || !std::isfinite(tol)) {
        throw std::domain_error("optimize_mass_ratio: need tol > 0");
    }

    OptimizationResult result;
    result.bracket_lo = bracket_lo;
    result.bracket_hi = bracket_hi;

    double best_ratio = bracket_lo;
    double best_value = -std::numeric_limits<double>::infinity();
    Regime best_regime = Regime::idle;
    long evaluations = 0;

    const auto objective = [&](double ratio) {
        const double m_c = ratio * fixed.m_h;
        const double l_c = fixed.r * fixed.l_h;
        const OttoCycleSpec spec{fixed.m_h, m_c, fixed.l_h, l_c,
                                 fixed.t_h, fixed.t_c, fixed.n_levels};
        const CycleResult cycle = run_cycle(spec);
        ++evaluations;
        if (cycle.work_extracted > best_value) {
            best_value = cycle.work_extracted;
            best_ratio = ratio;
            best_regime = cycle.regime;
        }
        return cycle.work_extracted;
    };

    // Coarse pass: locate the basin of the maximum on a fixed uniform grid.
    constexpr int kCoarsePoints = 64;
    int best_index = 0;
    double best_coarse = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kCoarsePoints; ++i) {
        const double x = grid_point(bracket_lo, bracket_hi, kCoarsePoints, i);
        const double v = objective(x);
        if (v > best_coarse) {
            best_coarse = v;
            best_index = i;
        }
    }

    // Golden-section refinement between the coarse neighbors of the best
    // grid point (the maximum of a unimodal objective lies there).
    double a = grid_point(bracket_lo, bracket_hi, kCoarsePoints,
                          std::max(0, best_index - 1));
    double b = grid_point(bracket_lo, bracket_hi, kCoarsePoints,
                          std::min(kCoarsePoints - 1, best_index + 1));
    constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5) - 1) / 2
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = objective(x1);
    double f2 = objective(x2);
    for (int iter = 0; iter < 200 && (b - a) > tol; ++iter) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = objective(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = objective(x1);
        }
    }

    result.evaluations = evaluations;
    if (best_regime == Regime::engine && best_value > 0.0) {
        result.best_mass_ratio = best_ratio;
        result.best_work_extracted = best_value;
        result.regime = best_regime;
    } else {
        // Nothing in the bracket runs as an engine: report an idle optimum
        // rather than failing, keeping the ratio inside the bracket.
        result.best_mass_ratio = best_ratio;
        result.best_work_extracted = 0.0;
        result.regime = Regime::idle;
    }
    return result;
}

}  // namespace qotto
