#include "qotto/cycle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qotto/errors.hpp"

namespace qotto {
namespace {

void check_positive(double value, const char* context, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::domain_error(std::string(context) + ": " + name +
                                " must be finite and > 0, got " + std::to_string(value));
    }
}

}  // namespace

void validate(const OttoCycleSpec& spec) {
    check_positive(spec.m_h, "OttoCycleSpec", "m_h");
    check_positive(spec.m_c, "OttoCycleSpec", "m_c");
    check_positive(spec.l_h, "OttoCycleSpec", "l_h");
    check_positive(spec.l_c, "OttoCycleSpec", "l_c");
    check_positive(spec.t_h, "OttoCycleSpec", "t_h");
    check_positive(spec.t_c, "OttoCycleSpec", "t_c");
    if (spec.n_levels < 2) {
        throw std::domain_error("OttoCycleSpec: n_levels must be >= 2, got " +
                                std::to_string(spec.n_levels));
    }
}

double compression_ratio(const OttoCycleSpec& spec) {
    validate(spec);
    return spec.l_c / spec.l_h;
}

std::string_view to_string(Regime regime) {
    switch (regime) {
        case Regime::engine: return "engine";
        case Regime::refrigerator: return "refrigerator";
        case Regime::heater: return "heater";
        case Regime::accelerator: return "accelerator";
        case Regime::idle: return "idle";
    }
    return "idle";
}

Regime classify_regime(double q_hot, double q_cold, double work, double zero_tol) {
    if (!(zero_tol >= 0.0) || !std::isfinite(zero_tol)) {
        throw std::domain_error("classify_regime: zero_tol must be finite and >= 0");
    }
    if (std::abs(q_hot) <= zero_tol || std::abs(q_cold) <= zero_tol ||
        std::abs(work) <= zero_tol) {
        return Regime::idle;
    }
    if (q_hot > 0.0 && q_cold < 0.0) {
        return work < 0.0 ? Regime::engine : Regime::accelerator;
    }
    if (q_hot < 0.0 && q_cold > 0.0) {
        // Heat leaves through the hot-labelled bath while the cold one is
        // drained: refrigeration regardless of the work sign (W < 0 occurs
        // only when the baths are reverse-ordered, T_c > T_h).
        return Regime::refrigerator;
    }
    if (q_hot < 0.0 && q_cold < 0.0) {
        return Regime::heater;  // work in, heat dumped to both baths
    }
    // Both heats positive: work in, both baths drained into the substance.
    return Regime::accelerator;
}

CycleResult run_cycle(const OttoCycleSpec& spec) {
    validate(spec);

    const BoxSpectrum hot{spec.m_h, spec.l_h, spec.n_levels};
    const BoxSpectrum cold{spec.m_c, spec.l_c, spec.n_levels};

    CycleResult result;
    result.states[0] = StageState{'A', hot, thermal_populations(hot, spec.t_h)};
    result.states[2] = StageState{'C', cold, thermal_populations(cold, spec.t_c)};
    // Adiabatic strokes: the spectrum changes, the populations do not.
    result.states[1] = StageState{'B', cold, result.states[0].state};
    result.states[3] = StageState{'D', hot, result.states[2].state};

    const auto& p_a = result.states[0].state.populations;
    const auto& p_c = result.states[2].state.populations;
    double q_hot = 0.0;
    double q_cold = 0.0;
    for (int n = 1; n <= spec.n_levels; ++n) {
        const size_t i = static_cast<size_t>(n - 1);
        const double dp = p_a[i] - p_c[i];
        q_hot += energy_level(hot, n) * dp;
        q_cold += energy_level(cold, n) * -dp;
    }
    if (!std::isfinite(q_hot)) {
        throw NumericError("run_cycle: heat sum overflowed at stage A (hot spectrum)");
    }
    if (!std::isfinite(q_cold)) {
        throw NumericError("run_cycle: heat sum overflowed at stage C (cold spectrum)");
    }

    result.q_hot = q_hot;
    result.q_cold = q_cold;
    result.work = -q_hot - q_cold;
    result.work_extracted = -result.work;

    const double scale = std::max({std::abs(q_hot), std::abs(q_cold), std::abs(result.work)});
    result.regime = classify_regime(q_hot, q_cold, result.work, 1e-12 * scale);
    if (result.regime == Regime::engine) {
        result.efficiency = -result.work / result.q_hot;
    }
    return result;
}

double two_level_efficiency(double m_h, double m_c, double l_h, double l_c) {
    check_positive(m_h, "two_level_efficiency", "m_h");
    check_positive(m_c, "two_level_efficiency", "m_c");
    check_positive(l_h, "two_level_efficiency", "l_h");
    check_positive(l_c, "two_level_efficiency", "l_c");
    return 1.0 - (m_h / m_c) * (l_h / l_c) * (l_h / l_c);
}

bool extraction_condition(const OttoCycleSpec& spec) {
    validate(spec);
    const BoxSpectrum hot{spec.m_h, spec.l_h, spec.n_levels};
    const BoxSpectrum cold{spec.m_c, spec.l_c, spec.n_levels};
    const double gap_ratio = level_gap(hot, 1, 2) / level_gap(cold, 1, 2);
    return gap_ratio > 1.0 && spec.t_h / spec.t_c > gap_ratio;
}

}  // namespace qotto
