#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "qotto/analysis.hpp"

using qotto::carnot_efficiency;
using qotto::classical_otto_r_carnot;
using qotto::efficiency_sweep;
using qotto::OptimizationResult;
using qotto::OptimizationSetup;
using qotto::optimize_mass_ratio;
using qotto::OttoCycleSpec;
using qotto::Regime;
using qotto::run_cycle;
using qotto::SweepGrid;
using qotto::SweepReference;
using qotto::two_level_efficiency;

TEST_CASE("carnot efficiency fixtures") {
    CHECK(carnot_efficiency(1.0, 12.0) == doctest::Approx(11.0 / 12.0).epsilon(1e-15));
    CHECK(carnot_efficiency(2.0, 2.0) == 0.0);
    CHECK(carnot_efficiency(1.0, 2.0) == 0.5);
    CHECK_THROWS_AS(carnot_efficiency(3.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(carnot_efficiency(0.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(carnot_efficiency(-1.0, 2.0), std::domain_error);
}

TEST_CASE("carnot-matching classical compression ratio") {
    CHECK(std::abs(classical_otto_r_carnot(1.0, 12.0, 3.0) - 3.464101615) <= 1e-9);
    CHECK(classical_otto_r_carnot(1.0, 12.0, 3.0) ==
          doctest::Approx(std::sqrt(12.0)).epsilon(1e-15));
    CHECK(classical_otto_r_carnot(1.0, 4.0, 3.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(classical_otto_r_carnot(1.0, 12.0, 2.0) == doctest::Approx(12.0).epsilon(1e-14));
    CHECK_THROWS_AS(classical_otto_r_carnot(1.0, 1.0, 3.0), std::domain_error);
    CHECK_THROWS_AS(classical_otto_r_carnot(2.0, 1.0, 3.0), std::domain_error);
    CHECK_THROWS_AS(classical_otto_r_carnot(1.0, 12.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(classical_otto_r_carnot(0.0, 12.0, 3.0), std::domain_error);
}

TEST_CASE("sweep grid structure") {
    const std::vector<double> ratios{0.25, 0.5, 1.0, 2.0};
    const SweepGrid grid = efficiency_sweep(ratios, 0.5, 4.0, 200, 1.0, 12.0, 3.0);
    CHECK(grid.axis_name == "compression_ratio");
    CHECK(grid.r_carnot == classical_otto_r_carnot(1.0, 12.0, 3.0));
    REQUIRE(grid.axis_values.size() == 200);
    CHECK(grid.axis_values.front() == 0.5);
    CHECK(grid.axis_values.back() == 4.0);
    for (size_t i = 1; i < grid.axis_values.size(); ++i) {
        CHECK(grid.axis_values[i] > grid.axis_values[i - 1]);
    }
    REQUIRE(grid.series.size() == 4);
    CHECK(grid.series[0].label == "m_h/m_c=0.25");
    CHECK(grid.series[2].label == "m_h/m_c=1");
    for (size_t s = 0; s < grid.series.size(); ++s) {
        CHECK(grid.series[s].mass_ratio == ratios[s]);
        REQUIRE(grid.series[s].records.size() == grid.axis_values.size());
        for (size_t i = 0; i < grid.axis_values.size(); ++i) {
            CHECK(grid.series[s].records[i].axis == grid.axis_values[i]);
        }
    }
}

TEST_CASE("sweep records agree with the closed form and the full cycle") {
    const std::vector<double> ratios{0.5, 1.0, 2.0};
    const SweepReference ref{1.0, 1.0, 2};
    const SweepGrid grid = efficiency_sweep(ratios, 0.5, 4.0, 57, 1.0, 12.0, 3.0, ref);
    const double eta_car = carnot_efficiency(1.0, 12.0);
    for (const auto& series : grid.series) {
        for (const auto& record : series.records) {
            const double m_c = ref.m_h / series.mass_ratio;
            const double l_c = record.axis * ref.l_h;
            // exact recomputation, not approximate
            CHECK(record.eta == two_level_efficiency(ref.m_h, m_c, ref.l_h, l_c));
            CHECK(record.eta_over_carnot == record.eta / eta_car);
            const OttoCycleSpec spec{ref.m_h, m_c, ref.l_h, l_c, 12.0, 1.0, ref.n_levels};
            const auto cycle = run_cycle(spec);
            CHECK(record.work_extracted == cycle.work_extracted);
            CHECK(record.regime == cycle.regime);
        }
    }
}

TEST_CASE("constant-mass series reaches Carnot only at the matching ratio") {
    // grid {1, 1.5, ..., 4} holds r = 2 where eta = 1 - 1/4
    const std::vector<double> ratios{1.0};
    const SweepGrid grid = efficiency_sweep(ratios, 1.0, 4.0, 7, 1.0, 12.0, 3.0);
    const auto& records = grid.series[0].records;
    CHECK(records[2].axis == 2.0);
    CHECK(records[2].eta == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(records[2].eta_over_carnot == doctest::Approx(9.0 / 11.0).epsilon(1e-14));
    CHECK(records[2].regime == Regime::engine);
    CHECK(records[2].work_extracted > 0.0);
    // r = 1 with equal masses moves nothing
    CHECK(records[0].eta == 0.0);
    CHECK(records[0].regime == Regime::idle);
}

TEST_CASE("negative-efficiency rows are kept, not dropped") {
    const std::vector<double> ratios{1.0};
    const SweepGrid grid = efficiency_sweep(ratios, 0.5, 4.0, 8, 1.0, 12.0, 3.0);
    CHECK(grid.series[0].records.front().axis == 0.5);
    CHECK(grid.series[0].records.front().eta == doctest::Approx(-3.0).epsilon(1e-14));
    CHECK(grid.series[0].records.front().regime != Regime::engine);
}

TEST_CASE("engine rows never beat Carnot; the touch point sits at sqrt(rho Th/Tc)") {
    const std::vector<double> ratios{0.5, 1.0, 2.0};
    const SweepGrid grid = efficiency_sweep(ratios, 0.5, 6.0, 300, 1.0, 12.0, 3.0);
    for (const auto& series : grid.series) {
        bool bracketed = false;
        const double touch = std::sqrt(series.mass_ratio * 12.0);
        for (size_t i = 0; i < series.records.size(); ++i) {
            const auto& record = series.records[i];
            if (record.regime == Regime::engine) {
                CHECK(record.eta_over_carnot <= 1.0 + 1e-12);
            }
            if (i > 0) {
                const double lo = series.records[i - 1].eta_over_carnot - 1.0;
                const double hi = record.eta_over_carnot - 1.0;
                if (lo < 0.0 && hi >= 0.0) {
                    bracketed = true;
                    CHECK(series.records[i - 1].axis <= touch);
                    CHECK(record.axis >= touch * (1.0 - 1e-12));
                }
            }
        }
        CHECK(bracketed);
    }
}

TEST_CASE("sweeps are deterministic") {
    const std::vector<double> ratios{0.25, 1.0, 3.0};
    const SweepGrid a = efficiency_sweep(ratios, 0.7, 3.3, 41, 0.5, 9.0, 3.0);
    const SweepGrid b = efficiency_sweep(ratios, 0.7, 3.3, 41, 0.5, 9.0, 3.0);
    REQUIRE(a.series.size() == b.series.size());
    CHECK(a.axis_values == b.axis_values);
    for (size_t s = 0; s < a.series.size(); ++s) {
        REQUIRE(a.series[s].records.size() == b.series[s].records.size());
        CHECK(a.series[s].label == b.series[s].label);
        for (size_t i = 0; i < a.series[s].records.size(); ++i) {
            CHECK(a.series[s].records[i].axis == b.series[s].records[i].axis);
            CHECK(a.series[s].records[i].eta == b.series[s].records[i].eta);
            CHECK(a.series[s].records[i].eta_over_carnot ==
                  b.series[s].records[i].eta_over_carnot);
            CHECK(a.series[s].records[i].work_extracted ==
                  b.series[s].records[i].work_extracted);
            CHECK(a.series[s].records[i].regime == b.series[s].records[i].regime);
        }
    }
}

TEST_CASE("sweep with no series still carries the axis") {
    const SweepGrid grid = efficiency_sweep({}, 0.5, 4.0, 5, 1.0, 12.0, 3.0);
    CHECK(grid.series.empty());
    CHECK(grid.axis_values.size() == 5);
}

TEST_CASE("sweep misconfiguration raises domain errors") {
    const std::vector<double> ratios{1.0};
    CHECK_THROWS_AS(efficiency_sweep(ratios, 0.0, 4.0, 5, 1.0, 12.0, 3.0), std::domain_error);
    CHECK_THROWS_AS(efficiency_sweep(ratios, 2.0, 1.0, 5, 1.0, 12.0, 3.0), std::domain_error);
    CHECK_THROWS_AS(efficiency_sweep(ratios, 0.5, 4.0, 1, 1.0, 12.0, 3.0), std::domain_error);
    CHECK_THROWS_AS(efficiency_sweep(ratios, 0.5, 4.0, 5, 12.0, 1.0, 3.0), std::domain_error);
    CHECK_THROWS_AS(efficiency_sweep(std::vector<double>{-1.0}, 0.5, 4.0, 5, 1.0, 12.0, 3.0),
                    std::domain_error);
}

TEST_CASE("optimizer reproduces the dense-scan fixture") {
    OptimizationSetup setup;
    setup.r = 1.0;
    setup.l_h = 1.0;
    setup.m_h = 1.0;
    setup.t_h = 3.0;
    setup.t_c = 0.25;
    setup.n_levels = 2;
    const OptimizationResult result = optimize_mass_ratio(setup, 1.0001, 11.9999, 1e-6);
    // dense 1e4-point scan oracle: argmax 3.42091..., max 0.50921420...
    CHECK(std::abs(result.best_work_extracted - 0.5092142033874768) <= 1e-8);
    CHECK(std::abs(result.best_mass_ratio - 3.4209119616333385) <= 1e-3);
    CHECK(result.regime == Regime::engine);
    CHECK(result.bracket_lo == 1.0001);
    CHECK(result.bracket_hi == 11.9999);
    CHECK(result.evaluations > 64);
}

TEST_CASE("optimizer result dominates independent samples and the endpoints") {
    OptimizationSetup setup;
    setup.t_h = 3.0;
    setup.t_c = 0.25;
    setup.n_levels = 2;
    const double lo = 1.0001;
    const double hi = 11.9999;
    const OptimizationResult result = optimize_mass_ratio(setup, lo, hi, 1e-6);

    const auto objective = [&](double ratio) {
        const OttoCycleSpec spec{setup.m_h, ratio * setup.m_h, setup.l_h,
                                 setup.r * setup.l_h, setup.t_h, setup.t_c,
                                 setup.n_levels};
        return run_cycle(spec).work_extracted;
    };
    std::mt19937 rng(20240930);
    std::uniform_real_distribution<double> u(lo, hi);
    for (int i = 0; i < 300; ++i) {
        CHECK(result.best_work_extracted >= objective(u(rng)) - 1e-10);
    }
    // the work vanishes toward both feasibility boundaries
    CHECK(objective(lo) < 1e-4);
    CHECK(objective(hi) < 1e-5);
    CHECK(result.best_work_extracted >= objective(lo));
    CHECK(result.best_work_extracted >= objective(hi));
    CHECK(result.best_mass_ratio >= lo);
    CHECK(result.best_mass_ratio <= hi);
}

TEST_CASE("optimizer reports idle when the bracket has no engine point") {
    OptimizationSetup setup;
    setup.t_h = 1.01;
    setup.t_c = 1.0;
    setup.n_levels = 2;
    const OptimizationResult result = optimize_mass_ratio(setup, 50.0, 60.0, 1e-6);
    CHECK(result.best_work_extracted == 0.0);
    CHECK(result.regime == Regime::idle);
    CHECK(result.best_mass_ratio >= 50.0);
    CHECK(result.best_mass_ratio <= 60.0);
}

TEST_CASE("optimizer preconditions") {
    OptimizationSetup setup;
    CHECK_THROWS_AS(optimize_mass_ratio(setup, 0.0, 2.0, 1e-6), std::domain_error);
    CHECK_THROWS_AS(optimize_mass_ratio(setup, 2.0, 1.0, 1e-6), std::domain_error);
    CHECK_THROWS_AS(optimize_mass_ratio(setup, 1.0, 2.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(optimize_mass_ratio(setup, 1.0, 2.0, -1.0), std::domain_error);
}
