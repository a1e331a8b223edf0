#include <doctest.h>

#include <cmath>

#include "ctap/adiabaticity.hpp"
#include "ctap/dark_state.hpp"
#include "ctap/evolution.hpp"
#include "ctap/robustness.hpp"

using namespace ctap;

TEST_CASE("factors stay in range and depend only on seed and index") {
    const DisorderSpec d{2.0, 50, 17};
    double lo = 10.0;
    double hi = 0.0;
    for (std::size_t i = 0; i < 50; ++i) {
        const auto f = disorder_factors(d, i, 8);
        REQUIRE(f.size() == 8);
        for (double x : f) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        CHECK(f == disorder_factors(d, i, 8));
    }
    CHECK(lo >= 0.5);
    CHECK(hi <= 2.0);
    CHECK(lo < 0.6);
    CHECK(hi > 1.7);
    CHECK(disorder_factors(d, 0, 4) != disorder_factors(d, 1, 4));
    CHECK(disorder_factors({2.0, 1, 18}, 0, 4) != disorder_factors(d, 0, 4));
    for (double x : disorder_factors({1.0, 1, 3}, 5, 6)) CHECK(x == 1.0);
}

TEST_CASE("log of the factors is symmetric about zero") {
    const DisorderSpec d{3.0, 1, 5};
    double sum = 0.0;
    const std::size_t draws = 4000;
    for (std::size_t i = 0; i < draws / 4; ++i) {
        for (double x : disorder_factors(d, i, 4)) sum += std::log(x);
    }
    const double sigma = std::log(3.0) / std::sqrt(3.0 * draws);
    CHECK(std::abs(sum / draws) <= 4 * sigma);
}

TEST_CASE("unit spread reproduces the clean run exactly") {
    const auto s = PulseSchedule::ideal(5, 10.0, 10.0);
    const auto samples = sample_disordered_run(s.chain(), s, {1.0, 2, 0});
    const auto clean = propagate(s.chain(), s, site_state(5, 1), recommended_steps(s));
    const auto adiabatic = adiabaticity_trace(s.chain(), s);
    for (const auto& sample : samples) {
        REQUIRE(sample.ok);
        CHECK(sample.transfer_fidelity == clean.transfer_fidelity);
        CHECK(sample.a_peak == adiabatic.a_peak);
        CHECK(sample.dark_state_defined);
    }
}

TEST_CASE("tiny spread is a small perturbation") {
    const auto s = PulseSchedule::ideal(5, 10.0, 10.0);
    const auto clean = sample_disordered_run(s.chain(), s, {1.0, 1, 0}, {1000});
    const auto near = sample_disordered_run(s.chain(), s, {1.0 + 1e-12, 3, 0}, {1000});
    for (const auto& sample : near) {
        CHECK(std::abs(sample.transfer_fidelity - clean[0].transfer_fidelity) <= 1e-9);
    }
}

TEST_CASE("disordered runs are deterministic and thread-count independent") {
    const auto s = PulseSchedule::ideal(5, 10.0, 10.0);
    DisorderOptions one;
    DisorderOptions four;
    four.threads = 4;
    const auto a = sample_disordered_run(s.chain(), s, {2.0, 6, 11}, one);
    const auto b = sample_disordered_run(s.chain(), s, {2.0, 6, 11}, four);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].index == i);
        CHECK(a[i].factors == b[i].factors);
        CHECK(a[i].transfer_fidelity == b[i].transfer_fidelity);
        CHECK(a[i].a_peak == b[i].a_peak);
    }
}

TEST_CASE("endpoint nulling survives disorder") {
    const auto s = PulseSchedule::ideal(7, 70.0, 10.0);
    const DisorderSpec d{2.0, 200, 4};
    for (std::size_t i = 0; i < d.samples; ++i) {
        const auto disordered = s.with_scale_factors(disorder_factors(d, i, 6));
        const auto start = dark_state(evaluate(disordered, 0.0));
        const auto end = dark_state(evaluate(disordered, 70.0));
        REQUIRE(start == site_state(7, 1));
        REQUIRE(end == site_state(7, 7));
    }
}

TEST_CASE("moderate disorder keeps high fidelity at Omega t = 700") {
    const auto s = PulseSchedule::ideal(5, 70.0, 10.0);
    DisorderOptions options;
    options.threads = 2;
    const auto samples = sample_disordered_run(s.chain(), s, {2.0, 8, 1}, options);
    for (const auto& sample : samples) {
        REQUIRE(sample.ok);
        CHECK(sample.dark_state_defined);
        CHECK(sample.transfer_fidelity >= 0.99);
    }
}

TEST_CASE("disorder validation") {
    const auto s = PulseSchedule::ideal(5, 1.0, 1.0);
    CHECK_THROWS_AS(disorder_factors({0.5, 1, 0}, 0, 4), DomainError);
    CHECK_THROWS_AS(disorder_factors({std::nan(""), 1, 0}, 0, 4), DomainError);
    CHECK_THROWS_AS(sample_disordered_run(s.chain(), s, {2.0, 0, 0}), DomainError);
    CHECK_THROWS_AS(sample_disordered_run(ChainSpec::uniform(7, 0, 1), s, {2.0, 1, 0}), DimensionError);
}
