#include <doctest.h>

#include <cmath>
#include <complex>

#include "qdsp/dsp_model.hpp"
#include "qdsp/errors.hpp"

using namespace qdsp;

namespace {

DspModel reference_crw() {
    DspModel model;
    model.kind = DspKind::CorrelatedWalk;
    model.x0 = 0.0;
    LevelSpec level;
    level.values = Eigen::Vector2d(-1.0, 1.0);
    level.probs = Eigen::Vector2d(0.5, 0.5);
    model.levels.assign(4, level);
    model.persistence_p = Eigen::Vector4d(0.5, 2.0 / 3.0, 5.0 / 6.0, 1.0);
    model.persistence_q = Eigen::Vector4d(0.5, 1.0 / 3.0, 1.0 / 6.0, 0.0);
    return model;
}

DspModel small_markov() {
    DspModel model;
    model.kind = DspKind::FirstOrderMarkov;
    model.x0 = 0.25;
    LevelSpec level;
    level.values = Eigen::Vector2d(-1.0, 1.0);
    model.levels.assign(3, level);
    model.initial_dist = Eigen::Vector2d(0.3, 0.7);
    Eigen::Matrix2d t2;
    t2 << 0.9, 0.1, 0.2, 0.8;
    Eigen::Matrix2d t3;
    t3 << 0.5, 0.5, 0.25, 0.75;
    model.transitions = {t2, t3};
    return model;
}

} // namespace

TEST_CASE("single fair step enumerates two paths") {
    const auto paths = enumerate_paths(make_fair_walk(1));
    REQUIRE(paths.size() == 2);
    CHECK(paths[0].index == std::vector<int>{0});
    CHECK(paths[0].prob == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(paths[0].sum == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(paths[1].index == std::vector<int>{1});
    CHECK(paths[1].prob == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(paths[1].sum == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("correlated walk paths follow the chain rule") {
    const auto paths = enumerate_paths(reference_crw());
    REQUIRE(paths.size() == 16);

    // All-up path (1,1,1,1): 1/2 * 2/3 * 5/6 * 1 = 5/18, sum +4.
    const auto& up = paths[15];
    CHECK(up.index == std::vector<int>{1, 1, 1, 1});
    CHECK(up.prob == doctest::Approx(5.0 / 18.0).epsilon(1e-14));
    CHECK(up.sum == doctest::Approx(4.0).epsilon(1e-14));

    double total = 0.0;
    for (const auto& path : paths) total += path.prob;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("deterministic persistence leaves two live paths") {
    DspModel model = reference_crw();
    model.persistence_p = Eigen::Vector4d::Ones();
    model.persistence_q = Eigen::Vector4d::Zero();
    int live = 0;
    for (const auto& path : enumerate_paths(model)) {
        if (path.prob > 0.0) {
            ++live;
            CHECK(path.prob == doctest::Approx(0.5).epsilon(1e-14));
            // q = 0 never repeats a down step, so both survivors end up-up-up.
            CHECK(path.index[1] == 1);
            CHECK(path.index[2] == 1);
            CHECK(path.index[3] == 1);
        }
    }
    CHECK(live == 2);
}

TEST_CASE("fair three-step walk is uniform") {
    const auto paths = enumerate_paths(make_fair_walk(3));
    REQUIRE(paths.size() == 8);
    double total = 0.0;
    for (const auto& path : paths) {
        CHECK(path.prob == doctest::Approx(0.125).epsilon(1e-14));
        total += path.prob;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("markov chain rule probabilities") {
    const auto paths = enumerate_paths(small_markov());
    REQUIRE(paths.size() == 8);
    // Path (1,0,1): 0.7 * 0.2 * 0.5, sum 0.25 + 1 - 1 + 1.
    const auto& path = paths[1 + 0 * 2 + 1 * 4];
    CHECK(path.index == std::vector<int>{1, 0, 1});
    CHECK(path.prob == doctest::Approx(0.7 * 0.2 * 0.5).epsilon(1e-14));
    CHECK(path.sum == doctest::Approx(1.25).epsilon(1e-14));
    double total = 0.0;
    for (const auto& p : paths) total += p.prob;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("enumeration cap raises") {
    CHECK_THROWS_AS(enumerate_paths(make_fair_walk(10), 100), CapExceeded);
    CHECK_THROWS_AS(expectation_brute_force(make_fair_walk(30), [](double) { return 1.0; }),
                    CapExceeded);
}

TEST_CASE("expectation of cos on the fair two-step walk") {
    // Hand enumeration: cos(-2)/4 + cos(0)/2 + cos(2)/4 = (1 + cos 2)/2.
    const double expected = (1.0 + std::cos(2.0)) / 2.0;
    const double got =
        expectation_brute_force(make_fair_walk(2), [](double x) { return std::cos(x); });
    CHECK(got == doctest::Approx(expected).epsilon(1e-14));
    CHECK(got == doctest::Approx(0.29193).epsilon(1e-4));
}

TEST_CASE("expectation of the constant function is 1") {
    for (const DspModel& model : {make_fair_walk(4), reference_crw(), small_markov()}) {
        CHECK(expectation_brute_force(model, [](double) { return 1.0; }) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("characteristic function basics") {
    const auto at0 = char_fn_brute_force(reference_crw(), 0.0);
    CHECK(at0.real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(at0.imag() == doctest::Approx(0.0).epsilon(1e-14));

    for (double v : {0.3, 0.7, 1.9}) {
        const auto single = char_fn_brute_force(make_fair_walk(1), v);
        CHECK(single.real() == doctest::Approx(std::cos(v)).epsilon(1e-14));
        CHECK(single.imag() == doctest::Approx(0.0).epsilon(1e-14));
    }

    const auto plus = char_fn_brute_force(reference_crw(), 0.7);
    const auto minus = char_fn_brute_force(reference_crw(), -0.7);
    CHECK(minus.real() == doctest::Approx(plus.real()).epsilon(1e-14));
    CHECK(minus.imag() == doctest::Approx(-plus.imag()).epsilon(1e-14));
    CHECK(std::abs(plus) <= 1.0 + 1e-12);
}

TEST_CASE("independent characteristic function factorizes") {
    LevelSpec a;
    a.values = Eigen::Vector2d(-0.4, 1.1);
    a.probs = Eigen::Vector2d(0.35, 0.65);
    LevelSpec b;
    b.values = Eigen::Vector2d(0.2, -0.9);
    b.probs = Eigen::Vector2d(0.8, 0.2);
    const DspModel model = make_independent_model(0.3, {a, b, a});

    for (double v : {0.0, 0.45, 1.2, -2.0}) {
        std::complex<double> product = std::exp(std::complex<double>{0.0, v * model.x0});
        for (const auto& level : model.levels) {
            std::complex<double> factor{0.0, 0.0};
            for (int j = 0; j < 2; ++j) {
                factor +=
                    level.probs[j] * std::exp(std::complex<double>{0.0, v * level.values[j]});
            }
            product *= factor;
        }
        const auto direct = char_fn_brute_force(model, v);
        CHECK(std::abs(direct - product) <= 1e-12);
    }
}

TEST_CASE("monte carlo agrees with the oracle") {
    const auto cosf = [](double x) { return std::cos(x); };
    const double oracle = (1.0 + std::cos(2.0)) / 2.0;
    const auto result = monte_carlo_estimate(make_fair_walk(2), cosf, 100000, 42);
    CHECK(std::abs(result.mean - oracle) <= 4.0 * result.std_error);

    const auto again = monte_carlo_estimate(make_fair_walk(2), cosf, 100000, 42);
    CHECK(again.mean == result.mean);
    CHECK(again.std_error == result.std_error);
}

TEST_CASE("monte carlo stderr scales like one over sqrt shots") {
    const auto cosf = [](double x) { return std::cos(x); };
    const auto small = monte_carlo_estimate(make_fair_walk(2), cosf, 10000, 7);
    const auto large = monte_carlo_estimate(make_fair_walk(2), cosf, 1000000, 7);
    const double ratio = small.std_error / large.std_error;
    CHECK(ratio > 8.0);
    CHECK(ratio < 12.0);
}

TEST_CASE("monte carlo of a constant has zero spread") {
    const auto result = monte_carlo_estimate(reference_crw(), [](double) { return 2.5; }, 1000, 3);
    CHECK(result.mean == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(result.std_error == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("monte carlo coverage across seeds") {
    const auto cosf = [](double x) { return std::cos(x); };
    const double oracle = (1.0 + std::cos(2.0)) / 2.0;
    int covered = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto result = monte_carlo_estimate(make_fair_walk(2), cosf, 4000, seed);
        if (std::abs(result.mean - oracle) <= 5.0 * result.std_error) ++covered;
    }
    CHECK(covered >= 99);
}

TEST_CASE("sample count formula") {
    CHECK(sample_count_for_margin(0.05, 0.01) == 9604);
    // z(0.84) is just below 1, so the count collapses to a single sample.
    CHECK(sample_count_for_margin(0.32, 0.5) == 1);

    const auto base = sample_count_for_margin(0.05, 0.02);
    const auto fine = sample_count_for_margin(0.05, 0.01);
    CHECK(fine <= 4 * base);
    CHECK(fine >= 4 * base - 3);

    CHECK_THROWS_AS(sample_count_for_margin(0.0, 0.1), DomainError);
    CHECK_THROWS_AS(sample_count_for_margin(1.0, 0.1), DomainError);
    CHECK_THROWS_AS(sample_count_for_margin(0.05, 0.0), DomainError);
}

TEST_CASE("model validation rejects bad inputs") {
    DspModel model = make_fair_walk(2);
    model.levels[0].probs = Eigen::Vector2d(0.6, 0.6);
    CHECK_THROWS_AS(model.validate(), DomainError);

    model = make_fair_walk(2);
    model.levels[1].probs = Eigen::Vector2d(-0.1, 1.1);
    CHECK_THROWS_AS(model.validate(), DomainError);

    DspModel markov = small_markov();
    markov.transitions[0](0, 0) = 0.5; // row no longer sums to 1
    CHECK_THROWS_AS(markov.validate(), DomainError);

    DspModel crw = reference_crw();
    crw.persistence_p[2] = 1.5;
    CHECK_THROWS_AS(crw.validate(), DomainError);

    DspModel empty;
    CHECK_THROWS_AS(empty.validate(), DomainError);
}

TEST_CASE("attainable range tracks extreme paths") {
    const auto [lo, hi] = attainable_range(make_fair_walk(4, 1.0, 1.0));
    CHECK(lo == doctest::Approx(-3.0).epsilon(1e-14));
    CHECK(hi == doctest::Approx(5.0).epsilon(1e-14));
}
