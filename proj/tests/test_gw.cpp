#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ipc/gw.hpp"
#include "ipc/rng.hpp"

using namespace ipc;

TEST_CASE("theta fixed points") {
    CHECK(theta(0.5) == 0.0);
    CHECK(theta(1.0) == 0.0);
    double t = theta(2.0);
    CHECK(t == doctest::Approx(0.7968121300200202).epsilon(1e-10));
    // the defining equation holds to high accuracy
    for (double lam : {1.0001, 1.1, 1.5, 2.0, 3.0, 5.0, 10.0}) {
        double th = theta(lam);
        CHECK(std::abs(1.0 - th - std::exp(-lam * th)) < 1e-12);
        CHECK(th > 0.0);
        CHECK(th < 1.0);
    }
}

TEST_CASE("theta_prime matches finite differences") {
    for (double lam : {1.2, 1.7, 2.0, 3.5}) {
        double h = 1e-6;
        double fd = (theta(lam + h) - theta(lam - h)) / (2 * h);
        CHECK(theta_prime(lam) == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("dual mass and its inverse") {
    double m = dual_m(2.0);
    CHECK(m == doctest::Approx(2.0 * (1.0 - theta(2.0))).epsilon(1e-12));
    // lambda e^-lambda = m e^-m
    CHECK(2.0 * std::exp(-2.0) == doctest::Approx(m * std::exp(-m)).epsilon(1e-12));
    CHECK(dual_inverse(m) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(dual_m(1.0) == doctest::Approx(1.0));
    for (double lam : {1.1, 1.5, 2.5, 4.0})
        CHECK(dual_inverse(dual_m(lam)) == doctest::Approx(lam).epsilon(1e-9));
}

TEST_CASE("progeny mass functions") {
    CHECK(pgw_size_pmf(0.5, 1) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
    CHECK(pgw_size_pmf(0.5, 2) == doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-14));
    CHECK(borel_pmf(1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(borel_pmf(2) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    CHECK(borel_pmf(3) == doctest::Approx(1.5 * std::exp(-3.0)).epsilon(1e-14));
    // subcritical progeny sums to 1
    double total = 0.0;
    for (std::int64_t n = 1; n <= 4000; ++n) total += pgw_size_pmf(0.7, n);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("phi sums to one and matches the closed form") {
    CHECK(phi_pmf(0.3, 1) == doctest::Approx(0.7 * std::exp(-0.3)).epsilon(1e-13));
    for (double y : {0.1, 0.3, 0.6, 0.9}) {
        double total = 0.0;
        for (std::int64_t n = 1; n <= 200000; ++n) total += phi_pmf(y, n);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("record-chain densities normalize") {
    double h = 2.0, th = theta(h);
    // forward height density integrates to 1 over (1, h)
    double integral = 0.0;
    int panels = 20000;
    for (int i = 0; i < panels; ++i) {
        double y = 1.0 + (h - 1.0) * (i + 0.5) / panels;
        integral += forward_height_density(h, y) * (h - 1.0) / panels;
    }
    CHECK(integral == doctest::Approx(1.0).epsilon(1e-5));
    // joint density marginalizes over n to the height density
    double y = 1.5, marg = 0.0;
    for (std::int64_t n = 1; n <= 5000; ++n) marg += forward_joint_density(h, n, y);
    CHECK(marg == doctest::Approx(forward_height_density(h, y)).epsilon(1e-8));
    (void)th;
}

TEST_CASE("pond size given its own height sums to one") {
    for (double y : {1.2, 1.55, 2.0}) {
        double total = 0.0;
        for (std::int64_t n = 1; n <= 20000; ++n) total += pond_size_given_height(y, n);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("geometric and cayley distance laws") {
    double g = 0.0;
    for (std::int64_t k = 0; k <= 200; ++k) g += geometric_pmf(0.4, k);
    CHECK(g == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(geometric_pmf(0.4, 2) == doctest::Approx(0.16 * 0.6).epsilon(1e-14));
    for (std::int64_t n : {2, 5, 17}) {
        double total = 0.0;
        for (std::int64_t k = 1; k <= n; ++k) total += cayley_distance_pmf(n, k);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
    // n = 2: the two labels are always adjacent
    CHECK(cayley_distance_pmf(2, 2) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("walk probabilities and the q maps") {
    CHECK(walk_chance_probability(0.7) == doctest::Approx(0.7));
    CHECK(walk_chance_probability(2.3) == doctest::Approx(1.0));
    CHECK(walk_survival_probability(2.0) == doctest::Approx(theta(2.0)));
    CHECK(q_map(2.0, QVariant::OneMinusTheta) == doctest::Approx(1.0 - theta(2.0)));
    CHECK(q_map(2.0, QVariant::Dual) == doctest::Approx(dual_m(2.0)));
}

TEST_CASE("permutation identity equals one") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t r = 1 + static_cast<std::size_t>(rng.next_u64() % 5);
        std::vector<double> vals(r);
        for (double& v : vals) v = 0.05 + 3.0 * rng.next_double();
        CHECK(std::abs(perm_identity(vals) - 1.0) < 1e-12);
    }
}

TEST_CASE("incomplete-gamma style integral identity") {
    for (std::int64_t b = 1; b <= 15; ++b) {
        double lhs = integrate_identity_lhs(b);
        double rhs = integrate_identity_rhs(b);
        CHECK(std::abs(lhs - rhs) < 1e-9);
    }
}

TEST_CASE("cycle lemma on hand-checked sequences") {
    CHECK(cycle_lemma_check({1, 1, -1}) == doctest::Approx(1.0 / 3.0));
    CHECK(cycle_lemma_check({1, -1}) == doctest::Approx(0.0));
    CHECK(cycle_lemma_check({1, 1, 1}) == doctest::Approx(1.0));
    CHECK(cycle_lemma_check({1, 0, -2, 1, 1}) == doctest::Approx(1.0 / 5.0));
}
