#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cbf/bernstein.hpp"

using namespace cbf;

TEST_CASE("stable f is the power law") {
    auto s = BernsteinSpec::stable(0.5);
    CHECK(eval_f(s, 4.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(eval_f(s, 1e-12) == doctest::Approx(1e-6).epsilon(1e-12));
    CHECK_THROWS_AS(eval_f(s, 0.0), domain_error);
    CHECK_THROWS_AS(eval_f(s, -1.0), domain_error);
}

TEST_CASE("explicit triplet with the stable density reproduces the closed form") {
    auto s = BernsteinSpec::explicit_preset(0.0, 0.0, DensityKind::Stable, 0.5, 0.0);
    for (double l : {0.5, 1.0, 4.0, 25.0}) {
        CHECK(eval_f(s, l) == doctest::Approx(std::sqrt(l)).epsilon(1e-9));
    }
}

TEST_CASE("tempered stable closed form") {
    auto s = BernsteinSpec::tempered_stable(0.5, 1.0);
    CHECK(eval_f(s, 3.0) == doctest::Approx(1.0).epsilon(1e-14));
    auto e = BernsteinSpec::explicit_preset(0.0, 0.0, DensityKind::Tempered, 0.5, 1.0);
    CHECK(eval_f(e, 3.0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("monotone and nonnegative on sampled points") {
    for (double a : {0.25, 0.5, 0.75}) {
        auto s = BernsteinSpec::stable(a);
        double prev = 0.0;
        for (double l = 1e-3; l < 1e3; l *= 1.7) {
            double v = eval_f(s, l);
            CHECK(v >= prev);
            prev = v;
        }
    }
}

TEST_CASE("assumption limits hold for the stable family") {
    auto s = BernsteinSpec::stable(0.4);
    CHECK(1.0 / eval_f(s, 1e-12) > 1e4);
    CHECK(1.0 / eval_f(s, 1e12) < 1e-4);
    CHECK(1e-12 / eval_f(s, 1e-12) < 1e-6);
    CHECK(1e12 / eval_f(s, 1e12) > 1e6);
}

TEST_CASE("conjugate satisfies f f* = lambda and maps stable to stable") {
    auto s = BernsteinSpec::stable(0.25);
    auto fstar = conjugate(s);
    for (double l : {0.1, 1.0, 10.0})
        CHECK(eval_f(s, l) * fstar(l) == doctest::Approx(l).epsilon(1e-12));
    CHECK(fstar(16.0) == doctest::Approx(8.0).epsilon(1e-12));  // 16^{0.75}
    auto dual = BernsteinSpec::stable(0.75);
    for (double l : {0.3, 2.0, 7.0})
        CHECK(fstar(l) == doctest::Approx(eval_f(dual, l)).epsilon(1e-12));
    CHECK_THROWS_AS(fstar(-2.0), domain_error);
}

TEST_CASE("classification reproduces the conjugate-characteristics table") {
    // all-eight-rows coverage lives in the acceptance suite; spot-check three
    auto stable = BernsteinSpec::stable(0.5);
    auto c1 = classify_triplet(stable);
    CHECK(c1.row == 1);
    CHECK(c1.a_star == 0.0);
    CHECK(c1.b_star == 0.0);
    CHECK_FALSE(c1.m0_finite);
    CHECK_FALSE(c1.m1_finite);

    auto row5 = BernsteinSpec::explicit_preset(2.0, 0.0, DensityKind::Exponential, 3.0, 1.0);
    auto c5 = classify_triplet(row5);
    CHECK(c5.row == 5);
    CHECK(c5.m0 == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(c5.a_star == 0.0);
    CHECK(c5.b_star == doctest::Approx(1.0 / 5.0).epsilon(1e-10));

    auto row7 = BernsteinSpec::explicit_preset(0.0, 2.0, DensityKind::Exponential, 3.0, 1.0);
    auto c7 = classify_triplet(row7);
    CHECK(c7.row == 7);
    CHECK(c7.m1 == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(c7.a_star == doctest::Approx(1.0 / 5.0).epsilon(1e-10));
    CHECK(c7.b_star == 0.0);

    CHECK(c1.a_star * 0.0 == 0.0);
    CHECK(c5.b_star * 0.0 == 0.0);
}

TEST_CASE("divergence heuristic is decided numerically when no hint is given") {
    // same densities, hints stripped
    auto stable_nohint = BernsteinSpec::explicit_triplet(
        0.0, 0.0, [](double t) { return 0.5 * std::pow(t, -1.5) / std::tgamma(0.5); });
    auto cs = classify_triplet(stable_nohint);
    CHECK_FALSE(cs.indeterminate);
    CHECK_FALSE(cs.m0_finite);
    CHECK_FALSE(cs.m1_finite);
    CHECK(cs.row == 1);

    auto exp_nohint = BernsteinSpec::explicit_triplet(
        0.0, 0.0, [](double t) { return std::exp(-t); });
    auto ce = classify_triplet(exp_nohint);
    CHECK_FALSE(ce.indeterminate);
    CHECK(ce.row == 3);
    CHECK(ce.m0 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(ce.m1 == doctest::Approx(1.0).epsilon(1e-10));

    // m ~ t^{-2} at infinity: m1 on the decision margin -> indeterminate
    auto borderline = BernsteinSpec::explicit_triplet(
        0.0, 0.0, [](double t) { return 1.0 / (t * t + t); });
    auto cb = classify_triplet(borderline);
    CHECK(cb.indeterminate);
}
