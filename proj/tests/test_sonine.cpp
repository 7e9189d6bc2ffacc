#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cbf/bernstein.hpp"
#include "cbf/laplace.hpp"
#include "cbf/quad.hpp"
#include "cbf/sonine.hpp"
#include "cbf/special.hpp"

using namespace cbf;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("stable pair closed forms") {
    auto p = make_pair(BernsteinSpec::stable(0.5));
    double rp = 1.0 / std::sqrt(kPi);
    // symmetric pair at alpha = 1/2
    for (double x : {0.1, 0.7, 2.0}) {
        CHECK(p.mu_bar(x) == doctest::Approx(rp / std::sqrt(x)).epsilon(1e-14));
        CHECK(p.k(x) == doctest::Approx(p.mu_bar(x)).epsilon(1e-14));
    }
    CHECK(p.P(1.0) == doctest::Approx(2.0 / std::sqrt(kPi)).epsilon(1e-13));
    // oracle: adaptive quadrature of k reproduces the primitive
    double p1 = quad::finite([&](double u) { return p.k(u); }, 0.0, 1.0);
    CHECK(p.P(1.0) == doctest::Approx(p1).epsilon(1e-11));
    CHECK(p.q == doctest::Approx(2.0 / kPi).epsilon(1e-14));
}

TEST_CASE("q equals sin(pi a)/(pi a) via the extrapolated limit") {
    for (int ia = 1; ia <= 9; ++ia) {
        double a = ia / 10.0;
        auto p = make_pair(BernsteinSpec::stable(a));
        double limit = compute_q_numeric(p);
        CHECK(limit == doctest::Approx(stable_q(a)).epsilon(1e-10));
        CHECK(limit <= 1.0 + 1e-12);
    }
}

TEST_CASE("tempered pair satisfies both Laplace identities") {
    auto p = make_pair(BernsteinSpec::tempered_stable(0.5, 1.0));
    auto spec = BernsteinSpec::tempered_stable(0.5, 1.0);
    // L(k; 3) = 1/f(3) = 1, L(mu_bar; 3) = f(3)/3, by direct numeric transform
    auto lap = [&](const std::function<double(double)>& h, double l) {
        return quad::finite([&](double x) { return std::exp(-l * x) * h(x); }, 0.0, 1.0) +
               quad::tail([&](double x) { return std::exp(-l * x) * h(x); }, 1.0);
    };
    CHECK(lap(p.k, 3.0) == doctest::Approx(1.0).epsilon(1e-8));
    for (double l : {1.0, 5.0, 10.0}) {
        double f = eval_f(spec, l);
        CHECK(lap(p.k, l) == doctest::Approx(1.0 / f).epsilon(1e-8));
        CHECK(lap(p.mu_bar, l) == doctest::Approx(f / l).epsilon(1e-8));
    }
    // primitives against adaptive quadrature of the handles
    for (double x : {0.3, 1.0, 2.5}) {
        CHECK(p.P(x) ==
              doctest::Approx(quad::finite([&](double u) { return p.k(u); }, 0.0, x))
                  .epsilon(1e-9));
        CHECK(p.M(x) ==
              doctest::Approx(quad::finite([&](double u) { return p.mu_bar(u); }, 0.0, x))
                  .epsilon(1e-9));
    }
    CHECK(p.q == doctest::Approx(2.0 / kPi).epsilon(1e-12));
}

TEST_CASE("kernels are positive and nonincreasing on sampled points") {
    for (auto spec : {BernsteinSpec::stable(0.3), BernsteinSpec::tempered_stable(0.6, 2.0)}) {
        auto p = make_pair(spec);
        double prev_mu = 1e300, prev_k = 1e300;
        for (int i = 0; i < 1000; ++i) {
            double x = std::pow(10.0, -6.0 + 6.3 * i / 999.0);
            double mu = p.mu_bar(x), k = p.k(x);
            CHECK(mu > 0.0);
            CHECK(k > 0.0);
            CHECK(mu <= prev_mu * (1.0 + 1e-12));
            CHECK(k <= prev_k * (1.0 + 1e-10));
            prev_mu = mu;
            prev_k = k;
        }
    }
}

TEST_CASE("sonine identity on the grid") {
    CHECK(verify_sonine(make_pair(BernsteinSpec::stable(0.5)), 1.0, 2048) <= 1e-6);
    CHECK(verify_sonine(make_pair(BernsteinSpec::stable(0.75)), 2.0, 2048) <= 1e-6);
    // deviation decreases under refinement with order >= 1
    auto p = make_pair(BernsteinSpec::stable(0.6));
    double d1 = verify_sonine(p, 1.0, 1024), d2 = verify_sonine(p, 1.0, 2048);
    CHECK(d2 <= d1 / 2.0);
    // tempered pair goes through the generic joint-quadrature route
    double dt = verify_sonine(make_pair(BernsteinSpec::tempered_stable(0.5, 1.0)), 1.0, 256);
    CHECK(dt <= 2e-6);
}

TEST_CASE("mismatched pair is loudly wrong") {
    auto bad = mismatched_stable_pair(0.5, 0.75);
    CHECK(verify_sonine(bad, 1.0, 128) > 0.1);
}

TEST_CASE("gaver-stehfest and talbot invert the stable transform") {
    auto spec = BernsteinSpec::stable(0.5);
    auto F_real = [&](double l) { return 1.0 / eval_f(spec, l); };
    auto F_cplx = [&](std::complex<double> s) { return 1.0 / eval_f(spec, s); };
    auto p = make_pair(spec);
    for (double t : {0.1, 1.0, 3.0}) {
        CHECK(gaver_stehfest_invert(F_real, t) == doctest::Approx(p.k(t)).epsilon(1e-6));
        CHECK(talbot_invert(F_cplx, t) == doctest::Approx(p.k(t)).epsilon(1e-10));
    }
}

TEST_CASE("talbot recovers the tempered kernel computed by Mittag-Leffler series") {
    auto spec = BernsteinSpec::tempered_stable(0.5, 1.0);
    auto p = make_pair(spec);
    auto F = [&](std::complex<double> s) { return 1.0 / eval_f(spec, s); };
    for (double t : {0.05, 0.5, 2.0, 8.0}) {
        CHECK(talbot_invert(F, t) == doctest::Approx(p.k(t)).epsilon(1e-8));
    }
}

TEST_CASE("explicit triplet pair built by numeric inversion") {
    auto spec = BernsteinSpec::explicit_preset(0.0, 0.0, DensityKind::Stable, 0.5, 0.0);
    auto p = make_pair(spec);
    CHECK(p.provenance == PairProvenance::NumericInversion);
    auto exact = make_pair(BernsteinSpec::stable(0.5));
    for (double x : {0.01, 0.2, 1.0, 3.0}) {
        CHECK(p.k(x) == doctest::Approx(exact.k(x)).epsilon(2e-5));
        CHECK(p.mu_bar(x) == doctest::Approx(exact.mu_bar(x)).epsilon(1e-6));
        CHECK(p.P(x) == doctest::Approx(exact.P(x)).epsilon(2e-5));
    }
    CHECK(p.alpha_hat == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(p.q == doctest::Approx(2.0 / kPi).epsilon(1e-6));
    CHECK(verify_sonine(p, 1.0, 256) < 1e-4);
}

TEST_CASE("q override flags the pair and survives as a diagnostic hook") {
    PairOptions o;
    o.q_override = 1.25;
    auto p = make_pair(BernsteinSpec::stable(0.5), o);
    CHECK(p.q == 1.25);
    CHECK(p.q_flagged);
}
