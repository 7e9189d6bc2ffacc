#include "cbf/bernstein.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "cbf/quad.hpp"

namespace cbf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double stable_density(double alpha, double t) {
    return alpha * std::pow(t, -1.0 - alpha) / std::tgamma(1.0 - alpha);
}

double tempered_density(double alpha, double theta, double t) {
    return stable_density(alpha, t) * std::exp(-theta * t);
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw domain_error("BernsteinSpec: alpha must lie in (0,1)");
}

}  // namespace

BernsteinSpec BernsteinSpec::stable(double alpha) {
    check_alpha(alpha);
    BernsteinSpec s;
    s.family = Family::Stable;
    s.alpha = alpha;
    s.density = [alpha](double t) { return stable_density(alpha, t); };
    s.density_kind = DensityKind::Stable;
    s.density_p0 = alpha;
    s.m0_finite_hint = false;
    s.m1_finite_hint = false;
    return s;
}

BernsteinSpec BernsteinSpec::tempered_stable(double alpha, double theta) {
    check_alpha(alpha);
    if (!(theta > 0.0)) throw domain_error("BernsteinSpec: theta must be positive");
    BernsteinSpec s;
    s.family = Family::TemperedStable;
    s.alpha = alpha;
    s.theta = theta;
    s.density = [alpha, theta](double t) { return tempered_density(alpha, theta, t); };
    s.density_kind = DensityKind::Tempered;
    s.density_p0 = alpha;
    s.density_p1 = theta;
    s.m0_finite_hint = false;
    s.m1_finite_hint = true;
    return s;
}

BernsteinSpec BernsteinSpec::explicit_triplet(double a, double b,
                                              std::function<double(double)> m,
                                              std::optional<bool> m0_finite,
                                              std::optional<bool> m1_finite) {
    if (a < 0.0 || b < 0.0)
        throw domain_error("BernsteinSpec: killing and drift must be nonnegative");
    if (!m) throw domain_error("BernsteinSpec: density handle required");
    BernsteinSpec s;
    s.family = Family::ExplicitTriplet;
    s.a = a;
    s.b = b;
    s.density = std::move(m);
    s.m0_finite_hint = m0_finite;
    s.m1_finite_hint = m1_finite;
    return s;
}

BernsteinSpec BernsteinSpec::explicit_preset(double a, double b, DensityKind kind,
                                             double p0, double p1) {
    std::function<double(double)> m;
    std::optional<bool> m0f, m1f;
    switch (kind) {
        case DensityKind::Stable:
            check_alpha(p0);
            m = [p0](double t) { return stable_density(p0, t); };
            m0f = false;
            m1f = false;
            break;
        case DensityKind::Tempered:
            check_alpha(p0);
            if (!(p1 > 0.0)) throw domain_error("tempered density: rate must be positive");
            m = [p0, p1](double t) { return tempered_density(p0, p1, t); };
            m0f = false;
            m1f = true;
            break;
        case DensityKind::Exponential:
            // m(t) = c e^{-r t}: m0 = c/r, m1 = c/r^2
            if (!(p0 > 0.0 && p1 > 0.0))
                throw domain_error("exponential density: amplitude and rate must be positive");
            m = [p0, p1](double t) { return p0 * std::exp(-p1 * t); };
            m0f = true;
            m1f = true;
            break;
        case DensityKind::ExpOverT:
            // m(t) = c e^{-r t}/t: f = c log(1 + l/r); m0 diverges logarithmically
            if (!(p0 > 0.0 && p1 > 0.0))
                throw domain_error("exp_over_t density: amplitude and rate must be positive");
            m = [p0, p1](double t) { return p0 * std::exp(-p1 * t) / t; };
            m0f = false;
            m1f = true;
            break;
        default:
            throw domain_error("explicit_preset: unknown density kind");
    }
    auto s = explicit_triplet(a, b, std::move(m), m0f, m1f);
    s.density_kind = kind;
    s.density_p0 = p0;
    s.density_p1 = p1;
    return s;
}

namespace {

// int g(t) m(t) dt over (0, inf) for g = 1 - e^{-l t}, split at 1 (and at
// 1/|l| when |l| is large, so the boundary layer sits at a panel endpoint).
double levy_integral_real(const std::function<double(double)>& m,
                          const std::function<double(double)>& g, double scale) {
    double total = 0.0;
    if (scale > 10.0) {
        double split = 1.0 / scale;
        total += quad::finite([&](double t) { return g(t) * m(t); }, 0.0, split);
        total += quad::finite([&](double t) { return g(t) * m(t); }, split, 1.0);
    } else {
        total += quad::finite([&](double t) { return g(t) * m(t); }, 0.0, 1.0);
    }
    total += quad::tail([&](double t) { return g(t) * m(t); }, 1.0);
    return total;
}

double levy_integral(const std::function<double(double)>& m, double lambda) {
    return levy_integral_real(
        m, [lambda](double t) { return -std::expm1(-lambda * t); }, lambda);
}

std::complex<double> levy_integral(const std::function<double(double)>& m,
                                   std::complex<double> lambda) {
    double scale = std::abs(lambda);
    double re = levy_integral_real(
        m, [lambda](double t) { return 1.0 - std::real(std::exp(-lambda * t)); },
        scale);
    double im = levy_integral_real(
        m, [lambda](double t) { return -std::imag(std::exp(-lambda * t)); }, scale);
    return {re, im};
}

}  // namespace

double eval_f(const BernsteinSpec& spec, double lambda) {
    if (!(lambda > 0.0)) throw domain_error("eval_f: lambda must be positive");
    switch (spec.family) {
        case Family::Stable:
            return std::pow(lambda, spec.alpha);
        case Family::TemperedStable:
            return std::pow(lambda + spec.theta, spec.alpha) -
                   std::pow(spec.theta, spec.alpha);
        case Family::ExplicitTriplet: {
            double v = spec.a + spec.b * lambda + levy_integral(spec.density, lambda);
            if (!std::isfinite(v))
                throw numeric_error("eval_f: Levy integral did not converge",
                                    "lambda=" + std::to_string(lambda));
            return v;
        }
    }
    throw domain_error("eval_f: unknown family");
}

std::complex<double> eval_f(const BernsteinSpec& spec, std::complex<double> lambda) {
    using C = std::complex<double>;
    switch (spec.family) {
        case Family::Stable:
            return std::pow(lambda, C(spec.alpha));
        case Family::TemperedStable:
            return std::pow(lambda + spec.theta, C(spec.alpha)) -
                   std::pow(C(spec.theta), C(spec.alpha));
        case Family::ExplicitTriplet:
            // The defining integral only converges on Re(lambda) > 0; black-box
            // densities cannot be continued into the left half-plane.
            if (lambda.real() <= 0.0)
                throw domain_error(
                    "eval_f: explicit triplets are not evaluable for Re(lambda) <= 0");
            return spec.a + spec.b * lambda + levy_integral(spec.density, lambda);
    }
    throw domain_error("eval_f: unknown family");
}

std::function<double(double)> conjugate(const BernsteinSpec& spec) {
    return [spec](double lambda) {
        if (!(lambda > 0.0)) throw domain_error("conjugate: lambda must be positive");
        return lambda / eval_f(spec, lambda);
    };
}

namespace {

// Local log-log slope of the density over a dyadic window; used to decide
// divergence of m0 (at 0) and m1 (at infinity).
double log_slope(const std::function<double(double)>& m, double t_lo, double t_hi) {
    double lo = m(t_lo), hi = m(t_hi);
    if (!(lo > 0.0) || !(hi > 0.0))
        throw numeric_error("classify_triplet: density not positive on probe window");
    return (std::log(hi) - std::log(lo)) / (std::log(t_hi) - std::log(t_lo));
}

constexpr double kSlopeMargin = 0.05;

}  // namespace

TripletClassification classify_triplet(const BernsteinSpec& spec) {
    TripletClassification out;
    double a = 0.0, b = 0.0;
    std::function<double(double)> m = spec.density;
    std::optional<bool> m0_hint = spec.m0_finite_hint, m1_hint = spec.m1_finite_hint;
    if (spec.family == Family::ExplicitTriplet) {
        a = spec.a;
        b = spec.b;
    }
    if (!m) throw domain_error("classify_triplet: no density available");

    // decide finiteness of m0 = int m and m1 = int t m
    bool m0_finite, m1_finite;
    // probe windows: small-t dyadic decades for the behaviour at 0, and a
    // moderate tail window (large enough to separate power decay from
    // exponential decay without underflowing exp(-t) in double precision)
    const double t_lo0 = std::pow(2.0, -24), t_hi0 = std::pow(2.0, -18);
    const double t_loT = 8.0, t_hiT = 128.0;
    if (m0_hint) {
        m0_finite = *m0_hint;
    } else {
        double p0 = log_slope(m, t_lo0, t_hi0);
        double ptail = log_slope(m, t_loT, t_hiT);
        if (std::abs(p0 + 1.0) < kSlopeMargin) {
            out.indeterminate = true;
            out.note = "small-t slope of m is within the margin of -1; m0 undecided";
            return out;
        }
        if (p0 <= -2.0 + kSlopeMargin)
            throw domain_error("classify_triplet: density is not a Levy density "
                               "(int min(1,t) m(t) dt diverges)");
        m0_finite = (p0 > -1.0) && (ptail < -1.0 - kSlopeMargin);
    }
    if (m1_hint) {
        m1_finite = *m1_hint;
    } else {
        double ptail = log_slope(m, t_loT, t_hiT);
        if (std::abs(ptail + 2.0) < kSlopeMargin) {
            out.indeterminate = true;
            out.note = "tail slope of m is within the margin of -2; m1 undecided";
            return out;
        }
        m1_finite = ptail < -2.0 - kSlopeMargin;
    }

    out.m0_finite = m0_finite;
    out.m1_finite = m1_finite;
    out.m0 = m0_finite
                 ? quad::finite([&](double t) { return m(t); }, 0.0, 1.0) +
                       quad::tail([&](double t) { return m(t); }, 1.0)
                 : kInf;
    out.m1 = m1_finite
                 ? quad::finite([&](double t) { return t * m(t); }, 0.0, 1.0) +
                       quad::tail([&](double t) { return t * m(t); }, 1.0)
                 : kInf;

    out.a_star = (a > 0.0) ? 0.0 : (m1_finite ? 1.0 / (b + out.m1) : 0.0);
    out.b_star = (b > 0.0) ? 0.0 : (m0_finite ? 1.0 / (a + out.m0) : 0.0);

    if (a == 0.0 && b == 0.0)
        out.row = !m1_finite ? 1 : (!m0_finite ? 2 : 3);
    else if (a > 0.0 && b == 0.0)
        out.row = !m0_finite ? 4 : 5;
    else if (a == 0.0 && b > 0.0)
        out.row = !m1_finite ? 6 : 7;
    else
        out.row = 8;
    return out;
}

}  // namespace cbf
