#include "cbf/sonine.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <memory>
#include <sstream>
#include <vector>

#include "cbf/laplace.hpp"
#include "cbf/pchip.hpp"
#include "cbf/product_integration.hpp"
#include "cbf/quad.hpp"
#include "cbf/special.hpp"

namespace cbf {

namespace {

KernelPair stable_pair(const BernsteinSpec& spec) {
    double a = spec.alpha;
    double g1ma = std::tgamma(1.0 - a), ga = std::tgamma(a);
    double g2ma = std::tgamma(2.0 - a), g1pa = std::tgamma(1.0 + a);
    KernelPair p;
    p.spec = spec;
    p.mu_bar = [a, g1ma](double x) { return std::pow(x, -a) / g1ma; };
    p.k = [a, ga](double x) { return std::pow(x, a - 1.0) / ga; };
    p.M = [a, g2ma](double x) { return std::pow(x, 1.0 - a) / g2ma; };
    p.P = [a, g1pa](double x) { return std::pow(x, a) / g1pa; };
    p.P1 = [a, ga](double x) { return std::pow(x, 1.0 + a) / ((1.0 + a) * ga); };
    p.M1 = [a, g1ma](double x) { return std::pow(x, 2.0 - a) / ((2.0 - a) * g1ma); };
    p.q = stable_q(a);
    p.provenance = PairProvenance::ClosedForm;
    p.alpha_hat = a;
    p.stable_alpha = a;
    return p;
}

/*
 * Tempered stable, f(l) = (l + th)^a - th^a.  Closed forms:
 *
 *   mu_bar(x) = x^{-a} e^{-th x}/Gamma(1-a) - th^a Q(1-a, th x)
 *   k(x)      = x^{a-1} e^{-th x} E_{a,a}((th x)^a)
 *   M(x)      = x mu_bar(x) + a th^{a-1} Preg(1-a, th x)
 *   P(x)      = th^{-a} sum_{m>=1} Preg(a m, th x)
 *
 * with Preg/Q the regularized incomplete gamma functions.  For th x beyond
 * ~40 the kernel has flattened onto its limit a* = th^{1-a}/a to double
 * precision, which also caps the Mittag-Leffler argument.
 */
KernelPair tempered_pair(const BernsteinSpec& spec) {
    double a = spec.alpha, th = spec.theta;
    double g1ma = std::tgamma(1.0 - a);
    double astar = std::pow(th, 1.0 - a) / a;
    KernelPair p;
    p.spec = spec;
    p.mu_bar = [a, th, g1ma](double x) {
        return std::pow(x, -a) * std::exp(-th * x) / g1ma -
               std::pow(th, a) * boost::math::gamma_q(1.0 - a, th * x);
    };
    p.k = [a, th, astar](double x) {
        double z = th * x;
        if (z >= 40.0) return astar;
        return std::pow(x, a - 1.0) * std::exp(-z) * mittag_leffler(a, a, std::pow(z, a));
    };
    p.M = [a, th, mu = p.mu_bar](double x) {
        return x * mu(x) +
               a * std::pow(th, a - 1.0) * boost::math::gamma_p(1.0 - a, th * x);
    };
    p.P = [a, th](double x) {
        double z = th * x, sum = 0.0;
        for (int m = 1; m < 100000; ++m) {
            double t = boost::math::gamma_p(a * m, z);
            sum += t;
            if (t < 1e-18 && a * m > z) break;
        }
        return sum * std::pow(th, -a);
    };
    p.q = stable_q(a);  // the x->0 limit is blind to the tempering
    p.provenance = PairProvenance::ClosedForm;
    p.alpha_hat = a;
    return p;
}

/*
 * Explicit triplets: k is recovered by numerically inverting 1/f and both
 * kernels are tabulated on a log grid with pchip interpolation in log-log
 * coordinates, plus fitted power extensions below the grid.  The defining
 * Levy integral for f only exists on Re(l) > 0, so a deformed contour cannot
 * be used for black-box densities; the inversion runs Gaver-Stehfest on the
 * positive real axis instead.
 */
struct LogLogTable {
    std::shared_ptr<Pchip> spline;
    double x_lo, x_hi;
    double v_lo, v_hi;
    double pow_lo, pow_hi;  // local exponents at the two ends

    double operator()(double x) const {
        if (x <= x_lo) return v_lo * std::pow(x / x_lo, pow_lo);
        if (x >= x_hi) return v_hi * std::pow(x / x_hi, pow_hi);
        return std::exp((*spline)(std::log(x)));
    }
};

LogLogTable make_loglog(const std::vector<double>& xs, const std::vector<double>& vs) {
    size_t n = xs.size();
    std::vector<double> lx(n), lv(n);
    for (size_t i = 0; i < n; ++i) {
        if (!(vs[i] > 0.0))
            throw numeric_error("kernel tabulation produced a non-positive value",
                                "x=" + std::to_string(xs[i]));
        lx[i] = std::log(xs[i]);
        lv[i] = std::log(vs[i]);
    }
    LogLogTable t;
    t.x_lo = xs.front();
    t.x_hi = xs.back();
    t.v_lo = vs.front();
    t.v_hi = vs.back();
    t.pow_lo = (lv[1] - lv[0]) / (lx[1] - lx[0]);
    t.pow_hi = (lv[n - 1] - lv[n - 2]) / (lx[n - 1] - lx[n - 2]);
    t.spline = std::make_shared<Pchip>(std::move(lx), std::move(lv));
    return t;
}

KernelPair explicit_pair(const BernsteinSpec& spec, const PairOptions& opts) {
    if (spec.a != 0.0 || spec.b != 0.0)
        throw domain_error(
            "make_pair: kernel construction requires characteristics (0, mu)");

    auto one_over_f = [spec](double l) { return 1.0 / eval_f(spec, l); };

    const double x_lo = 1e-10, x_hi = 3.0 * opts.domain;
    const int npts = opts.table_points;
    std::vector<double> xs(npts), kv(npts), mv(npts);
    double worst_est = 0.0;
    int gs_n = std::max(5, std::min(8, opts.ilt_nodes / 4));
    for (int i = 0; i < npts; ++i) {
        double lx = std::log(x_lo) + (std::log(x_hi) - std::log(x_lo)) * i / (npts - 1);
        xs[i] = std::exp(lx);
        InversionDiagnostics d;
        kv[i] = gaver_stehfest_invert(one_over_f, xs[i], gs_n, &d);
        worst_est = std::max(worst_est, d.accuracy_estimate / std::max(kv[i], 1e-300));
        mv[i] = quad::tail([&](double t) { return spec.density(t); }, xs[i]);
        if (!(kv[i] > 0.0))
            throw numeric_error("make_pair: inverted kernel is not positive",
                                "x=" + std::to_string(xs[i]) +
                                    " k=" + std::to_string(kv[i]));
    }
    LogLogTable ktab = make_loglog(xs, kv);
    LogLogTable mtab = make_loglog(xs, mv);

    // primitives: analytic in the power region, then cumulative quadrature
    std::vector<double> Pv(npts), Mv(npts);
    Pv[0] = kv[0] * xs[0] / (ktab.pow_lo + 1.0);
    Mv[0] = mv[0] * xs[0] / (mtab.pow_lo + 1.0);
    if (!(ktab.pow_lo > -1.0) || !(mtab.pow_lo > -1.0))
        throw numeric_error("make_pair: kernels are not integrable at 0",
                            "k exponent=" + std::to_string(ktab.pow_lo) +
                                " mu exponent=" + std::to_string(mtab.pow_lo));
    for (int i = 1; i < npts; ++i) {
        Pv[i] = Pv[i - 1] + quad::smooth([&](double u) { return ktab(u); },
                                         xs[i - 1], xs[i]);
        Mv[i] = Mv[i - 1] + quad::smooth([&](double u) { return mtab(u); },
                                         xs[i - 1], xs[i]);
    }
    LogLogTable Ptab = make_loglog(xs, Pv);
    LogLogTable Mtab = make_loglog(xs, Mv);

    KernelPair p;
    p.spec = spec;
    p.k = [ktab](double x) { return ktab(x); };
    p.mu_bar = [mtab](double x) { return mtab(x); };
    p.P = [Ptab](double x) { return Ptab(x); };
    p.M = [Mtab](double x) { return Mtab(x); };
    p.provenance = PairProvenance::NumericInversion;
    p.alpha_hat = -mtab.pow_lo;
    std::ostringstream diag;
    diag << "gaver-stehfest n=" << gs_n << "; max rel accuracy estimate " << worst_est
         << "; " << npts << " table points on [" << x_lo << ", " << x_hi << "]";
    p.diagnostics = diag.str();
    return p;
}

}  // namespace

KernelPair make_pair(const BernsteinSpec& spec, const PairOptions& opts) {
    KernelPair p;
    switch (spec.family) {
        case Family::Stable: p = stable_pair(spec); break;
        case Family::TemperedStable: p = tempered_pair(spec); break;
        case Family::ExplicitTriplet: p = explicit_pair(spec, opts); break;
        default: throw domain_error("make_pair: unknown family");
    }
    if (opts.q_override) {
        p.q = *opts.q_override;
        p.diagnostics += (p.diagnostics.empty() ? "" : "; ");
        p.diagnostics += "q overridden";
    } else if (opts.force_numeric_q || spec.family == Family::ExplicitTriplet) {
        // numeric pairs cannot extrapolate below the inversion noise floor
        double tol = p.provenance == PairProvenance::NumericInversion ? 1e-5 : 1e-9;
        p.q = compute_q_numeric(p, tol);
    }
    p.q_flagged = p.q >= 1.0;
    return p;
}

double compute_q(const KernelPair& pair) { return pair.q; }

double compute_q_numeric(const KernelPair& pair, double tol) {
    std::vector<double> s;
    for (int j = 10; j <= 30; ++j) {
        double x = std::pow(2.0, -j);
        s.push_back(pair.mu_bar(x) * pair.P(x));
    }
    auto converged = [tol](const std::vector<double>& v, double* out) {
        for (size_t i = 2; i < v.size(); ++i) {
            if (std::abs(v[i] - v[i - 1]) < tol && std::abs(v[i - 1] - v[i - 2]) < tol) {
                *out = v[i];
                return true;
            }
        }
        return false;
    };
    auto aitken = [](const std::vector<double>& v) {
        std::vector<double> t;
        for (size_t i = 0; i + 2 < v.size(); ++i) {
            double den = v[i + 2] - 2.0 * v[i + 1] + v[i];
            t.push_back(std::abs(den) < 1e-15 ? v[i + 2]
                                              : v[i + 2] - (v[i + 2] - v[i + 1]) *
                                                               (v[i + 2] - v[i + 1]) / den);
        }
        return t;
    };
    double q;
    std::vector<double> cur = s;
    for (int level = 0; level < 3 && cur.size() >= 3; ++level) {
        if (converged(cur, &q)) return q;
        cur = aitken(cur);
    }
    std::ostringstream os;
    os << "mu_bar(x) P(x) at x = 2^-j, j = 10..30:";
    for (double v : s) os << ' ' << v;
    throw numeric_error("compute_q: extrapolation did not converge", os.str());
}

double verify_sonine(const KernelPair& pair, double T, int n) {
    if (n < 2) throw domain_error("verify_sonine: n must be at least 2");
    const double dx = T / n;
    // joint-exact cells near the mu_bar singularity; growing the window with n
    // keeps the piecewise-linear region at a fixed physical offset
    const int W = std::min(n, std::max(256, n / 4));

    CellMoments cm = k_cell_moments(pair, dx, n);
    std::vector<double> mu(n + 1, 0.0);
    for (int j = 1; j <= n; ++j) mu[j] = pair.mu_bar(j * dx);

    double worst = 0.0;
    for (int i = 1; i <= n; ++i) {
        int jx = std::min(W, i);
        double row = joint_cumulative(pair, dx, i, jx);
        for (int j = jx; j < i; ++j) {
            int c = i - j;
            row += mu[j] * (cm.W0[c] - cm.S[c]) + mu[j + 1] * cm.S[c];
        }
        worst = std::max(worst, std::abs(row - 1.0));
    }
    return worst;
}

KernelPair mismatched_stable_pair(double alpha_mu, double alpha_k) {
    KernelPair mu_side = stable_pair(BernsteinSpec::stable(alpha_mu));
    KernelPair k_side = stable_pair(BernsteinSpec::stable(alpha_k));
    KernelPair p = k_side;
    p.mu_bar = mu_side.mu_bar;
    p.M = mu_side.M;
    p.M1 = mu_side.M1;
    p.stable_alpha.reset();  // no joint closed form for the mismatch
    p.alpha_hat = alpha_mu;
    p.q = 0.0;
    p.diagnostics = "deliberately mismatched pair (negative control)";
    return p;
}

}  // namespace cbf
