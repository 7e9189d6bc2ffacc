#include "cbf/kernel_chain.hpp"

#include <algorithm>
#include <cmath>

#include "cbf/product_integration.hpp"
#include "cbf/quad.hpp"

namespace cbf {

namespace {

constexpr int kAdaptiveLeft = 64;   // panels with steep mu_bar, integrated adaptively
constexpr int kPowerRight = 16;     // panels handled with (x-s)^e moments
constexpr int kAdaptiveNorm = 32;   // normalization region with on-demand evaluation

// one level of rho: samples on the uniform sub-grid plus endpoint models
struct RhoLevel {
    std::vector<double> v;  // nodes 1..m (index 0 unused)
    double e = 0.0;         // right-end exponent: rho ~ c (x - r)^e
    double c = 0.0;
    double logA = 0.0;      // left-end model rho ~ logA * ln(r/dx) + logB, r < dx
    double logB = 0.0;

    double eval(double r, double x, double dx, int m) const {
        if (r >= m * dx) return e >= 1.0 ? 0.0 : c * std::pow(x - r, e);
        if (r <= dx) return logA * std::log(std::max(r, 1e-300) / dx) + logB;
        double s = r / dx;
        int i = std::min(static_cast<int>(s), m - 1);
        double w = s - i;
        return v[i] * (1.0 - w) + v[i + 1] * w;
    }
};

struct ChainWork {
    const KernelPair* pair;
    double x, dx;
    int m;
    CellMoments mcm;         // mu_bar moments on the sub-grid
    std::vector<double> mu;  // mu_bar at nodes 1..m, plus mu_bar(x) at m+1
};

/*
 * int_r^x mu_bar(s) k(s - r) rho(s) ds with rho from the previous level.
 * Panels: adaptive over the partial cell at s = r (k singular) and wherever
 * mu_bar is steep; exact k moments against linear mu_bar*rho in the bulk;
 * exact (x-s)^e moments near the fixed endpoint; closed power moments on the
 * final cell.
 */
double transfer(const ChainWork& w, const RhoLevel& prev, double r) {
    const double x = w.x, dx = w.dx;
    const int m = w.m;
    const auto& pair = *w.pair;
    auto rho = [&](double s) { return prev.eval(s, x, dx, m); };
    auto integrand = [&](double s) {
        return pair.mu_bar(s) * pair.k(s - r) * rho(s);
    };

    // first node strictly above r (node-aligned r maps to the next node)
    int a0 = static_cast<int>(std::floor(r / dx + 1e-9)) + 1;
    if (a0 > m) return quad::finite(integrand, r, x, 1e-12);

    double acc = quad::finite(integrand, r, a0 * dx, 1e-12);

    bool power_tail = prev.e < 1.0;
    int pow_from = power_tail ? std::max(a0, m - kPowerRight) : m;
    for (int a = a0; a < pow_from; ++a) {
        if (a < kAdaptiveLeft) {
            acc += quad::finite(integrand, a * dx, (a + 1) * dx, 1e-12);
            continue;
        }
        // exact k moments over the offset cell, linear h = mu_bar * rho
        double u0 = a * dx - r, u1 = (a + 1) * dx - r;
        double K0 = pair.P(u1) - pair.P(u0);
        double K1 = pair.P1 ? pair.P1(u1) - pair.P1(u0) : 0.5 * (u0 + u1) * K0;
        double S = (u1 * K0 - K1) / (u1 - u0);
        double h0 = w.mu[a] * prev.v[a];
        double h1 = w.mu[a + 1] * prev.v[a + 1];
        acc += h1 * (K0 - S) + h0 * S;
    }
    if (!power_tail) {
        // rho vanishes at x at least linearly: one plain cell down to rho(x) = 0
        double u0 = m * dx - r, u1 = x - r;
        double K0 = pair.P(u1) - pair.P(u0);
        double K1 = pair.P1 ? pair.P1(u1) - pair.P1(u0) : 0.5 * (u0 + u1) * K0;
        double S = (u1 * K0 - K1) / (u1 - u0);
        acc += w.mu[m] * prev.v[m] * S;
        return acc;
    }
    // (x-s)^e panels: linear model of phi(s) = mu_bar(s) k(s-r) rho(s) (x-s)^{-e}
    double e = prev.e;
    for (int a = pow_from; a < m; ++a) {
        double t1 = x - a * dx, t0 = x - (a + 1) * dx;  // t = x - s, t0 < t1
        double T0 = (std::pow(t1, e + 1.0) - std::pow(t0, e + 1.0)) / (e + 1.0);
        double T1 = (std::pow(t1, e + 2.0) - std::pow(t0, e + 2.0)) / (e + 2.0);
        double phi1 = w.mu[a] * pair.k(a * dx - r) * prev.v[a] / std::pow(t1, e);
        double phi0 = w.mu[a + 1] * pair.k((a + 1) * dx - r) * prev.v[a + 1] /
                      std::pow(t0, e);
        // phi as a function of t: phi(t) = phi0 + (phi1 - phi0)(t - t0)/(t1 - t0)
        double slope = (phi1 - phi0) / (t1 - t0);
        acc += (phi0 - slope * t0) * T0 + slope * T1;
    }
    // final cell [r_m, x]: rho = c (x-s)^e, mu_bar * k linear in t
    double phx = pair.mu_bar(x) * pair.k(x - r);
    double phm = w.mu[m] * pair.k(m * dx - r);
    acc += prev.c * std::pow(dx, e + 1.0) *
           (phx / (e + 1.0) + (phm - phx) / (e + 2.0));
    return acc;
}

void fit_end_models(RhoLevel& lvl, const ChainWork& w, int level) {
    const int m = w.m;
    double e = level * w.pair->alpha_hat - 1.0;
    lvl.e = e;
    lvl.c = e < 1.0 ? lvl.v[m] / std::pow(w.x - m * w.dx, e) : 0.0;
    if (level >= 2) {
        lvl.logA = (lvl.v[2] - lvl.v[1]) / std::log(2.0);
        lvl.logB = lvl.v[1];
    } else {
        lvl.logA = 0.0;
        lvl.logB = lvl.v[1];
    }
}

RhoLevel build_level(const ChainWork& w, const KernelPair& pair, int levels) {
    RhoLevel cur;
    cur.v.assign(w.m + 1, 0.0);
    for (int l = 1; l <= w.m; ++l) cur.v[l] = pair.k(w.x - l * w.dx);
    fit_end_models(cur, w, 1);
    if (pair.stable_alpha)  // the stable kernel is an exact power
        cur.c = 1.0 / std::tgamma(*pair.stable_alpha);
    for (int level = 2; level <= levels; ++level) {
        RhoLevel next;
        next.v.assign(w.m + 1, 0.0);
        for (int l = 1; l <= w.m; ++l) next.v[l] = transfer(w, cur, l * w.dx);
        fit_end_models(next, w, level);
        cur = std::move(next);
    }
    return cur;
}

}  // namespace

KernelJDensity kernel_j_density(const KernelPair& pair, int j, double x, int m) {
    if (j < 1) throw domain_error("kernel_j_density: j must be at least 1");
    if (!(x > 0.0)) throw domain_error("kernel_j_density: x must be positive");
    if (m < 64) throw domain_error("kernel_j_density: need at least 64 nodes");

    ChainWork w;
    w.pair = &pair;
    w.x = x;
    w.m = m;
    w.dx = x / (m + 1);
    w.mcm = mu_cell_moments(pair, w.dx, m + 1);
    w.mu.resize(m + 2);
    for (int l = 1; l <= m; ++l) w.mu[l] = pair.mu_bar(l * w.dx);
    w.mu[m + 1] = pair.mu_bar(x);

    RhoLevel cur = build_level(w, pair, j);

    KernelJDensity out;
    out.x = x;
    out.j = j;
    out.r.resize(m);
    out.density.resize(m);
    for (int l = 1; l <= m; ++l) {
        out.r[l - 1] = l * w.dx;
        out.density[l - 1] = w.mu[l] * cur.v[l];
    }

    // normalization: adaptive near 0 (the iterated kernels carry an extra
    // logarithm there), exact mu_bar moments in the bulk, power panels near x
    const double dx = w.dx;
    double norm = 0.0;
    if (j == 1) {
        norm += quad::finite([&](double r) { return pair.mu_bar(r) * pair.k(x - r); },
                             0.0, kAdaptiveNorm * dx, 1e-12);
    } else {
        RhoLevel lower = build_level(w, pair, j - 1);
        norm += quad::finite(
            [&](double r) { return pair.mu_bar(r) * transfer(w, lower, r); }, 0.0,
            kAdaptiveNorm * dx, 1e-11);
    }
    bool power_tail = cur.e < 1.0;
    int pow_from = power_tail ? m - kPowerRight : m;
    for (int a = kAdaptiveNorm; a < pow_from; ++a) {
        double m0 = w.mcm.W0[a + 1], S = w.mcm.S[a + 1];
        // node a+1 sits at the near end of sub-grid cell a+1
        norm += cur.v[a + 1] * (m0 - S) + cur.v[a] * S;
    }
    if (!power_tail) {
        norm += cur.v[m] * w.mcm.S[m + 1];
        out.normalization = norm;
        return out;
    }
    if (j == 1) {
        norm += quad::finite([&](double r) { return pair.mu_bar(r) * pair.k(x - r); },
                             pow_from * dx, x, 1e-12);
        out.normalization = norm;
        return out;
    }
    double e = cur.e;
    for (int a = pow_from; a < m; ++a) {
        double t1 = x - a * dx, t0 = x - (a + 1) * dx;
        double T0 = (std::pow(t1, e + 1.0) - std::pow(t0, e + 1.0)) / (e + 1.0);
        double T1 = (std::pow(t1, e + 2.0) - std::pow(t0, e + 2.0)) / (e + 2.0);
        double phi1 = w.mu[a] * cur.v[a] / std::pow(t1, e);
        double phi0 = w.mu[a + 1] * cur.v[a + 1] / std::pow(t0, e);
        double slope = (phi1 - phi0) / (t1 - t0);
        norm += (phi0 - slope * t0) * T0 + slope * T1;
    }
    norm += cur.c * std::pow(dx, e + 1.0) *
            (w.mu[m + 1] / (e + 1.0) + (w.mu[m] - w.mu[m + 1]) / (e + 2.0));
    out.normalization = norm;
    return out;
}

ChainCdfSampler::ChainCdfSampler(const KernelPair& pair, double y, int cells) {
    if (!(y > 0.0)) throw domain_error("ChainCdfSampler: level must be positive");
    y_ = y;
    dx_ = y / cells;
    alpha_hat_ = pair.alpha_hat;
    cum_.assign(cells + 1, 0.0);
    for (int c = 0; c < cells; ++c) {
        double lo = c * dx_, hi = (c + 1) * dx_;
        auto f = [&](double r) { return pair.mu_bar(r) * pair.k(y - r); };
        double v = (c == 0 || c == cells - 1) ? quad::finite(f, lo, hi, 1e-10)
                                              : quad::smooth(f, lo, hi, 1e-11);
        cum_[c + 1] = cum_[c] + v;
    }
    double total = cum_.back();
    if (!(total > 0.0))
        throw numeric_error("ChainCdfSampler: degenerate undershoot CDF",
                            "y=" + std::to_string(y));
    for (double& v : cum_) v /= total;  // quadrature drift on the exact mass 1
}

double ChainCdfSampler::cdf(double r) const {
    if (r <= 0.0) return 0.0;
    if (r >= y_) return 1.0;
    double s = r / dx_;
    int c = std::min(static_cast<int>(s), static_cast<int>(cum_.size()) - 2);
    double w = s - c;
    return cum_[c] * (1.0 - w) + cum_[c + 1] * w;
}

double ChainCdfSampler::sample(double u01) const {
    int cells = static_cast<int>(cum_.size()) - 1;
    auto it = std::upper_bound(cum_.begin(), cum_.end(), u01);
    int c = std::max(0, static_cast<int>(it - cum_.begin()) - 1);
    if (c >= cells) c = cells - 1;
    double lo = cum_[c], hi = cum_[c + 1];
    double frac = hi > lo ? (u01 - lo) / (hi - lo) : 0.5;
    if (c == 0)  // F ~ r^{1 - alpha} near 0
        return dx_ * std::pow(frac, 1.0 / (1.0 - alpha_hat_));
    if (c == cells - 1)  // 1 - F ~ (y - r)^{alpha} near y
        return y_ - dx_ * std::pow(1.0 - frac, 1.0 / alpha_hat_);
    return (c + frac) * dx_;
}

}  // namespace cbf
