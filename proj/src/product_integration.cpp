#include "cbf/product_integration.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <cmath>

#include "cbf/quad.hpp"

namespace cbf {

CellMoments kernel_cell_moments(const std::function<double(double)>& w,
                                const std::function<double(double)>& primitive,
                                const std::function<double(double)>& first_moment,
                                double dx, int n) {
    CellMoments cm;
    cm.dx = dx;
    cm.W0.assign(n + 1, 0.0);
    cm.S.assign(n + 1, 0.0);
    for (int c = 1; c <= n; ++c) {
        double a = (c - 1) * dx, b = c * dx;
        double w0 = primitive(b) - primitive(a);
        double w1;
        if (first_moment)
            w1 = first_moment(b) - first_moment(a);
        else if (c == 1)
            w1 = quad::finite([&](double u) { return u * w(u); }, a, b);
        else
            w1 = quad::smooth([&](double u) { return u * w(u); }, a, b);
        cm.W0[c] = w0;
        cm.S[c] = (b * w0 - w1) / dx;
    }
    return cm;
}

CellMoments k_cell_moments(const KernelPair& pair, double dx, int n) {
    return kernel_cell_moments(pair.k, pair.P, pair.P1, dx, n);
}

CellMoments mu_cell_moments(const KernelPair& pair, double dx, int n) {
    return kernel_cell_moments(pair.mu_bar, pair.M, pair.M1, dx, n);
}

/*
 * For the stable family both kernels are exact power laws, and
 *
 *   int_0^{z} r^{-a} (x-r)^{a-1} dr / (Gamma(1-a) Gamma(a)) = I_{z/x}(1-a, a)
 *   int_0^{z} r^{1-a}(x-r)^{a-1} dr / (Gamma(1-a) Gamma(a)) = x (1-a) I_{z/x}(2-a, a)
 *
 * with I the regularized incomplete beta function, so the product moments of
 * mu_bar(r) k(x_i - r) come out exact and the row masses telescope to 1.
 */
double joint_cumulative(const KernelPair& pair, double dx, int i, int j) {
    if (j <= 0) return 0.0;
    if (pair.stable_alpha) {
        double a = *pair.stable_alpha;
        if (j >= i) return 1.0;
        return boost::math::ibeta(1.0 - a, a, double(j) / i);
    }
    double xi = i * dx;
    return quad::finite([&](double r) { return pair.mu_bar(r) * pair.k(xi - r); },
                        0.0, std::min(j, i) * dx, 1e-12);
}

void joint_cell_moments(const KernelPair& pair, double dx, int i, int j, double* V0,
                        double* V1) {
    double xi = i * dx;
    double lo = j * dx, hi = (j + 1) * dx;
    if (pair.stable_alpha) {
        double a = *pair.stable_alpha;
        double u0 = double(j) / i, u1 = double(j + 1) / i;
        *V0 = boost::math::ibeta(1.0 - a, a, u1) - boost::math::ibeta(1.0 - a, a, u0);
        *V1 = xi * (1.0 - a) *
              (boost::math::ibeta(2.0 - a, a, u1) - boost::math::ibeta(2.0 - a, a, u0));
        return;
    }
    auto f = [&](double r) { return pair.mu_bar(r) * pair.k(xi - r); };
    auto g = [&](double r) { return r * f(r); };
    bool singular = (j == 0) || (j + 1 == i) || i <= 8;
    if (singular) {
        *V0 = quad::finite(f, lo, hi, 1e-12);
        *V1 = quad::finite(g, lo, hi, 1e-12);
    } else {
        *V0 = quad::smooth(f, lo, hi, 1e-13);
        *V1 = quad::smooth(g, lo, hi, 1e-13);
    }
}

}  // namespace cbf
