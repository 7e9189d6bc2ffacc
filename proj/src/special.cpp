#include "cbf/special.hpp"

#include <cmath>
#include <limits>

#include "cbf/errors.hpp"

namespace cbf {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

double stable_q(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw domain_error("stable_q: alpha must lie in (0,1)");
    return std::sin(kPi * alpha) / (kPi * alpha);
}

double gamma_ratio(double x, double y) {
    return std::exp(std::lgamma(x + 1.0) - std::lgamma(y + 1.0));
}

/*
 * E_{a,b}(z) = sum_n z^n / Gamma(a n + b).
 *
 * All terms are positive for z >= 0, so plain summation is stable; terms are
 * chained by ratios to avoid overflow of z^n.  The series peaks around
 * n ~ z^{1/a}/a, so for z^{1/a} beyond ~200 we switch to the exponential
 * asymptotic expansion
 *
 *   E_{a,b}(z) = (1/a) z^{(1-b)/a} exp(z^{1/a}) - sum_k z^{-k}/Gamma(b - a k).
 */
double mittag_leffler(double a, double b, double z) {
    if (!(a > 0.0 && a <= 1.0))
        throw domain_error("mittag_leffler: alpha must lie in (0,1]");
    if (z < 0.0)
        throw domain_error("mittag_leffler: implemented for z >= 0 only");

    double zroot = std::pow(z, 1.0 / a);
    if (zroot < 200.0) {
        double term = 1.0 / std::tgamma(b);
        double sum = term;
        const int nmax = 2000;
        for (int n = 1; n < nmax; ++n) {
            term *= z * std::exp(std::lgamma(a * (n - 1) + b) - std::lgamma(a * n + b));
            sum += term;
            if (term < sum * 1e-17 && a * n + b > zroot) return sum;
        }
        throw numeric_error("mittag_leffler: series did not converge",
                            "z=" + std::to_string(z));
    }

    double lead = (1.0 / a) * std::pow(z, (1.0 - b) / a) * std::exp(zroot);
    double corr = 0.0;
    for (int k = 1; k <= 6; ++k) {
        double g = b - a * k;
        // 1/Gamma at non-positive integers vanishes
        if (g <= 0.0 && std::abs(g - std::round(g)) < 1e-14) continue;
        corr += std::pow(z, -k) / std::tgamma(g);
    }
    return lead - corr;
}

}  // namespace cbf
