#include "cbf/laplace.hpp"

#include <cmath>
#include <vector>

#include "cbf/errors.hpp"

namespace cbf {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

double talbot_sum(const std::function<std::complex<double>(std::complex<double>)>& F,
                  double t, int N) {
    // contour s(th) = r th (cot th + i), r = 2N/(5t)
    const double r = 2.0 * N / (5.0 * t);
    double acc = 0.5 * std::exp(r * t) * F(std::complex<double>(r, 0.0)).real();
    for (int k = 1; k < N; ++k) {
        double th = k * kPi / N;
        double cot = std::cos(th) / std::sin(th);
        std::complex<double> s(r * th * cot, r * th);
        double sigma = th + (th * cot - 1.0) * cot;
        std::complex<double> val =
            std::exp(s * t) * F(s) * std::complex<double>(1.0, sigma);
        acc += val.real();
    }
    return acc * r / N;
}
}  // namespace

double talbot_invert(const std::function<std::complex<double>(std::complex<double>)>& F,
                     double t, int nodes, InversionDiagnostics* diag) {
    if (!(t > 0.0)) throw domain_error("talbot_invert: t must be positive");
    if (nodes < 8) throw domain_error("talbot_invert: need at least 8 nodes");
    double hi = talbot_sum(F, t, nodes);
    double lo = talbot_sum(F, t, nodes - nodes / 4);
    double est = std::abs(hi - lo);
    if (diag) {
        diag->scheme = "talbot";
        diag->nodes = nodes;
        diag->accuracy_estimate = est;
    }
    if (!std::isfinite(hi))
        throw numeric_error("talbot_invert: contour sum is not finite",
                            "t=" + std::to_string(t));
    return hi;
}

namespace {

// Stehfest weights for 2n terms
std::vector<double> stehfest_weights(int n) {
    std::vector<double> zeta(2 * n + 1, 0.0);
    auto lfact = [](int m) { return std::lgamma(m + 1.0); };
    for (int k = 1; k <= 2 * n; ++k) {
        double sum = 0.0;
        int j0 = (k + 1) / 2;
        int j1 = std::min(k, n);
        for (int j = j0; j <= j1; ++j) {
            double lt = n * std::log(double(j)) + lfact(2 * j) - lfact(n - j) -
                        lfact(j) - lfact(j - 1) - lfact(k - j) - lfact(2 * j - k);
            sum += std::exp(lt);
        }
        zeta[k] = ((n + k) % 2 == 0 ? 1.0 : -1.0) * sum;
    }
    return zeta;
}

double stehfest_sum(const std::function<double(double)>& F, double t, int n) {
    static const double ln2 = std::log(2.0);
    auto zeta = stehfest_weights(n);
    double acc = 0.0;
    for (int k = 1; k <= 2 * n; ++k) acc += zeta[k] * F(k * ln2 / t);
    return acc * ln2 / t;
}

}  // namespace

double gaver_stehfest_invert(const std::function<double(double)>& F, double t, int n,
                             InversionDiagnostics* diag) {
    if (!(t > 0.0)) throw domain_error("gaver_stehfest_invert: t must be positive");
    if (n < 3 || n > 10)
        throw domain_error("gaver_stehfest_invert: n must lie in [3, 10]");
    double hi = stehfest_sum(F, t, n);
    double lo = stehfest_sum(F, t, n - 1);
    double est = std::abs(hi - lo);
    if (diag) {
        diag->scheme = "gaver-stehfest";
        diag->nodes = 2 * n;
        diag->accuracy_estimate = est;
    }
    if (!std::isfinite(hi))
        throw numeric_error("gaver_stehfest_invert: sum is not finite",
                            "t=" + std::to_string(t));
    return hi;
}

}  // namespace cbf
