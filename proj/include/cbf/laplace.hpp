#ifndef CBF_LAPLACE_HPP
#define CBF_LAPLACE_HPP

#include <complex>
#include <functional>
#include <string>

namespace cbf {

struct InversionDiagnostics {
    std::string scheme;       // "talbot" or "gaver-stehfest"
    int nodes = 0;
    double accuracy_estimate = 0.0;  // difference against a lower-order run
};

// Fixed-Talbot contour inversion (Abate & Valko). Requires F analytic off the
// negative real axis; F is sampled at N contour points in the upper half plane.
double talbot_invert(const std::function<std::complex<double>(std::complex<double>)>& F,
                     double t, int nodes = 32, InversionDiagnostics* diag = nullptr);

// Gaver-Stehfest inversion; samples F on the positive real axis only, so it
// applies to transforms that cannot be continued off (0, inf). Accuracy in
// double precision tops out around 1e-7 relative.
double gaver_stehfest_invert(const std::function<double(double)>& F, double t,
                             int n = 7, InversionDiagnostics* diag = nullptr);

}  // namespace cbf

#endif
