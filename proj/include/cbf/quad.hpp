#ifndef CBF_QUAD_HPP
#define CBF_QUAD_HPP

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <sstream>

#include "cbf/errors.hpp"

namespace cbf::quad {

/*
 * Quadrature wrappers.  Integrands here routinely have integrable endpoint
 * singularities (x^{-a} kernels); tanh-sinh probes doubly-exponentially close
 * to the endpoints, where such factors can overflow double precision even
 * though their weighted contribution is negligible.  Non-finite evaluations
 * are therefore treated as 0 - the standard truncation of the transformed
 * trapezoid sum at the representable range.
 */
template <class F>
auto guarded(F&& f) {
    return [f](double x) {
        double v = f(x);
        return std::isfinite(v) ? v : 0.0;
    };
}

// tanh-sinh for finite intervals; tolerates integrable endpoint singularities.
template <class F>
double finite(F&& f, double a, double b, double tol = 1e-13) {
    if (!(b > a)) return 0.0;
    thread_local boost::math::quadrature::tanh_sinh<double> integrator(12);
    double err = 0, l1 = 0;
    double v = integrator.integrate(guarded(f), a, b, tol, &err, &l1);
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "tanh_sinh over [" << a << ", " << b << "] returned " << v;
        throw numeric_error("quadrature failed", os.str());
    }
    return v;
}

// integral over (a, infinity); mapped to (0, 1] with t = a + (1-u)/u so
// algebraically decaying tails become an endpoint singularity.
template <class F>
double tail(F&& f, double a, double tol = 1e-13) {
    auto g = [&](double u) {
        double t = a + (1.0 - u) / u;
        return f(t) / (u * u);
    };
    return finite(g, 0.0, 1.0, tol);
}

// adaptive Gauss-Kronrod for smooth integrands
template <class F>
double smooth(F&& f, double a, double b, double tol = 1e-13) {
    if (!(b > a)) return 0.0;
    double err = 0;
    double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        guarded(f), a, b, 10, tol, &err);
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "gauss_kronrod over [" << a << ", " << b << "] returned " << v;
        throw numeric_error("quadrature failed", os.str());
    }
    return v;
}

}  // namespace cbf::quad

#endif
