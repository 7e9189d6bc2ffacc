#ifndef CBF_BERNSTEIN_HPP
#define CBF_BERNSTEIN_HPP

#include <complex>
#include <functional>
#include <optional>
#include <string>

#include "cbf/errors.hpp"

namespace cbf {

enum class Family { Stable, TemperedStable, ExplicitTriplet };

// Density presets expressible in config files. Custom handles can be passed
// through the C++/python API directly.
enum class DensityKind { Custom, Stable, Tempered, Exponential, ExpOverT };

// A complete Bernstein function f(l) = a + b l + int (1 - e^{-l t}) m(t) dt,
// given either by family (closed forms) or by an explicit triplet (a, b, m).
struct BernsteinSpec {
    Family family = Family::Stable;
    double alpha = 0.5;  // Stable / TemperedStable index
    double theta = 0.0;  // tempering rate

    // explicit triplet
    double a = 0.0;  // killing
    double b = 0.0;  // drift
    std::function<double(double)> density;  // Levy density m(t), t > 0
    DensityKind density_kind = DensityKind::Custom;
    double density_p0 = 0.0, density_p1 = 0.0;  // preset parameters

    // divergence overrides for classify_triplet (empty = decide numerically)
    std::optional<bool> m0_finite_hint;
    std::optional<bool> m1_finite_hint;

    static BernsteinSpec stable(double alpha);
    static BernsteinSpec tempered_stable(double alpha, double theta);
    static BernsteinSpec explicit_triplet(double a, double b,
                                          std::function<double(double)> m,
                                          std::optional<bool> m0_finite = {},
                                          std::optional<bool> m1_finite = {});
    // preset explicit triplets (serializable; carry their known hints)
    static BernsteinSpec explicit_preset(double a, double b, DensityKind kind,
                                         double p0, double p1);

    bool complex_capable() const { return family != Family::ExplicitTriplet; }
};

// f(lambda); lambda > 0.  Explicit triplets integrate the defining formula,
// split at t = 1 with a further split at 1/lambda for large lambda.
double eval_f(const BernsteinSpec& spec, double lambda);

// analytic continuation for the built-in families (used by contour inversion)
std::complex<double> eval_f(const BernsteinSpec& spec, std::complex<double> lambda);

// conjugate f*(l) = l / f(l)
std::function<double(double)> conjugate(const BernsteinSpec& spec);

struct TripletClassification {
    int row = 0;              // Nr. 1..8
    double a_star = 0.0;
    double b_star = 0.0;
    double m0 = 0.0;          // total mass; +inf when divergent
    double m1 = 0.0;          // first moment; +inf when divergent
    bool m0_finite = false;
    bool m1_finite = false;
    bool indeterminate = false;  // divergence undecidable within budget
    std::string note;
};

// Classify (a, b, m0, m1) and compute the conjugate characteristics
// a* = 1/(b + m1), b* = 1/(a + m0) with the convention 1/inf = 0.
TripletClassification classify_triplet(const BernsteinSpec& spec);

}  // namespace cbf

#endif
