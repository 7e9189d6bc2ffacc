#ifndef CBF_SONINE_HPP
#define CBF_SONINE_HPP

#include <functional>
#include <optional>
#include <string>

#include "cbf/bernstein.hpp"

namespace cbf {

enum class PairProvenance { ClosedForm, NumericInversion };

struct PairOptions {
    int ilt_nodes = 32;        // contour / Stehfest budget
    double domain = 4.0;       // numeric tables cover (0, 3*domain]
    int table_points = 600;    // log-spaced sample count for numeric pairs
    std::optional<double> q_override;  // diagnostic hook; flags q >= 1
    bool force_numeric_q = false;      // route q through the extrapolated limit
};

/*
 * The Sonine pair attached to a Bernstein function f:
 *
 *   mu_bar(x) = mu(x, inf)            L(mu_bar) = f(l)/l
 *   k                                 L(k)      = 1/f(l)
 *   M(x) = int_0^x mu_bar             P(x) = int_0^x k   (the potential U)
 *   q    = lim_{x->0} mu_bar(x) P(x)  (contraction constant, q <= 1)
 *
 * P1 and M1 are the first-moment primitives int_0^x u k(u) du and
 * int_0^x u mu_bar(u) du; closed forms when the family provides them, empty
 * otherwise (cell moments then fall back to quadrature).
 */
struct KernelPair {
    BernsteinSpec spec;
    std::function<double(double)> mu_bar, k, M, P;
    std::function<double(double)> P1, M1;
    double q = 0.0;
    bool q_flagged = false;  // q >= 1: pair constructed but solvers must refuse
    PairProvenance provenance = PairProvenance::ClosedForm;
    double alpha_hat = 0.5;  // local exponent: mu_bar ~ c x^{-alpha_hat} near 0
    std::optional<double> stable_alpha;  // set iff both kernels are exact powers
    std::string diagnostics;
};

KernelPair make_pair(const BernsteinSpec& spec, const PairOptions& opts = {});

// q as carried by the pair (closed form where available)
double compute_q(const KernelPair& pair);

// q by extrapolating mu_bar(x) P(x) along x = 2^{-j}, j = 10..30; requires
// three consecutive agreements within tol, else throws numeric_error with
// the sampled sequence attached.  Numeric-inversion pairs pass a tol above
// their inversion noise floor.
double compute_q_numeric(const KernelPair& pair, double tol = 1e-9);

// max_i |(mu_bar * k)(x_i) - 1| over the nodes of a uniform n-grid on (0, T]
double verify_sonine(const KernelPair& pair, double T, int n);

// negative control: mu_bar from one stable index, k from another
KernelPair mismatched_stable_pair(double alpha_mu, double alpha_k);

}  // namespace cbf

#endif
