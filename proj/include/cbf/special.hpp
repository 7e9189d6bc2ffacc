#ifndef CBF_SPECIAL_HPP
#define CBF_SPECIAL_HPP

namespace cbf {

// Two-parameter Mittag-Leffler function E_{a,b}(z) for real z >= 0, 0 < a <= 1.
// Power series with ratio-computed terms; exponential asymptotics for large z.
double mittag_leffler(double a, double b, double z);

// contraction constant of the stable pair: q = sin(pi a)/(pi a)
double stable_q(double alpha);

// Gamma(x+1)/Gamma(y+1) evaluated through lgamma (x, y > -1)
double gamma_ratio(double x, double y);

}  // namespace cbf

#endif
