#ifndef CBF_KERNEL_CHAIN_HPP
#define CBF_KERNEL_CHAIN_HPP

#include <vector>

#include "cbf/sonine.hpp"

namespace cbf {

// Sampled iterated kernel k_j(x, .) together with its quadrature normalization.
struct KernelJDensity {
    double x = 0.0;
    int j = 1;
    std::vector<double> r;        // m interior nodes of (0, x)
    std::vector<double> density;  // k_j(x, r_l)
    double normalization = 0.0;   // int_0^x k_j(x, r) dr
};

/*
 * k_1(x, r) = mu_bar(r) k(x - r) and k_j(x, r) = int_r^x k_{j-1}(x, s) k_1(s, r) ds.
 * The computation factors out the universal mu_bar(r) singularity and iterates
 * on rho_j(r) = k_j(x, r) / mu_bar(r), which keeps every product integration
 * against known singular weights: k cell moments near the moving endpoint,
 * power-law moments (x - r)^{j a - 1} near the fixed one, and adaptive panels
 * where mu_bar is steep.  Near r = 0 the iterated kernels pick up an extra
 * logarithmic factor, so the normalization integrates that region adaptively
 * with on-demand evaluation instead of trusting the samples.
 */
KernelJDensity kernel_j_density(const KernelPair& pair, int j, double x, int m);

// Inverse-CDF sampler for the one-step undershoot density k_1(y, .) of a
// general pair (the stable family uses the exact Beta representation instead).
class ChainCdfSampler {
  public:
    ChainCdfSampler(const KernelPair& pair, double y, int cells = 256);
    double sample(double u01) const;
    double cdf(double r) const;

  private:
    double y_, dx_, alpha_hat_;
    std::vector<double> cum_;  // cum_[c] = F(c dx), c = 0..cells
};

}  // namespace cbf

#endif
