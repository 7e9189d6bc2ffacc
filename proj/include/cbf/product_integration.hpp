#ifndef CBF_PRODUCT_INTEGRATION_HPP
#define CBF_PRODUCT_INTEGRATION_HPP

#include <functional>
#include <vector>

#include "cbf/sonine.hpp"

namespace cbf {

/*
 * Product integration on a uniform grid: the singular kernel factor is
 * integrated exactly over each cell through its primitive, the remaining
 * factor is modelled as piecewise linear.  For a kernel w with primitive W,
 * cell c covers u in [(c-1) dx, c dx] and
 *
 *   W0[c] = int_cell w(u) du
 *   S[c]  = int_cell (c dx - u) w(u) du / dx      (weight of the far node)
 *
 * so that int_cell g(u) w(u) du ~ g_c W0[c] + (g_{c-1} - g_c) S[c] when g is
 * linear between the cell endpoints (g_c the value at u = c dx).
 */
struct CellMoments {
    std::vector<double> W0, S;
    double dx = 0.0;
};

CellMoments kernel_cell_moments(const std::function<double(double)>& w,
                                const std::function<double(double)>& primitive,
                                const std::function<double(double)>& first_moment,
                                double dx, int n);

CellMoments k_cell_moments(const KernelPair& pair, double dx, int n);
CellMoments mu_cell_moments(const KernelPair& pair, double dx, int n);

// V0 = int over [x_j, x_{j+1}] of mu_bar(r) k(x_i - r) dr, V1 the r-weighted
// version; exact incomplete-beta differences for stable pairs, adaptive
// quadrature otherwise.
void joint_cell_moments(const KernelPair& pair, double dx, int i, int j, double* V0,
                        double* V1);

// cumulative joint mass int_0^{j dx} mu_bar(r) k(x_i - r) dr
double joint_cumulative(const KernelPair& pair, double dx, int i, int j);

}  // namespace cbf

#endif
