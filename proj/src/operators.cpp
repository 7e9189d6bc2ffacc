#include "cbf/operators.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "cbf/product_integration.hpp"
#include "cbf/quad.hpp"

namespace cbf {

GridFunction OperatorTable::apply(const GridFunction& phi) const {
    if (!(phi.grid == grid)) throw domain_error("OperatorTable: grid mismatch");
    std::vector<double> out(grid.n + 1, 0.0);
    for (int i = 0; i <= grid.n; ++i) {
        const double* row = &w_[idx(i, 0)];
        double acc = 0.0;
        for (int j = 0; j <= i; ++j) acc += row[j] * phi.v[j];
        out[i] = acc;
    }
    // the RL derivative exists on (0, T] only; report the one-sided value
    if (kind == OpKind::RLDerivative) out[0] = out[1];
    return GridFunction(grid, std::move(out));
}

double OperatorTable::row_sum(int i) const {
    const double* row = &w_[idx(i, 0)];
    double acc = 0.0;
    for (int j = 0; j <= i; ++j) acc += row[j];
    return acc;
}

void OperatorTable::export_csv(std::ostream& os) const {
    os << "i,j,w\n";
    char buf[64];
    for (int i = 0; i <= grid.n; ++i)
        for (int j = 0; j <= i; ++j) {
            std::snprintf(buf, sizeof buf, "%d,%d,%.17g\n", i, j, at(i, j));
            os << buf;
        }
}

OperatorTable make_rl_integral_table(const KernelPair& pair, Grid grid) {
    OperatorTable t(OpKind::RLIntegral, grid);
    CellMoments cm = k_cell_moments(pair, grid.dx(), grid.n);
    // cell [x_j, x_{j+1}] of row i maps to kernel cell c = i - j; the node at
    // x_{j+1} sits at the near end u = (c-1) dx.
    for (int i = 1; i <= grid.n; ++i) {
        for (int j = 0; j < i; ++j) {
            int c = i - j;
            t.at(i, j) += cm.W0[c] - cm.S[c];
            t.at(i, j + 1) += cm.S[c];
        }
    }
    return t;
}

namespace {

/*
 * Exact derivative of the product-integrated convolution of the interpolant:
 * for piecewise-linear phi,
 *
 *   d/dx (mu_bar * phi)(x_i) = phi(0) mu_bar(x_i) + sum_j slope_j M0[i-j],
 *
 * which annihilates constants up to the exact mu_bar factor.  On top of that,
 * pairs with exact power kernels get a causal correction that removes the
 * interpolation defect of the leading x^{m a} components: the correction
 * coefficients are fitted from the first nodes (never ahead of row i) and
 * weighted by the known defect of the slope formula on each basis power.
 */
std::vector<double> slope_formula_on_samples(const std::vector<double>& f,
                                             const CellMoments& mu0, int n, double dx) {
    std::vector<double> out(n + 1, 0.0);
    for (int i = 1; i <= n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < i; ++j)
            acc += (f[j + 1] - f[j]) / dx * mu0.W0[i - j];
        out[i] = acc;
    }
    return out;
}

// least-squares matrix mapping values at nodes 1..L to coefficients of the
// basis powers x^{beta_m}; returned row-major (nb x L)
std::vector<double> fit_matrix(const std::vector<double>& beta, int nb,
                               const std::vector<double>& nodes, int L) {
    std::vector<double> V(L * nb);       // V[l][m]
    std::vector<double> scale(nb, 0.0);
    for (int m = 0; m < nb; ++m) {
        for (int l = 0; l < L; ++l) {
            double v = std::pow(nodes[l], beta[m]);
            V[l * nb + m] = v;
            scale[m] += v * v;
        }
        scale[m] = std::sqrt(scale[m]);
        for (int l = 0; l < L; ++l) V[l * nb + m] /= scale[m];
    }
    // normal equations N c = V^T y
    std::vector<double> N(nb * nb, 0.0);
    for (int m = 0; m < nb; ++m)
        for (int p = 0; p < nb; ++p) {
            double s = 0.0;
            for (int l = 0; l < L; ++l) s += V[l * nb + m] * V[l * nb + p];
            N[m * nb + p] = s;
        }
    for (int m = 0; m < nb; ++m) N[m * nb + m] += 1e-13;
    // invert N by Gauss-Jordan
    std::vector<double> Ninv(nb * nb, 0.0);
    for (int m = 0; m < nb; ++m) Ninv[m * nb + m] = 1.0;
    for (int col = 0; col < nb; ++col) {
        int piv = col;
        for (int r = col + 1; r < nb; ++r)
            if (std::abs(N[r * nb + col]) > std::abs(N[piv * nb + col])) piv = r;
        for (int c2 = 0; c2 < nb; ++c2) {
            std::swap(N[piv * nb + c2], N[col * nb + c2]);
            std::swap(Ninv[piv * nb + c2], Ninv[col * nb + c2]);
        }
        double d = N[col * nb + col];
        for (int c2 = 0; c2 < nb; ++c2) {
            N[col * nb + c2] /= d;
            Ninv[col * nb + c2] /= d;
        }
        for (int r = 0; r < nb; ++r) {
            if (r == col) continue;
            double f = N[r * nb + col];
            for (int c2 = 0; c2 < nb; ++c2) {
                N[r * nb + c2] -= f * N[col * nb + c2];
                Ninv[r * nb + c2] -= f * Ninv[col * nb + c2];
            }
        }
    }
    // FM = diag(1/scale) Ninv V^T, (nb x L)
    std::vector<double> FM(nb * L, 0.0);
    for (int m = 0; m < nb; ++m)
        for (int l = 0; l < L; ++l) {
            double s = 0.0;
            for (int p = 0; p < nb; ++p) s += Ninv[m * nb + p] * V[l * nb + p];
            FM[m * L + l] = s / scale[m];
        }
    return FM;
}

}  // namespace

OperatorTable make_rl_derivative_table(const KernelPair& pair, Grid grid) {
    OperatorTable t(OpKind::RLDerivative, grid);
    const int n = grid.n;
    const double dx = grid.dx();
    CellMoments mu0 = mu_cell_moments(pair, dx, n);

    for (int i = 1; i <= n; ++i) {
        t.at(i, 0) += pair.mu_bar(grid.node(i));
        for (int j = 0; j < i; ++j) {
            double m = mu0.W0[i - j] / dx;
            t.at(i, j) -= m;
            t.at(i, j + 1) += m;
        }
    }

    if (pair.stable_alpha) {
        const double a = *pair.stable_alpha;
        std::vector<double> beta;
        for (double b : {a, 2.0 * a, 3.0 * a, 1.0, 2.0}) {
            bool dup = false;
            for (double e : beta) dup |= std::abs(e - b) < 1e-9;
            if (!dup) beta.push_back(b);
        }
        std::sort(beta.begin(), beta.end());
        const int nb = static_cast<int>(beta.size());
        const int Lmax = std::min(n, nb + 2);

        // defect of the slope formula on each basis power
        std::vector<std::vector<double>> defect(nb);
        for (int m = 0; m < nb; ++m) {
            std::vector<double> samples(n + 1);
            for (int i = 0; i <= n; ++i) samples[i] = std::pow(grid.node(i), beta[m]);
            defect[m] = slope_formula_on_samples(samples, mu0, n, dx);
            double coef = std::exp(std::lgamma(beta[m] + 1.0) -
                                   std::lgamma(beta[m] + 1.0 - a));
            for (int i = 1; i <= n; ++i)
                defect[m][i] = coef * std::pow(grid.node(i), beta[m] - a) - defect[m][i];
        }

        std::vector<std::vector<double>> fits(Lmax + 1);
        std::vector<int> nb_of(Lmax + 1, 0);
        for (int L = std::min(4, Lmax); L <= Lmax; ++L) {
            int use = std::min(nb, L);
            std::vector<double> nodes(L);
            for (int l = 0; l < L; ++l) nodes[l] = grid.node(l + 1);
            fits[L] = fit_matrix(beta, use, nodes, L);
            nb_of[L] = use;
        }

        for (int i = OperatorTable::kBoundaryLayer; i <= n; ++i) {
            int L = std::min(i, Lmax);
            if (L < 4) continue;
            const auto& FM = fits[L];
            int use = nb_of[L];
            for (int m = 0; m < use; ++m) {
                double d = defect[m][i];
                if (d == 0.0) continue;
                double colsum = 0.0;
                for (int l = 0; l < L; ++l) {
                    t.at(i, l + 1) += d * FM[m * L + l];
                    colsum += FM[m * L + l];
                }
                t.at(i, 0) -= d * colsum;
            }
        }
    }

    // node 0 is handled in apply(): the operator exists on (0, T] only
    return t;
}

OperatorTable make_censored_derivative_table(const KernelPair& pair, Grid grid) {
    OperatorTable t = make_rl_derivative_table(pair, grid);
    t.kind = OpKind::CensoredDerivative;
    for (int i = 1; i <= grid.n; ++i) t.at(i, i) -= pair.mu_bar(grid.node(i));
    // the piecewise-linear limit at x -> 0+ is 0
    t.at(0, 0) = 0.0;
    return t;
}

OperatorTable make_k_table(const KernelPair& pair, Grid grid) {
    OperatorTable t(OpKind::KOperator, grid);
    const int n = grid.n;
    const double dx = grid.dx();
    t.at(0, 0) = 1.0;  // K phi(0) = phi(0) by definition
    for (int i = 1; i <= n; ++i) {
        for (int j = 0; j < i; ++j) {
            double V0, V1;
            joint_cell_moments(pair, dx, i, j, &V0, &V1);
            double w_near = (grid.node(j + 1) * V0 - V1) / dx;
            double w_far = (V1 - grid.node(j) * V0) / dx;
            // guard roundoff-negative weights
            t.at(i, j) += std::max(w_near, 0.0);
            t.at(i, j + 1) += std::max(w_far, 0.0);
        }
    }
    return t;
}

GridFunction rl_integral(const KernelPair& pair, const GridFunction& g) {
    return make_rl_integral_table(pair, g.grid).apply(g);
}
GridFunction rl_derivative(const KernelPair& pair, const GridFunction& phi) {
    return make_rl_derivative_table(pair, phi.grid).apply(phi);
}
GridFunction censored_derivative(const KernelPair& pair, const GridFunction& phi) {
    return make_censored_derivative_table(pair, phi.grid).apply(phi);
}
GridFunction apply_K(const KernelPair& pair, const GridFunction& phi) {
    return make_k_table(pair, phi.grid).apply(phi);
}

}  // namespace cbf
