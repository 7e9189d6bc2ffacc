#ifndef CBF_OPERATORS_HPP
#define CBF_OPERATORS_HPP

#include <iosfwd>
#include <vector>

#include "cbf/grid.hpp"
#include "cbf/sonine.hpp"

namespace cbf {

enum class OpKind { RLIntegral, RLDerivative, CensoredDerivative, KOperator };

// Lower-triangular product-integration weights: (A phi)(x_i) = sum_{j<=i} w_ij phi_j.
class OperatorTable {
  public:
    OperatorTable(OpKind kind, Grid grid)
        : kind(kind), grid(grid),
          w_(static_cast<size_t>(grid.n + 1) * (grid.n + 2) / 2, 0.0) {}

    OpKind kind;
    Grid grid;

    double at(int i, int j) const { return w_[idx(i, j)]; }
    double& at(int i, int j) { return w_[idx(i, j)]; }

    GridFunction apply(const GridFunction& phi) const;
    double row_sum(int i) const;

    // derivative-type rows 1..3 are first-order only near the kernel singularity
    bool derivative_kind() const {
        return kind == OpKind::RLDerivative || kind == OpKind::CensoredDerivative;
    }
    static constexpr int kBoundaryLayer = 4;  // accuracy claims start at node 4

    void export_csv(std::ostream& os) const;  // rows (i, j, w)

  private:
    size_t idx(int i, int j) const {
        return static_cast<size_t>(i) * (i + 1) / 2 + j;
    }
    std::vector<double> w_;
};

OperatorTable make_rl_integral_table(const KernelPair& pair, Grid grid);
OperatorTable make_rl_derivative_table(const KernelPair& pair, Grid grid);
OperatorTable make_censored_derivative_table(const KernelPair& pair, Grid grid);
OperatorTable make_k_table(const KernelPair& pair, Grid grid);

// Tables for one (pair, grid), built once and reused by the solvers.
struct OperatorSet {
    KernelPair pair;
    Grid grid;
    OperatorTable rl_integral;
    OperatorTable rl_derivative;
    OperatorTable censored_derivative;
    OperatorTable k_op;

    OperatorSet(const KernelPair& p, Grid g)
        : pair(p), grid(g),
          rl_integral(make_rl_integral_table(p, g)),
          rl_derivative(make_rl_derivative_table(p, g)),
          censored_derivative(make_censored_derivative_table(p, g)),
          k_op(make_k_table(p, g)) {}
};

// one-shot conveniences (each materializes its table)
GridFunction rl_integral(const KernelPair& pair, const GridFunction& g);
GridFunction rl_derivative(const KernelPair& pair, const GridFunction& phi);
GridFunction censored_derivative(const KernelPair& pair, const GridFunction& phi);
GridFunction apply_K(const KernelPair& pair, const GridFunction& phi);

}  // namespace cbf

#endif
