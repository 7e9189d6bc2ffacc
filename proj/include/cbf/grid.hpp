#ifndef CBF_GRID_HPP
#define CBF_GRID_HPP

#include <cmath>
#include <functional>
#include <vector>

#include "cbf/errors.hpp"

namespace cbf {

// Uniform grid on [0, T] with nodes x_i = i T / n.
struct Grid {
    double T = 1.0;
    int n = 2;

    static Grid make(double T, int n) {
        if (!(T > 0.0)) throw domain_error("Grid: T must be positive");
        if (n < 2) throw domain_error("Grid: n must be at least 2");
        return Grid{T, n};
    }

    double dx() const { return T / n; }
    double node(int i) const { return T * i / n; }
    int size() const { return n + 1; }

    bool operator==(const Grid& o) const { return T == o.T && n == o.n; }
};

// Node values with piecewise-linear semantics between nodes.
struct GridFunction {
    Grid grid;
    std::vector<double> v;

    GridFunction() = default;
    GridFunction(Grid g, std::vector<double> values) : grid(g), v(std::move(values)) {
        if (static_cast<int>(v.size()) != grid.size())
            throw domain_error("GridFunction: values/grid size mismatch");
        for (double x : v)
            if (!std::isfinite(x)) throw domain_error("GridFunction: non-finite value");
    }

    static GridFunction constant(Grid g, double c) {
        return GridFunction(g, std::vector<double>(g.size(), c));
    }

    static GridFunction sample(Grid g, const std::function<double(double)>& f) {
        std::vector<double> vals(g.size());
        for (int i = 0; i <= g.n; ++i) vals[i] = f(g.node(i));
        return GridFunction(g, std::move(vals));
    }

    double operator[](int i) const { return v[i]; }
    double& operator[](int i) { return v[i]; }

    // piecewise-linear interpolant, clamped to [0, T]
    double eval(double x) const {
        if (x <= 0.0) return v.front();
        if (x >= grid.T) return v.back();
        double s = x / grid.dx();
        int i = static_cast<int>(s);
        if (i >= grid.n) i = grid.n - 1;
        double w = s - i;
        return v[i] * (1.0 - w) + v[i + 1] * w;
    }

    double sup_norm() const {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }

    // sup norm restricted to nodes i >= first (used to exclude the boundary layer)
    double sup_norm_from(int first) const {
        double m = 0.0;
        for (int i = first; i <= grid.n; ++i) m = std::max(m, std::abs(v[i]));
        return m;
    }

    GridFunction& operator+=(const GridFunction& o) {
        for (size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
        return *this;
    }
    GridFunction& operator-=(const GridFunction& o) {
        for (size_t i = 0; i < v.size(); ++i) v[i] -= o.v[i];
        return *this;
    }
    GridFunction& operator*=(double c) {
        for (double& x : v) x *= c;
        return *this;
    }
};

inline GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
inline GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
inline GridFunction operator*(double c, GridFunction a) { return a *= c; }

}  // namespace cbf

#endif
