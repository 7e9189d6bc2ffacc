#ifndef CBF_PCHIP_HPP
#define CBF_PCHIP_HPP

#include <cmath>
#include <vector>

#include "cbf/errors.hpp"

namespace cbf {

// Monotone cubic interpolation (Fritsch-Carlson slope limiting).
class Pchip {
  public:
    Pchip() = default;
    Pchip(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        size_t n = x_.size();
        if (n < 2 || y_.size() != n) throw domain_error("Pchip: need matching n >= 2");
        for (size_t i = 1; i < n; ++i)
            if (!(x_[i] > x_[i - 1])) throw domain_error("Pchip: abscissas must increase");
        d_.resize(n);
        std::vector<double> h(n - 1), s(n - 1);
        for (size_t i = 0; i + 1 < n; ++i) {
            h[i] = x_[i + 1] - x_[i];
            s[i] = (y_[i + 1] - y_[i]) / h[i];
        }
        d_[0] = s[0];
        d_[n - 1] = s[n - 2];
        for (size_t i = 1; i + 1 < n; ++i) {
            if (s[i - 1] * s[i] <= 0.0) {
                d_[i] = 0.0;
            } else {
                double w1 = 2.0 * h[i] + h[i - 1];
                double w2 = h[i] + 2.0 * h[i - 1];
                d_[i] = (w1 + w2) / (w1 / s[i - 1] + w2 / s[i]);
            }
        }
    }

    double operator()(double x) const {
        size_t n = x_.size();
        if (x <= x_.front()) return y_.front() + d_.front() * (x - x_.front());
        if (x >= x_.back()) return y_.back() + d_.back() * (x - x_.back());
        size_t lo = 0, hi = n - 1;
        while (hi - lo > 1) {
            size_t mid = (lo + hi) / 2;
            (x_[mid] <= x ? lo : hi) = mid;
        }
        double h = x_[lo + 1] - x_[lo];
        double t = (x - x_[lo]) / h;
        double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
        double h10 = t * (1.0 - t) * (1.0 - t);
        double h01 = t * t * (3.0 - 2.0 * t);
        double h11 = t * t * (t - 1.0);
        return h00 * y_[lo] + h * h10 * d_[lo] + h01 * y_[lo + 1] + h * h11 * d_[lo + 1];
    }

  private:
    std::vector<double> x_, y_, d_;
};

}  // namespace cbf

#endif
