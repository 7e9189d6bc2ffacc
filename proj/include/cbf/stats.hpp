#ifndef CBF_STATS_HPP
#define CBF_STATS_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "cbf/errors.hpp"

namespace cbf {

struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0;
    long n = 0;
};

inline MeanStderr mean_stderr(const std::vector<double>& xs) {
    if (xs.empty()) throw domain_error("mean_stderr: empty sample");
    double m = 0.0;
    for (double x : xs) m += x;
    m /= xs.size();
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    double var = xs.size() > 1 ? ss / (xs.size() - 1) : 0.0;
    return {m, std::sqrt(var / xs.size()), static_cast<long>(xs.size())};
}

// one-sample Kolmogorov-Smirnov statistic against a CDF
inline double ks_statistic(std::vector<double> sample,
                           const std::function<double(double)>& cdf) {
    std::sort(sample.begin(), sample.end());
    double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (size_t i = 0; i < sample.size(); ++i) {
        double f = cdf(sample[i]);
        d = std::max(d, std::abs(f - (i + 1) / n));
        d = std::max(d, std::abs(f - i / n));
    }
    return d;
}

inline double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
    }
    return d;
}

// asymptotic critical value at level p (p = 0.01 -> c = 1.62762)
inline double ks_critical(long n, double c = 1.62762) {
    return c / std::sqrt(static_cast<double>(n));
}

inline double ks_critical_two_sample(long n, long m, double c = 1.62762) {
    return c * std::sqrt((n + m) / (static_cast<double>(n) * m));
}

}  // namespace cbf

#endif
