#pragma once

#include <cmath>

namespace d2d {

// Welford accumulator with deterministic pairwise merge (chunks are merged in
// index order, so results do not depend on worker count).
struct RunningStats {
    long n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / n;
        m2 += d * (x - mean);
    }

    void merge(const RunningStats& o) {
        if (o.n == 0) return;
        if (n == 0) { *this = o; return; }
        const double d = o.mean - mean;
        const long nn = n + o.n;
        m2 += o.m2 + d * d * (static_cast<double>(n) * o.n) / nn;
        mean += d * o.n / nn;
        n = nn;
    }

    double variance() const { return n > 1 ? m2 / (n - 1) : 0.0; }
    double std_err() const { return n > 0 ? std::sqrt(variance() / n) : 0.0; }
};

// Paired accumulator; tracks covariance for delta-method errors on ratios.
struct PairStats {
    long n = 0;
    double mean_x = 0.0, mean_y = 0.0;
    double cxx = 0.0, cyy = 0.0, cxy = 0.0;

    void add(double x, double y) {
        ++n;
        const double dx = x - mean_x;
        mean_x += dx / n;
        const double dy = y - mean_y;
        mean_y += dy / n;
        cxx += dx * (x - mean_x);
        cyy += dy * (y - mean_y);
        cxy += dx * (y - mean_y);
    }

    void merge(const PairStats& o) {
        if (o.n == 0) return;
        if (n == 0) { *this = o; return; }
        const long nn = n + o.n;
        const double dx = o.mean_x - mean_x;
        const double dy = o.mean_y - mean_y;
        const double w = static_cast<double>(n) * o.n / nn;
        cxx += o.cxx + dx * dx * w;
        cyy += o.cyy + dy * dy * w;
        cxy += o.cxy + dx * dy * w;
        mean_x += dx * o.n / nn;
        mean_y += dy * o.n / nn;
        n = nn;
    }

    double var_x() const { return n > 1 ? cxx / (n - 1) : 0.0; }
    double var_y() const { return n > 1 ? cyy / (n - 1) : 0.0; }
    double cov() const { return n > 1 ? cxy / (n - 1) : 0.0; }
};

inline double binomial_std_err(double p, long n) {
    return n > 0 ? std::sqrt(p * (1.0 - p) / n) : 0.0;
}

// Standard error of f = (x - y) / x at the sample means of a paired batch.
inline double ratio_savings_std_err(const PairStats& s) {
    if (s.n < 2 || s.mean_x == 0.0) return 0.0;
    const double gx = s.mean_y / (s.mean_x * s.mean_x); // d f / d mean_x
    const double gy = -1.0 / s.mean_x;                  // d f / d mean_y
    const double v = gx * gx * s.var_x() + gy * gy * s.var_y() + 2.0 * gx * gy * s.cov();
    return std::sqrt(std::max(0.0, v) / s.n);
}

} // namespace d2d
