// Test-side oracles, independent of the library code they check:
// Gauss-Legendre quadrature, an exhaustive binomial-test enumeration and
// an empirical-CDF distance. Keep implementation-free of qnet internals.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

/// Nodes and weights of n-point Gauss-Legendre quadrature on [a, b],
/// found by Newton iteration on the Legendre polynomial.
inline std::vector<std::pair<double, double>> gauss_legendre(int n, double a, double b) {
    std::vector<std::pair<double, double>> out(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));  // Chebyshev start
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        out[i] = {mid - half * x, half * w};
        out[n - 1 - i] = {mid + half * x, half * w};
    }
    return out;
}

inline double integrate(const std::function<double(double)>& f, double a, double b, int n = 64) {
    double acc = 0.0;
    for (const auto& [x, w] : gauss_legendre(n, a, b)) acc += w * f(x);
    return acc;
}

/// Exact two-sided binomial test against p = 1/2 by full enumeration.
/// Pascal's triangle in doubles is exact while C(n,k) < 2^53.
inline double binom_test_enumeration(unsigned k, unsigned n) {
    if (k > n) throw std::invalid_argument("k > n");
    if (n == 0) return 1.0;
    std::vector<double> c(n + 1, 0.0);
    c[0] = 1.0;
    for (unsigned row = 1; row <= n; ++row)
        for (unsigned j = row; j >= 1; --j) c[j] += c[j - 1];
    const double scale = std::ldexp(1.0, -static_cast<int>(n));
    const double pivot = c[k];
    double p = 0.0;
    for (unsigned i = 0; i <= n; ++i)
        if (c[i] <= pivot) p += c[i] * scale;
    return p;
}

/// Kolmogorov-Smirnov distance between samples and a reference CDF.
inline double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        sup = std::max(sup, std::abs(f - static_cast<double>(i + 1) / n));
        sup = std::max(sup, std::abs(f - static_cast<double>(i) / n));
    }
    return sup;
}

}  // namespace oracle
