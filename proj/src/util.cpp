#include "loqs/util.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

namespace loqs {

double log_factorial(int n) {
    if (n < 0) throw std::domain_error("log_factorial: negative argument");
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double factorial(int n) {
    if (n < 0) throw std::domain_error("factorial: negative argument");
    if (n > 170) throw std::overflow_error("factorial: overflows double beyond 170!");
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

double log_binomial(int n, int k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (n <= 60) {
        double r = 1.0;
        k = std::min(k, n - k);
        for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return std::round(r);
    }
    return std::exp(log_binomial(n, k));
}

double hurwitz_zeta2(double a) {
    if (a <= 0.0) throw std::domain_error("hurwitz_zeta2: requires a > 0");
    // Recurrence zeta(2,a) = zeta(2,a+1) + 1/a^2 until a is large, then the
    // asymptotic series 1/a + 1/(2a^2) + 1/(6a^3) - 1/(30a^5) + 1/(42a^7).
    double acc = 0.0;
    while (a < 24.0) {
        acc += 1.0 / (a * a);
        a += 1.0;
    }
    double inv = 1.0 / a;
    double inv2 = inv * inv;
    double tail = inv + 0.5 * inv2 + inv * inv2 / 6.0 - inv * inv2 * inv2 / 30.0 +
                  inv * inv2 * inv2 * inv2 / 42.0;
    return acc + tail;
}

std::pair<double, double> wilson_interval(std::int64_t successes, std::int64_t trials, double z) {
    if (trials <= 0) return {0.0, 1.0};
    double n = static_cast<double>(trials);
    double p = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& fn, int threads) {
    if (count <= 0) return;
    int nw = std::max(1, threads);
    nw = static_cast<int>(std::min<std::int64_t>(nw, count));
    if (nw == 1) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (int w = 0; w < nw; ++w) {
        pool.emplace_back([&, w]() {
            for (std::int64_t i = w; i < count; i += nw) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace loqs
