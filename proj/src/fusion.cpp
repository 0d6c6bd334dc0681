#include "loqs/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "loqs/util.hpp"

#if defined(__GNUC__) && defined(__x86_64__)
#include <quadmath.h>
#define LOQS_FUSION_FLOAT128 1
namespace loqs::detail {
using wide = __float128;
inline wide wide_sqrt(wide x) { return sqrtq(x); }
}  // namespace loqs::detail
#else
namespace loqs::detail {
using wide = long double;
inline wide wide_sqrt(wide x) { return sqrtl(x); }
}  // namespace loqs::detail
#endif

namespace loqs {

std::vector<double> fusion_distribution(int m, int n, double eta) {
    if (m < 0 || n < 0) throw ParameterError("fusion_distribution: negative photon number");
    if (eta <= 0.0 || eta >= 1.0)
        throw ParameterError("fusion_distribution: beamsplitter is degenerate at eta in {0, 1}");
    using detail::wide;
    const wide we = eta;
    const wide rho = detail::wide_sqrt(wide(1) - we * we);
    const int total = m + n;

    // Build (eta a^+ + rho b^+)^m (rho a^+ - eta b^+)^n |0,0> layer by layer
    // in the Fock basis. The creation-operator ladder amplifies rounding
    // noise by roughly sqrt(binom(m+n, n)), which exhausts double precision
    // near m = n = 50; extended precision keeps the distribution exact to
    // ~1e-20 through the sizes the fusion chains touch.
    std::vector<wide> c{wide(1)};
    int t = 0;
    auto apply = [&](wide ua, wide ub) {
        std::vector<wide> next(t + 2, wide(0));
        for (int s = 0; s <= t; ++s) {
            next[s + 1] += ua * c[s] * detail::wide_sqrt(wide(s + 1));
            next[s] += ub * c[s] * detail::wide_sqrt(wide(t - s + 1));
        }
        c.swap(next);
        ++t;
    };
    for (int i = 0; i < m; ++i) apply(we, rho);
    for (int i = 0; i < n; ++i) apply(rho, -we);

    wide norm2 = wide(1);
    for (int i = 2; i <= m; ++i) norm2 *= wide(i);
    for (int i = 2; i <= n; ++i) norm2 *= wide(i);

    std::vector<double> p(total + 1, 0.0);
    for (int s = 0; s <= total; ++s) p[s] = static_cast<double>(c[s] * c[s] / norm2);
    return p;
}

double fusion_prob(int s, int m, int n, double eta) {
    if (s < 0 || s > m + n) throw ParameterError("fusion_prob: s outside [0, m+n]");
    return fusion_distribution(m, n, eta)[s];
}

double grow_prob(int m, int n, double eta) {
    if (m < 1 || n < 0) throw ParameterError("grow_prob: need m >= 1, n >= 0");
    const int limit = m + n - std::max(m, n);  // strict growth requires s < limit
    if (limit <= 0) return 0.0;
    const auto p = fusion_distribution(m, n, eta);
    double sum = 0.0;
    for (int s = 0; s < limit; ++s) sum += p[s];
    return sum;
}

namespace {

double objective_value(int m, int n, double eta, const EtaObjective& obj) {
    switch (obj.mode) {
        case EtaObjective::Mode::Recycled:
            return grow_prob(m, n, eta);
        case EtaObjective::Mode::SuccessOnly:
            return fusion_distribution(m, n, eta)[0];
        case EtaObjective::Mode::FrugalTarget: {
            const int d = obj.target_d;
            const int dmax = obj.target_d_max > 0 ? obj.target_d_max : d;
            const auto p = fusion_distribution(m, n, eta);
            double v = 0.0;
            if (m + n >= d) {
                // Probability of landing in [d, d'].
                for (int s = 0; s <= m + n - d; ++s)
                    if (m + n - s <= dmax) v += p[s];
            } else {
                // Growth-weighted objective below the target.
                const int mx = std::max(m, n);
                for (int s = 0; s < m + n - mx; ++s) v += (m + n - s - mx) * p[s];
            }
            return v;
        }
    }
    return 0.0;
}

}  // namespace

EtaOptimum optimize_eta(int m, int n, const EtaObjective& obj) {
    if (m < 1 || n < 0) throw ParameterError("optimize_eta: bad photon numbers");
    const double lo_clip = 1e-4, hi_clip = 1.0 - 1e-4;

    // 200-point grid seed.
    double best_eta = lo_clip, best_val = -1.0;
    const int grid = 200;
    for (int i = 0; i <= grid; ++i) {
        const double eta = lo_clip + (hi_clip - lo_clip) * i / grid;
        const double v = objective_value(m, n, eta, obj);
        if (v > best_val) {
            best_val = v;
            best_eta = eta;
        }
    }

    // Golden-section refinement around the best grid cell.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = std::max(lo_clip, best_eta - (hi_clip - lo_clip) / grid);
    double b = std::min(hi_clip, best_eta + (hi_clip - lo_clip) / grid);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = objective_value(m, n, x1, obj), f2 = objective_value(m, n, x2, obj);
    while (b - a > 1e-6) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = objective_value(m, n, x2, obj);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = objective_value(m, n, x1, obj);
        }
    }
    const double eta = 0.5 * (a + b);
    return EtaOptimum{eta, objective_value(m, n, eta, obj)};
}

double limited_recycling_prob(int n) {
    if (n < 1) throw ParameterError("limited_recycling_prob: need n >= 1");
    const double eta = 1.0 / std::sqrt(2.0);
    const auto p = fusion_distribution(n, n, eta);
    double sum = 0.0;
    for (int s = 0; s <= n / 2; ++s) sum += p[s];
    return sum;
}

// ---------------------------------------------------------------------------
// Bucket inventory
// ---------------------------------------------------------------------------

std::int64_t BucketState::count(int n) const {
    if (n == unlimited_at) return std::numeric_limits<std::int64_t>::max();
    auto it = counts.find(n);
    return it == counts.end() ? 0 : it->second;
}

void BucketState::add(int n) {
    if (n == unlimited_at || n <= 0) return;
    ++counts[n];
}

void BucketState::remove(int n) {
    if (n == unlimited_at) return;
    auto it = counts.find(n);
    if (it == counts.end() || it->second <= 0)
        throw InconsistencyError("BucketState: removing from an empty bucket");
    if (--it->second == 0) counts.erase(it);
}

std::vector<int> BucketState::available_sizes() const {
    std::vector<int> sizes;
    bool seen_unlimited = false;
    for (const auto& [n, c] : counts) {
        if (c > 0) sizes.push_back(n);
        if (n == unlimited_at) seen_unlimited = true;
    }
    if (!seen_unlimited) {
        sizes.push_back(unlimited_at);
        std::sort(sizes.begin(), sizes.end());
    }
    return sizes;
}

// ---------------------------------------------------------------------------
// Strategy simulation
// ---------------------------------------------------------------------------

namespace {

struct PairChoice {
    int m = 0, n = 0;
    bool fallback = false;
};

// Largest size with two copies available (the unlimited bucket always has
// two).
PairChoice choose_balanced(const BucketState& b) {
    int best = b.unlimited_at;
    for (const auto& [n, c] : b.counts)
        if (c >= 2 && n > best) best = n;
    if (b.unlimited_at > best) best = b.unlimited_at;
    return {best, best, false};
}

PairChoice choose_modesty(const BucketState& b) {
    int largest = b.unlimited_at;
    for (const auto& [n, c] : b.counts)
        if (c >= 1 && n > largest) largest = n;
    return {largest, b.unlimited_at, false};
}

PairChoice choose_random(const BucketState& b, Rng& rng) {
    const std::vector<int> sizes = b.available_sizes();
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        for (std::size_t j = i; j < sizes.size(); ++j) {
            if (i == j && sizes[i] != b.unlimited_at && b.count(sizes[i]) < 2) continue;
            pairs.emplace_back(sizes[i], sizes[j]);
        }
    }
    if (pairs.empty()) return {b.unlimited_at, b.unlimited_at, true};
    const auto& pick = pairs[rng.uniform_int(pairs.size())];
    return {pick.first, pick.second, false};
}

PairChoice choose_frugal(const BucketState& b, int d, int dmax) {
    const std::vector<int> sizes = b.available_sizes();

    // First preference: any pair landing straight in the [d, d'] window,
    // taking the largest state with the smallest complement so nothing is
    // overshot.
    for (auto ia = sizes.rbegin(); ia != sizes.rend(); ++ia) {
        for (auto ib = sizes.begin(); ib != sizes.end() && *ib <= *ia; ++ib) {
            const int a = *ia, s = *ib;
            if (a == s && a != b.unlimited_at && b.count(a) < 2) continue;
            const int sum = a + s;
            if (sum >= d && sum <= dmax) return {a, s, false};
        }
    }

    // Otherwise keep building balanced pairs, but never fuse two states
    // beyond d'/2; oversized states wait for a complement to appear.
    for (auto it = sizes.rbegin(); it != sizes.rend(); ++it) {
        const int a = *it;
        if (a > dmax / 2) continue;
        if (a == b.unlimited_at || b.count(a) >= 2) return {a, a, false};
    }
    return {b.unlimited_at, b.unlimited_at, true};
}

}  // namespace

StrategyRunResult run_strategy(const FusionStrategy& strategy, std::int64_t steps, Rng& rng,
                               const StrategyRunOptions& options) {
    if (steps < 1) throw ParameterError("run_strategy: need steps >= 1");
    if (strategy.target_d < 1) throw ParameterError("run_strategy: need target d >= 1");
    if (strategy.slack() < strategy.target_d)
        throw ParameterError("run_strategy: frugal slack d' must be >= d");

    const int d = strategy.target_d;
    const int dmax = strategy.slack();
    BucketState buckets;
    buckets.unlimited_at = options.start_unlimited_at;

    // Memoized reflectivity optimum and outcome CDF per (m, n) pair.
    std::map<std::pair<int, int>, std::vector<double>> cdf_cache;
    auto outcome_cdf = [&](int m, int n) -> const std::vector<double>& {
        const auto key = std::minmax(m, n);
        auto it = cdf_cache.find(key);
        if (it != cdf_cache.end()) return it->second;
        EtaObjective obj;
        if (strategy.kind == FusionStrategy::Kind::Frugal) {
            obj.mode = EtaObjective::Mode::FrugalTarget;
            obj.target_d = d;
            obj.target_d_max = dmax;
        } else {
            obj.mode = strategy.recycled ? EtaObjective::Mode::Recycled
                                         : EtaObjective::Mode::SuccessOnly;
        }
        const EtaOptimum opt = optimize_eta(key.first, key.second, obj);
        std::vector<double> cdf = fusion_distribution(key.first, key.second, opt.eta);
        for (std::size_t i = 1; i < cdf.size(); ++i) cdf[i] += cdf[i - 1];
        return cdf_cache.emplace(key, std::move(cdf)).first->second;
    };

    StrategyRunResult result;
    const std::int64_t burn_in =
        static_cast<std::int64_t>(options.burn_in_fraction * static_cast<double>(steps));

    for (std::int64_t step = 0; step < steps; ++step) {
        PairChoice pick;
        switch (strategy.kind) {
            case FusionStrategy::Kind::Balanced:
                pick = choose_balanced(buckets);
                break;
            case FusionStrategy::Kind::Modesty:
                pick = choose_modesty(buckets);
                break;
            case FusionStrategy::Kind::Random:
                pick = choose_random(buckets, rng);
                break;
            case FusionStrategy::Kind::Frugal:
                pick = choose_frugal(buckets, d, dmax);
                break;
        }
        if (pick.fallback) ++result.fallbacks;

        buckets.remove(pick.m);
        buckets.remove(pick.n);

        const auto& cdf = outcome_cdf(pick.m, pick.n);
        const double u = rng.uniform();
        int s = static_cast<int>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        s = std::min<int>(s, static_cast<int>(cdf.size()) - 1);
        const int produced = pick.m + pick.n - s;

        bool banked = false;
        const bool keep = strategy.recycled || s == 0;
        if (keep && produced >= d) {
            banked = true;  // target reached; retire the state from play
            if (step >= burn_in) ++result.banked;
        } else if (keep && produced > 0) {
            buckets.add(produced);
        }
        if (step >= burn_in) ++result.counted_steps;

        if (options.keep_trace &&
            static_cast<std::int64_t>(result.trace.size()) < options.trace_limit) {
            std::string summary;
            for (const auto& [size, count] : buckets.counts) {
                if (count <= 0) continue;
                if (!summary.empty()) summary += ' ';
                summary += std::to_string(size) + ':' + std::to_string(count);
            }
            result.trace.push_back({step, pick.m, pick.n, s, produced > 0 ? produced : 0, banked,
                                    pick.fallback, std::move(summary)});
        }
    }

    result.rate = result.counted_steps > 0
                      ? static_cast<double>(result.banked) / static_cast<double>(result.counted_steps)
                      : 0.0;
    auto [lo, hi] = wilson_interval(result.banked, result.counted_steps);
    result.wilson_low = lo;
    result.wilson_high = hi;
    return result;
}

ReductionResult reduce_state(int n, int d, double eta_small, Rng& rng) {
    if (n < d || d < 0) throw ParameterError("reduce_state: need n >= d >= 0");
    if (eta_small <= 0.0 || eta_small >= 1.0)
        throw ParameterError("reduce_state: reflectivity must lie in (0, 1)");
    ReductionResult r;
    int k = n;
    std::map<int, std::vector<double>> taps;  // weak-tap outcome CDF per size
    while (k > d) {
        auto it = taps.find(k);
        if (it == taps.end()) {
            // Weak tap against vacuum: s detected with C(k,s) eta^{2s} (1-eta^2)^{k-s}.
            std::vector<double> cdf = fusion_distribution(k, 0, eta_small);
            for (std::size_t i = 1; i < cdf.size(); ++i) cdf[i] += cdf[i - 1];
            it = taps.emplace(k, std::move(cdf)).first;
        }
        const auto& cdf = it->second;
        const double u = rng.uniform();
        int s = static_cast<int>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        s = std::min(s, k);
        k -= s;
        ++r.operations;
    }
    r.success = (k == d);
    return r;
}

}  // namespace loqs
