#ifndef LOQS_FUSION_HPP
#define LOQS_FUSION_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "loqs/rng.hpp"
#include "loqs/types.hpp"

namespace loqs {

/// P(s | m, n, eta): probability of detecting s photons in the monitored arm
/// when |m> and |n> meet on a beamsplitter of reflectivity eta, leaving an
/// (m+n-s)-photon state behind. Computed by a numerically stable polynomial
/// build of the two-mode output state; agrees with the closed binomial-sum
/// form. eta in (0, 1) strictly.
double fusion_prob(int s, int m, int n, double eta);

/// Full outcome distribution over s = 0..m+n. Sums to 1.
std::vector<double> fusion_distribution(int m, int n, double eta);

/// Probability that the fusion output is strictly larger than both inputs:
/// sum of P(s) over s < m + n - max(m, n).
double grow_prob(int m, int n, double eta);

/// Objective used when optimizing the beamsplitter reflectivity.
struct EtaObjective {
    enum class Mode {
        Recycled,     ///< maximize grow_prob (all growth outcomes kept)
        SuccessOnly,  ///< maximize P(0) (non-recycled protocols)
        FrugalTarget, ///< maximize reaching [d, d'] or weighted growth below d
    };
    Mode mode = Mode::Recycled;
    int target_d = 0;       ///< frugal target
    int target_d_max = 0;   ///< frugal slack d' >= d
};

struct EtaOptimum {
    double eta = 0.0;
    double probability = 0.0;
};

/// argmax over eta in (0,1) of the chosen objective; 200-point grid seeding
/// followed by golden-section refinement to 1e-6 in eta.
EtaOptimum optimize_eta(int m, int n, const EtaObjective& objective);

/// Limited-recycling success probability at eta = 1/sqrt(2):
/// sum_{s=0}^{floor(n/2)} P(s | n, n). Approaches ~1/3 for large n.
double limited_recycling_prob(int n);

/// Photon-number-indexed inventory for the fusion Markov process.
struct BucketState {
    std::map<int, std::int64_t> counts;  ///< finite inventories
    int unlimited_at = 1;                ///< photon number held in unlimited supply

    std::int64_t count(int n) const;
    void add(int n);
    void remove(int n);  ///< no-op on the unlimited bucket
    std::vector<int> available_sizes() const;  ///< includes unlimited_at
};

struct FusionStrategy {
    enum class Kind { Balanced, Modesty, Random, Frugal };
    Kind kind = Kind::Balanced;
    int target_d = 2;
    int frugal_slack = 0;  ///< d'; 0 means d' = d
    bool recycled = true;

    int slack() const { return frugal_slack > 0 ? frugal_slack : target_d; }
};

struct FusionTraceRecord {
    std::int64_t step = 0;
    int m = 0;
    int n = 0;
    int s = 0;
    int produced = 0;   ///< m + n - s (0 = vacuum)
    bool banked = false;
    bool fallback = false;  ///< pair selection fell back to the unlimited bucket
    std::string bucket_summary;  ///< "size:count ..." over finite buckets after the event
};

struct StrategyRunResult {
    double rate = 0.0;  ///< banked states per fusion op after burn-in
    double wilson_low = 0.0;
    double wilson_high = 0.0;
    std::int64_t banked = 0;
    std::int64_t counted_steps = 0;
    std::int64_t fallbacks = 0;
    std::vector<FusionTraceRecord> trace;  ///< filled only when requested
};

struct StrategyRunOptions {
    double burn_in_fraction = 0.1;
    bool keep_trace = false;
    std::int64_t trace_limit = 10000;
    int start_unlimited_at = 1;  ///< hybrid schemes start from larger states
};

/// Simulates the bucket Markov chain for `steps` fusion operations. States
/// reaching target_d photons are banked (counted and retired); the rate is
/// banked / steps over the post-burn-in window with a Wilson interval.
StrategyRunResult run_strategy(const FusionStrategy& strategy, std::int64_t steps, Rng& rng,
                               const StrategyRunOptions& options = {});

/// Per-run statistics of reduce_state.
struct ReductionResult {
    std::int64_t operations = 0;
    bool success = false;  ///< landed exactly on d photons
};

/// Repeated weak subtraction with a vacuum ancilla (reflectivity eta_small)
/// from n photons down to exactly d. Mean operation count is O(n - d).
ReductionResult reduce_state(int n, int d, double eta_small, Rng& rng);

}  // namespace loqs

#endif
