#ifndef LOQS_WALK_HPP
#define LOQS_WALK_HPP

#include <cstdint>
#include <vector>

#include "loqs/rng.hpp"
#include "loqs/types.hpp"

namespace loqs {

/// Coined walker on a 2D square lattice, coordinates in [-t_max, t_max] and
/// coin values (c_x, c_y) in {-1, +1}^2. Amplitudes are stored densely over
/// the reachable cone.
class WalkState {
  public:
    explicit WalkState(int t_max);

    int extent() const { return t_max_; }
    int side() const { return 2 * t_max_ + 1; }

    cd& amp(int x, int y, int cx, int cy);
    cd amp(int x, int y, int cx, int cy) const;

    /// Probability of finding the walker at (x, y), summed over coins.
    double site_probability(int x, int y) const;
    double norm_squared() const;

    std::vector<cd>& raw() { return amps_; }
    const std::vector<cd>& raw() const { return amps_; }

    /// |0, 0, 1, 1>.
    static WalkState origin(int t_max);

  private:
    int index(int x, int y, int cx, int cy) const;
    int t_max_;
    std::vector<cd> amps_;
};

/// Static congestion field: each site carries a Hadamard coin when live or a
/// bit-flip coin when defective. The origin is always live.
struct CoinField {
    int t_max = 0;
    std::vector<std::uint8_t> defect;  ///< row-major over (2t+1)^2 sites

    bool is_defect(int x, int y) const;

    /// Sites defective i.i.d. with probability 1 - p, origin excluded.
    static CoinField random(int t_max, double p, Rng& rng);
    static CoinField clear(int t_max);
    static CoinField all_defects(int t_max);
};

/// One step: site-dependent coin (H (x) H or X (x) X) then the shift. Throws
/// if any amplitude would leave the lattice.
WalkState step(const WalkState& state, const CoinField& coins);

/// Independent random sign flips with probability p_d on every basis
/// amplitude; shared by the walk and the density-matrix testbed.
void random_sign_flips(std::vector<cd>& amps, double p_d, Rng& rng);

/// Dephasing applied to a walk state.
WalkState dephase(const WalkState& state, double p_d, Rng& rng);

/// Per-step factor (1 - 2 p_d)^2 that the ensemble-averaged map applies to
/// every density-matrix off-diagonal.
double dephase_map_check(double p_d);

struct WalkMetrics {
    double variance = 0.0;     ///< variance of the marginal x distribution
    double escape_prob = 0.0;  ///< mass with |x| > t_b
};

WalkMetrics metrics(const WalkState& state, int t_b);

struct WalkConfig {
    int t_max = 50;
    double p = 1.0;    ///< probability a site is live
    double p_d = 0.0;  ///< per-amplitude sign-flip probability
    int t_b = 10;
    int trials = 100;
    int steps = 0;  ///< 0 means walk for t_max steps
};

struct WalkSeries {
    std::vector<double> time;
    std::vector<double> variance_mean;
    std::vector<double> variance_stderr;
    std::vector<double> escape_mean;
    std::vector<double> escape_stderr;
};

/// Mean metrics per step over independently drawn congestion fields and
/// dephasing realizations.
WalkSeries ensemble_run(const WalkConfig& config, Rng& rng, int threads = 1);

/// Classical token walker with reversal defects: fresh unbiased coin at live
/// sites, deterministic direction reversal at defects. Cross-validation
/// oracle for the p_d = 1/2 quantum engine.
struct ClassicalWalkResult {
    std::vector<double> variance;  ///< variance of x per step (token ensemble)
};
ClassicalWalkResult classical_walk(const WalkConfig& config, std::int64_t tokens, Rng& rng);

}  // namespace loqs

#endif
