#ifndef LOQS_LOOP_HPP
#define LOQS_LOOP_HPP

#include <vector>

#include "loqs/rng.hpp"
#include "loqs/types.hpp"

namespace loqs {

/// Per-time-bin 2x2 beamsplitter settings for one pass of the inner loop.
/// steps[t-1] is the setting at time-bin t, t = 1..m+1. The boundary steps
/// t = 1 and t = m+1 must be the swap matrix.
struct SwitchSequence {
    std::vector<Eigen::Matrix2cd> steps;

    int modes() const { return static_cast<int>(steps.size()) - 1; }

    /// Throws SequenceError unless the boundaries are swaps and every step is
    /// unitary within 1e-10.
    void validate() const;

    static Eigen::Matrix2cd swap();

    /// Beamsplitter from the (beta, gamma, delta) Euler angles, global phase
    /// dropped.
    static Eigen::Matrix2cd beamsplitter(double beta, double gamma, double delta);

    /// Sequence with every interior step equal to `mid`.
    static SwitchSequence uniform(int m, const Eigen::Matrix2cd& mid);

    /// Sequence with interior steps drawn uniformly over the Euler-angle
    /// ranges beta, gamma, delta in [0, pi].
    static SwitchSequence random(int m, Rng& rng);
};

/// Fiber and switch efficiencies for the loop architecture.
struct LossParams {
    double eta_f = 1.0;  ///< fiber efficiency per tau of length
    double eta_s = 1.0;  ///< switch efficiency

    double eta() const { return eta_f * eta_s; }
    void validate() const;
};

/// Unitary map V implemented by one lossless pass of the inner loop:
///   V_{i,j} = 0                                                  (i > j+1)
///           = u11(i)                                             (i = j+1)
///           = u12(i) u21(j+1) prod_{k=i+1}^{j} u22(k)            (i < j+1)
/// with 1-based time indices.
ModeUnitary loop_pass_map(const SwitchSequence& seq, int m);

/// Single lossy pass: V' = V with eta_s applied everywhere and an extra
/// eta^(j-i+1) on every path through the loop, eta = eta_f * eta_s.
Matrix lossy_loop_pass(const SwitchSequence& seq, int m, const LossParams& loss);

/// Accumulated loss matrix for L consecutive inner loops,
/// L_{i,j}(L) = eta_s^L * eta^(L+j-i). Outer-loop factors excluded.
Matrix loss_matrix(int m, const LossParams& loss, int L);

/// Scalar loss factor from the outer loop, eta_f^(m(L-1)) * eta_s^(2(L-1)).
double outer_loop_factor(int m, const LossParams& loss, int L);

/// Full lossy transformation of L consecutive inner loops.
struct LossyLoopMap {
    Matrix inner;         ///< product of the per-loop lossy passes
    Matrix ideal;         ///< same switch settings without loss
    double outer_factor;  ///< global outer-loop attenuation

    /// inner with the outer factor applied.
    Matrix full() const { return outer_factor * inner; }
    ModeUnitary as_mode_map() const { return ModeUnitary::lossy(full()); }
};

/// Builds the loop map for `seqs.size()` consecutive loops. The inner map
/// factorizes exactly as ideal composed element-wise with loss_matrix(L).
LossyLoopMap lossy_loop_map(const std::vector<SwitchSequence>& seqs, int m,
                            const LossParams& loss);

/// Similarity with the balanced (uniform-magnitude) map:
///   S' = (1/m^2) (sum |U_ij|)^2 / sum |U_ij|^2.
/// Scale invariant; equals 1 iff all |U_ij| are equal.
double similarity(const Matrix& u);

/// Lossless variant S = (1/m^3) (sum |U_ij|)^2, defined for maps with unit
/// total power (coincides with S' there).
double similarity_balanced(const Matrix& u);

struct SimilaritySearchResult {
    double best_similarity = 0.0;
    std::vector<SwitchSequence> best_sequences;
    Matrix best_map;
};

/// Monte-Carlo maximization of S' over switch sequences for L loops: each
/// trial draws one fixed beamsplitter ratio per loop (default 1750 trials),
/// optionally followed by `refine_sweeps` rounds of per-step coordinate
/// descent on the best candidate.
SimilaritySearchResult similarity_search(int m, int L, const LossParams& loss, Rng& rng,
                                         int trials = 1750, int refine_sweeps = 0);

/// Post-selection probability of detecting every input photon,
///   P_S = prod_i (sum_j |U_ij|^2)^{k_i}.
double postselect_prob(const Matrix& u, const FockConfiguration& k);

/// Temporal wave-packet description of one photon.
struct TemporalPhoton {
    int bin = 0;         ///< time-bin index
    double shift = 0.0;  ///< small displacement within the bin
    double width = 1.0;  ///< Gaussian wave-packet width (omega)
};

/// Gaussian overlap of two equal-width packets in the same bin,
/// exp(-(a - b)^2 / (4 omega^2)).
double packet_overlap(double shift_a, double shift_b, double omega);

/// Wave-packet overlap <0| A(a) A^+(b) |0>: zero across different time-bins,
/// the Gaussian kernel within one.
double packet_overlap(const TemporalPhoton& a, const TemporalPhoton& b);

/// Fidelity |<Psi_ideal|Psi_actual>|^2 of one inner-loop pass with one photon
/// per mode, a loop-length error `delta` and source jitter of std-dev
/// `sigma`, both in units of time against packet width `omega`. Jitter is
/// averaged over `trials` draws (default 250); with sigma = 0 a single
/// deterministic evaluation is made.
double mismatch_fidelity(const SwitchSequence& seq, int m, double delta, double sigma,
                         double omega, Rng& rng, int trials = 250);

}  // namespace loqs

#endif
