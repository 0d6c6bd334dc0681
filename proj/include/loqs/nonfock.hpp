#ifndef LOQS_NONFOCK_HPP
#define LOQS_NONFOCK_HPP

#include <vector>

#include "loqs/types.hpp"

namespace loqs {

/// Coherent-state Fock amplitude f_n(alpha) = e^{-|alpha|^2/2} alpha^n / sqrt(n!).
cd coherent_fock_amplitude(int n, cd alpha);

/// Overlap <alpha|beta> = exp(-|alpha|^2/2 - |beta|^2/2 + conj(alpha) beta).
cd coherent_overlap(cd alpha, cd beta);

/// <n| D(alpha) |1>: Fock amplitudes of a displaced single photon.
cd displaced_one_photon_amplitude(int n, cd alpha);

/// Per-mode superposition of coherent states sum_j lambda_j |alpha_j>.
struct CoherentSuperposition {
    struct Term {
        cd lambda;
        cd alpha;
    };
    std::vector<std::vector<Term>> modes;  ///< one term list per mode

    int mode_count() const { return static_cast<int>(modes.size()); }
    void validate() const;

    /// Exact squared norm including cross-overlaps between coherent terms.
    double norm_squared() const;

    /// Odd (minus) or even (plus) cat of amplitude alpha in every one of the
    /// first n modes and vacuum elsewhere, each mode normalized.
    static CoherentSuperposition cats(int m, int n, cd alpha, bool odd);

    /// Tensor product of plain coherent states (one term per mode).
    static CoherentSuperposition coherent(const std::vector<cd>& alphas);
};

/// beta = U alpha: coherent amplitudes after the network, rows indexing the
/// output modes as in cat_amplitude. Energy is conserved.
std::vector<cd> propagate_coherent(const ModeUnitary& u, const std::vector<cd>& alphas);

/// Unnormalized sampling amplitude
///   gamma_S = sum_t prod_j lambda_{t_j}^{(j)} f_{S_j}(beta_t^{(j)}),
/// where beta_t = U alpha_t over the full term assignment t. Guarded at
/// 10^6 assignment terms.
cd cat_amplitude(const CoherentSuperposition& state, const ModeUnitary& u,
                 const FockConfiguration& s);

/// |gamma_S|^2 / ||state||^2.
double cat_probability(const CoherentSuperposition& state, const ModeUnitary& u,
                       const FockConfiguration& s);

/// Per-mode Fock cutoff keeping the truncation tail of a cat state below
/// 1e-6, chosen from the largest coherent amplitude present.
int cat_fock_cutoff(double alpha_max);

struct OddCatBound {
    double probability = 0.0;  ///< alpha^{2n} csch^n(alpha^2)
    bool exceeds_poly = false; ///< probability > 1 / n^k
};

/// Sampling-correctness probability of n odd-cat single-photon surrogates
/// and its comparison with the 1/n^k polynomial bound.
OddCatBound odd_cat_hardness_bound(double alpha, int n, double k);

enum class SamplingRegime { Hard, Intermediate, Easy };

struct SpacsStats {
    std::vector<double> p;  ///< p[i] = probability of i photons total, i = 0..n
    SamplingRegime regime = SamplingRegime::Hard;
};

/// Detection statistics of n photon-added coherent states after
/// counter-displacement: P_i = (1+|a|^2)^{-n} C(n,i) (|a|^2)^{n-i}.
/// Hard when |a|^2 <= 1/n, easy when |a|^2 >= n^2.
SpacsStats spacs_stats(int n, double alpha2);

enum class Parity { Even, Odd };

/// Probability of a photon-number-parity pattern for squeezed-vacuum inputs
/// with creation operators on the first n modes, evolved through a real
/// orthogonal network. The pattern with odd parity at modes S identifies the
/// binary configuration S; its probability is the Fock-sampling value
/// |gamma_S|^2 and is independent of the squeezing parameter xi, which is
/// validated and then eliminated. Throws InconsistencyError unless exactly n
/// modes are odd.
double passv_sample(const ModeUnitary& orth, int n, const std::vector<Parity>& parity_outcome,
                    double xi = 0.0);

/// Full parity-pattern distribution: every |gamma_S|^2 of the n-photon
/// sector mapped through the parity of its occupations. Returned in
/// colexicographic order of the binary pattern (1 = odd).
std::vector<std::pair<std::vector<Parity>, double>> passv_parity_distribution(
    const ModeUnitary& orth, int n, double xi = 0.0);

}  // namespace loqs

#endif
