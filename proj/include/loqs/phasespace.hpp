#ifndef LOQS_PHASESPACE_HPP
#define LOQS_PHASESPACE_HPP

#include <vector>

#include "loqs/rng.hpp"
#include "loqs/types.hpp"

namespace loqs {

/// Gauss-Hermite rule for weight e^{-x^2}: nodes and weights of the given
/// order, computed by Newton iteration on the Hermite recurrence.
struct HermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
HermiteRule gauss_hermite(int order);

/// <1| D(lambda) |1> = e^{-|lambda|^2/2} (1 - |lambda|^2).
cd displacement_overlap_fock1(cd lambda);

/// Multi-mode characteristic W function of n single photons in m modes after
/// the network:
///   chi(lambda) = e^{-|mu|^2/2} prod_{j<=n} (1 - |mu_j|^2), mu = U lambda.
cd char_w(const ModeUnitary& u, int n, const std::vector<cd>& lambdas);

/// Closed-form Wigner function of the same state,
///   W(alpha) = (2/pi)^m e^{-2|alpha|^2} prod_{j<=n} (4|beta_j|^2 - 1),
/// with beta_j = sum_k alpha_k U_{k,j}. Real up to 1e-12 residue.
double wigner(const ModeUnitary& u, int n, const std::vector<cd>& alphas);

enum class IntegralMethod { Quadrature, MonteCarlo };

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;  ///< standard error (Monte Carlo) or 0 (quadrature)
    std::int64_t evaluations = 0;
};

struct IntegralOptions {
    IntegralMethod method = IntegralMethod::Quadrature;
    int quadrature_order = 20;        ///< nodes per real dimension
    std::int64_t mc_samples = 200000; ///< Monte Carlo budget
    std::uint64_t seed = 0;
    int threads = 1;
};

/// Evaluates the reduced 2n-real-dimensional integral representation of the
/// single-photon coincidence probability; equals |Per(U^{n x n})|^2.
/// Quadrature is guarded at n <= 3, Monte Carlo at n <= 6.
IntegralResult integral_prob(const ModeUnitary& u, int n, const IntegralOptions& options = {});

/// The unreduced m-mode form of the same integral (for verifying the
/// reduction at small m).
IntegralResult integral_prob_full(const ModeUnitary& u, int n, const IntegralOptions& options = {});

/// Per of the assembled block-diagonal matrix (optionally conjugated by a
/// permutation) next to the product of per-block permanents.
struct BlockDiagonalCheck {
    cd assembled;      ///< Per(sigma (A_1 ++ ... ++ A_k) sigma^T)
    cd block_product;  ///< prod_i Per(A_i)
};
BlockDiagonalCheck block_diagonal_check(const std::vector<Matrix>& blocks,
                                        const std::vector<int>& permutation = {});

}  // namespace loqs

#endif
