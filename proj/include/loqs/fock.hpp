#ifndef LOQS_FOCK_HPP
#define LOQS_FOCK_HPP

#include "loqs/rng.hpp"
#include "loqs/types.hpp"

namespace loqs {

/// Size guards for full_distribution; overridable per call.
struct FockLimits {
    int max_photons = 8;
    int max_modes = 12;
};

/// Transition amplitude <output| U |input> for Fock states through a linear
/// network. Builds the n x n submatrix by repeating row i of U input[i] times
/// and column j output[j] times, then
///   gamma = Per(submatrix) / sqrt(prod_i input[i]! * prod_j output[j]!).
cd output_amplitude(const ModeUnitary& u, const FockConfiguration& input,
                    const FockConfiguration& output);

/// Amplitudes of every n-photon output configuration, colexicographic order.
/// For unitary U the probabilities sum to 1.
AmplitudeMap full_distribution(const ModeUnitary& u, const FockConfiguration& input,
                               const FockLimits& limits = {});

enum class RandomKind { HaarUnitary, HaarOrthogonal };

/// Haar-random unitary (or orthogonal) matrix via QR of a Gaussian matrix
/// with the R diagonal phase fixed.
ModeUnitary random_matrix(int modes, RandomKind kind, Rng& rng);

}  // namespace loqs

#endif
