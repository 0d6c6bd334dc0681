#ifndef LOQS_GKP_HPP
#define LOQS_GKP_HPP

#include <vector>

#include "loqs/types.hpp"

namespace loqs {

/// Spin-light coupling parameters. Angular momenta are passed as doubled
/// integers so half-integer spins stay exact: twice_j = 2J.
struct SpinLightParams {
    int twice_j = 1;   ///< 2J, J >= 1/2
    double g = 1.0;    ///< controlled-displacement strength (position units)
    double xi = 0.0;   ///< squeezing parameter (real)

    double j() const { return twice_j / 2.0; }
    void validate() const;
};

/// Wigner (small) d-matrix element d^J_{m,m'}(pi/2). Arguments are doubled:
/// d(2m, 2m', 2J). The |m'| = J columns use the single-term closed form at
/// any J; general columns are evaluated from the alternating sum in extended
/// precision and are limited to 2J <= 80.
double wigner_d(int twice_m, int twice_mp, int twice_j);

/// Weighted list of displaced Gaussian peaks.
///
/// In the position representation the state is
///   sum_m w_m exp(-(q - c_m)^2 / (2 v)),        v = peak_variance.
/// In the momentum representation it is
///   exp(-p^2 / (2 v)) sum_m w_m exp(-i c_m p),  v = envelope variance.
struct GaussianComb {
    enum class Representation { Position, Momentum };

    std::vector<std::pair<double, cd>> peaks;  ///< (center, weight)
    double peak_variance = 1.0;
    Representation representation = Representation::Position;

    cd evaluate(double coordinate) const;
    /// L2 norm from pairwise Gaussian overlaps, no quadrature.
    double norm_squared() const;
};

/// Conditional optical state for spin measurement outcome x (doubled),
/// returned in both quadrature representations. Weights are d_{m,J} d_{m,x};
/// the position comb sits at centers g*m with peak variance e^{-2 xi}, the
/// momentum comb carries envelope variance e^{2 xi}.
struct ConditionalState {
    GaussianComb position;
    GaussianComb momentum;
};
ConditionalState conditional_state(int twice_x, const SpinLightParams& params);

/// Probability of the spin outcome x:
///   P(x) = sum_{m,m'} d_{m,J} d_{m,x} d_{m',J} d_{m',x}
///              exp(-g^2 e^{2 xi} (m - m')^2 / 4).
double outcome_prob(int twice_x, const SpinLightParams& params);

/// P(+J) + P(-J). Uses the exact double sum unless the overlap kernel's
/// off-diagonal mass is below 1e-12, where the separated-peak limit
/// C(4J, 2J)/16^J applies (integer and half-integer J alike).
double success_prob(const SpinLightParams& params);

/// Overlap of equally squeezed displaced states,
/// exp(-e^{2 xi} (a - b)^2 / 2).
double displaced_squeezed_overlap(double a, double b, double xi);

/// Squeezing in dB: s = -10 log10(e^{-2 xi} / (1/2)).
double squeezing_db_from_xi(double xi);
double xi_from_squeezing_db(double db);

/// Symmetric-encoding choice g = sqrt(pi), J = (2/pi) e^{2 xi}.
struct SymmetricEncoding {
    double g = 0.0;
    double j_exact = 0.0;
    int twice_j = 0;  ///< j_exact rounded to the nearest integer J (table convention)
};
SymmetricEncoding symmetric_encoding(double xi);

/// Peak variances of the +/-J resource states.
struct PeakVariances {
    double sigma_q2 = 0.0;        ///< e^{-2 xi}
    double sigma_p2_exact = 0.0;  ///< 2 (J^2 zeta(2,J) - 1) / (g^2 J^2)
    double sigma_p2_approx = 0.0; ///< 2 / (g^2 J)
};
PeakVariances peak_variances(const SpinLightParams& params);

}  // namespace loqs

#endif
