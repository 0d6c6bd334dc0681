#ifndef LOQS_QUFTI_HPP
#define LOQS_QUFTI_HPP

#include "loqs/types.hpp"

namespace loqs {

/// Parameters of the single-photon Fourier-interferometer metrology scheme.
struct QuftiParams {
    int n = 2;                  ///< photon and mode count
    double phi = 0.0;           ///< unknown phase (radians)
    double dephasing_var = 0.0; ///< variance of the per-mode random phase (radians^2)

    void validate() const;
};

/// Result of a sensitivity evaluation. delta_phi is NaN when the slope
/// vanishes; `degenerate_reason` then says why.
struct QuftiSignal {
    double p = 0.0;          ///< coincidence probability of one photon per mode
    double dp_dphi = 0.0;    ///< |dP/dphi|
    double delta_phi = 0.0;  ///< sqrt(P - P^2) / |dP/dphi|
    std::string degenerate_reason;

    bool degenerate() const { return !degenerate_reason.empty(); }
};

/// Interferometer matrix U^(n)(phi) = V Phi V^dag with V the n-mode Fourier
/// matrix and Phi the linear phase gradient. Uses the closed entrywise form
///   U_jk = (1 - e^{i n phi}) / (n (e^{2 pi i (j-k)/n} - e^{i phi}))
/// away from its removable singularities and the explicit matrix product
/// near them.
ModeUnitary qufti_unitary(int n, double phi);

/// Conjectured closed form of the full-matrix permanent,
///   Per(U^(n)) = n^{-(n-1)} prod_{j=1}^{n-1} (j e^{i n phi} + n - j).
cd conjectured_permanent(int n, double phi);

/// Coincidence probability P(phi). For dephasing_var = 0 and n at most
/// `ryser_crossover` the permanent is evaluated by Ryser directly; beyond
/// that (or with dephasing) the closed product form is used.
double coincidence_probability(const QuftiParams& p, int ryser_crossover = 8);

/// P, |dP/dphi| and the phase sensitivity at the given parameters.
QuftiSignal signal_and_sensitivity(const QuftiParams& p);

/// Small-angle sensitivity sqrt(3 / (2 n (n+1) (n-1))), n >= 2.
double small_angle_sensitivity(int n);

/// Ordinal-resource-counting baselines.
struct OrcBaselines {
    double resources = 0.0;  ///< N = 1 + n(n-1)/2
    double snl = 0.0;        ///< 1/sqrt(N)
    double hl = 0.0;         ///< 1/N
};
OrcBaselines orc_baselines(int n);

}  // namespace loqs

#endif
