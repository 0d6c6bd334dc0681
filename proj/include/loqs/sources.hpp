#ifndef LOQS_SOURCES_HPP
#define LOQS_SOURCES_HPP

#include "loqs/types.hpp"

namespace loqs {

/// Heralded-source operating point: squeezing r, detector efficiency eta,
/// N sources in parallel feeding n input modes.
struct SpdcParams {
    double r = 0.5;
    double eta = 1.0;
    int sources = 1;  ///< N
    int photons = 1;  ///< n

    void validate() const;
};

/// Pair-number distribution of one heralded source arm,
/// P(s) = tanh^{2s} r / cosh^2 r.
double spdc_pn(int s, double r);

/// Inefficient-detector response, P(t detected | s present) binomially
/// thinned with efficiency eta.
double detector_cond(int t, int s, double eta);

/// Probability of the heralding arm reporting t photons; the photon-number
/// series is truncated once the remaining tail mass is below 1e-12.
double herald_detect(int t, double r, double eta);

/// Probability that at least n of N parallel sources herald a single photon.
double multiplex_prep_prob(const SpdcParams& p);

/// Heralding-fidelity quantities.
struct HeraldFidelity {
    double p_corr = 0.0;    ///< P(1 photon present | 1 detected) = [1-(1-eta)tanh^2 r]^2
    double p_par = 0.0;     ///< p_corr^n
    double asymptote = 0.0; ///< large-n limit under eta = eps^{1/n}: eps^{2 tanh^2 r}
};

/// p_corr, p_par and the large-n asymptote for the detector efficiency
/// eta = eps^{1/n} that keeps the output post-selection above eps.
HeraldFidelity herald_fidelity(double r, double eps, int n);

/// Output post-selection probability eta^n.
double post_prob(double eta, int n);

/// Detector efficiency needed for output post-selection above eps.
double eta_for_postselection(double eps, int n);

/// Detector efficiency needed to keep the parallel heralding fidelity above
/// eps_prime: eta = 1 + (eps_prime^{1/2n} - 1) coth^2 r, with the implied
/// post-selection probability eta^n. Throws ParameterError when the required
/// efficiency is negative (infeasible squeezing).
struct HeraldEfficiency {
    double eta = 0.0;
    double p_post = 0.0;
};
HeraldEfficiency eta_for_herald_fidelity(double eps_prime, double r, int n);

/// Single-shot bunching probability n!/n^n of collecting n photons in one
/// mode of a balanced interferometer.
double single_shot_bunch(int n);

/// Probability of at least d pairs from a source of mean photon number nbar,
/// (nbar/(nbar+1))^d.
double spdc_atleast(int d, double nbar);

}  // namespace loqs

#endif
