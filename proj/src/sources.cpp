#include "loqs/sources.hpp"

#include <cmath>

#include "loqs/util.hpp"

namespace loqs {

void SpdcParams::validate() const {
    if (r < 0.0) throw ParameterError("SpdcParams: squeezing must be non-negative");
    if (eta < 0.0 || eta > 1.0) throw ParameterError("SpdcParams: efficiency must lie in [0, 1]");
    if (photons < 0 || sources < photons)
        throw ParameterError("SpdcParams: need N >= n >= 0");
}

double spdc_pn(int s, double r) {
    if (s < 0) throw ParameterError("spdc_pn: negative photon number");
    if (r < 0.0) throw ParameterError("spdc_pn: negative squeezing");
    const double t2 = std::tanh(r) * std::tanh(r);
    return std::pow(t2, s) / (std::cosh(r) * std::cosh(r));
}

double detector_cond(int t, int s, double eta) {
    if (t < 0 || s < 0) throw ParameterError("detector_cond: negative count");
    if (eta < 0.0 || eta > 1.0) throw ParameterError("detector_cond: efficiency outside [0, 1]");
    if (t > s) return 0.0;
    return binomial(s, t) * std::pow(eta, t) * std::pow(1.0 - eta, s - t);
}

double herald_detect(int t, double r, double eta) {
    if (t < 0) throw ParameterError("herald_detect: negative count");
    if (eta < 0.0 || eta > 1.0) throw ParameterError("herald_detect: efficiency outside [0, 1]");
    if (r < 0.0) throw ParameterError("herald_detect: negative squeezing");
    // Terms a_i = C(i,t) eta^t (1-eta)^{i-t} P(i) for i >= t. Successive
    // ratios a_{i+1}/a_i = q (i+1)/(i+1-t) with q = (1-eta) tanh^2 r decrease
    // toward q < 1, giving a geometric bound on the remaining tail mass.
    const double q = (1.0 - eta) * std::tanh(r) * std::tanh(r);
    double sum = 0.0;
    for (int i = t; i < t + 2000000; ++i) {
        const double term = detector_cond(t, i, eta) * spdc_pn(i, r);
        sum += term;
        const double ratio = q * (i + 1.0) / (i + 1.0 - t);
        if (ratio < 1.0 && term * ratio / (1.0 - ratio) < 1e-13) break;
    }
    return sum;
}

double multiplex_prep_prob(const SpdcParams& p) {
    p.validate();
    if (p.photons == 0) return 1.0;
    const double ph = herald_detect(1, p.r, p.eta);
    // Tail sum_{i >= n} C(N,i) ph^i (1-ph)^{N-i}, accumulated in log space.
    double sum = 0.0;
    for (int i = p.photons; i <= p.sources; ++i) {
        const double lp = log_binomial(p.sources, i) + i * std::log(std::max(ph, 1e-300)) +
                          (p.sources - i) * std::log1p(-std::min(ph, 1.0 - 1e-16));
        sum += std::exp(lp);
    }
    return std::min(1.0, sum);
}

HeraldFidelity herald_fidelity(double r, double eps, int n) {
    if (r < 0.0) throw ParameterError("herald_fidelity: negative squeezing");
    if (eps <= 0.0 || eps > 1.0) throw ParameterError("herald_fidelity: eps outside (0, 1]");
    if (n < 1) throw ParameterError("herald_fidelity: need n >= 1");
    const double eta = eta_for_postselection(eps, n);
    const double t2 = std::tanh(r) * std::tanh(r);
    HeraldFidelity f;
    f.p_corr = std::pow(1.0 - (1.0 - eta) * t2, 2);
    f.p_par = std::pow(f.p_corr, n);
    f.asymptote = std::pow(eps, 2.0 * t2);
    return f;
}

double post_prob(double eta, int n) {
    if (eta < 0.0 || eta > 1.0) throw ParameterError("post_prob: efficiency outside [0, 1]");
    if (n < 0) throw ParameterError("post_prob: negative photon number");
    return std::pow(eta, n);
}

double eta_for_postselection(double eps, int n) {
    if (eps <= 0.0 || eps > 1.0) throw ParameterError("eta_for_postselection: eps outside (0, 1]");
    if (n < 1) throw ParameterError("eta_for_postselection: need n >= 1");
    return std::pow(eps, 1.0 / n);
}

HeraldEfficiency eta_for_herald_fidelity(double eps_prime, double r, int n) {
    if (eps_prime <= 0.0 || eps_prime > 1.0)
        throw ParameterError("eta_for_herald_fidelity: eps' outside (0, 1]");
    if (r <= 0.0) throw ParameterError("eta_for_herald_fidelity: need r > 0");
    if (n < 1) throw ParameterError("eta_for_herald_fidelity: need n >= 1");
    const double coth2 = 1.0 / (std::tanh(r) * std::tanh(r));
    const double eta = 1.0 + (std::pow(eps_prime, 1.0 / (2.0 * n)) - 1.0) * coth2;
    if (eta < 0.0)
        throw ParameterError(
            "eta_for_herald_fidelity: requested fidelity is infeasible at this squeezing "
            "(required efficiency is negative)");
    HeraldEfficiency h;
    h.eta = eta;
    h.p_post = std::pow(eta, n);
    return h;
}

double single_shot_bunch(int n) {
    if (n < 1) throw ParameterError("single_shot_bunch: need n >= 1");
    // Direct ratio while n^n stays in range (exact for small n), log space
    // beyond.
    if (n <= 140)
        return factorial(n) / std::pow(static_cast<double>(n), n);
    return std::exp(log_factorial(n) - n * std::log(static_cast<double>(n)));
}

double spdc_atleast(int d, double nbar) {
    if (d < 1) throw ParameterError("spdc_atleast: need d >= 1");
    if (nbar < 0.0) throw ParameterError("spdc_atleast: negative mean photon number");
    return std::pow(nbar / (nbar + 1.0), d);
}

}  // namespace loqs
