#include "loqs/nonfock.hpp"

#include <cmath>

#include "loqs/fock.hpp"
#include "loqs/util.hpp"

namespace loqs {

cd coherent_fock_amplitude(int n, cd alpha) {
    if (n < 0) throw ParameterError("coherent_fock_amplitude: negative photon number");
    // e^{-|a|^2/2} a^n / sqrt(n!) in a mixed log/direct form to stay finite
    // for large n.
    if (alpha == cd(0.0, 0.0)) return n == 0 ? cd(1.0, 0.0) : cd(0.0, 0.0);
    const double mag = std::abs(alpha);
    const double logmag = n * std::log(mag) - 0.5 * mag * mag - 0.5 * log_factorial(n);
    const double phase = std::arg(alpha) * n;
    return std::exp(logmag) * cd(std::cos(phase), std::sin(phase));
}

cd coherent_overlap(cd alpha, cd beta) {
    return std::exp(-0.5 * std::norm(alpha) - 0.5 * std::norm(beta) + std::conj(alpha) * beta);
}

cd displaced_one_photon_amplitude(int n, cd alpha) {
    if (n < 0) throw ParameterError("displaced_one_photon_amplitude: negative photon number");
    // D(a)|1> = (a^+ - conj(a)) |a>, so <n|D(a)|1> = sqrt(n) f_{n-1}(a) - conj(a) f_n(a).
    cd v = -std::conj(alpha) * coherent_fock_amplitude(n, alpha);
    if (n >= 1) v += std::sqrt(static_cast<double>(n)) * coherent_fock_amplitude(n - 1, alpha);
    return v;
}

void CoherentSuperposition::validate() const {
    if (modes.empty()) throw DimensionError("CoherentSuperposition: no modes");
    for (const auto& terms : modes)
        if (terms.empty())
            throw ParameterError("CoherentSuperposition: every mode needs at least one term");
}

double CoherentSuperposition::norm_squared() const {
    validate();
    double total = 1.0;
    for (const auto& terms : modes) {
        cd mode_norm(0.0, 0.0);
        for (const auto& a : terms)
            for (const auto& b : terms)
                mode_norm += std::conj(a.lambda) * b.lambda * coherent_overlap(a.alpha, b.alpha);
        total *= mode_norm.real();
    }
    return total;
}

CoherentSuperposition CoherentSuperposition::cats(int m, int n, cd alpha, bool odd) {
    if (m < 1 || n < 0 || n > m) throw DimensionError("cats: need m >= n >= 0");
    const double a2 = std::norm(alpha);
    const double sign = odd ? -1.0 : 1.0;
    const double norm = std::sqrt(2.0 * (1.0 + sign * std::exp(-2.0 * a2)));
    CoherentSuperposition st;
    st.modes.resize(m);
    for (int i = 0; i < m; ++i) {
        if (i < n)
            st.modes[i] = {{cd(1.0 / norm, 0.0), alpha}, {cd(sign / norm, 0.0), -alpha}};
        else
            st.modes[i] = {{cd(1.0, 0.0), cd(0.0, 0.0)}};
    }
    return st;
}

CoherentSuperposition CoherentSuperposition::coherent(const std::vector<cd>& alphas) {
    CoherentSuperposition st;
    st.modes.reserve(alphas.size());
    for (cd a : alphas) st.modes.push_back({{cd(1.0, 0.0), a}});
    return st;
}

std::vector<cd> propagate_coherent(const ModeUnitary& u, const std::vector<cd>& alphas) {
    const int m = u.modes();
    if (static_cast<int>(alphas.size()) != m)
        throw DimensionError("propagate_coherent: amplitude vector length mismatch");
    std::vector<cd> beta(m, cd(0.0, 0.0));
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) beta[j] += u.entries(j, k) * alphas[k];
    return beta;
}

cd cat_amplitude(const CoherentSuperposition& state, const ModeUnitary& u,
                 const FockConfiguration& s) {
    state.validate();
    const int m = state.mode_count();
    if (u.modes() != m) throw DimensionError("cat_amplitude: network size mismatch");
    if (static_cast<int>(s.size()) != m)
        throw DimensionError("cat_amplitude: configuration length mismatch");

    double assignments = 1.0;
    for (const auto& terms : state.modes) {
        assignments *= static_cast<double>(terms.size());
        if (assignments > 1e6)
            throw SizeGuardError("cat_amplitude: term assignments exceed the 10^6 guard");
    }

    // Pure coherent input factorizes; evaluate the separable product without
    // touching the assignment enumeration.
    bool separable = true;
    for (const auto& terms : state.modes) separable = separable && terms.size() == 1;
    if (separable) {
        std::vector<cd> alphas(m);
        cd weight(1.0, 0.0);
        for (int k = 0; k < m; ++k) {
            alphas[k] = state.modes[k][0].alpha;
            weight *= state.modes[k][0].lambda;
        }
        const std::vector<cd> beta = propagate_coherent(u, alphas);
        cd g = weight;
        for (int j = 0; j < m; ++j) g *= coherent_fock_amplitude(s[j], beta[j]);
        return g;
    }

    std::vector<std::size_t> idx(m, 0);
    std::vector<cd> alphas(m);
    cd gamma(0.0, 0.0);
    while (true) {
        cd weight(1.0, 0.0);
        for (int k = 0; k < m; ++k) {
            const auto& term = state.modes[k][idx[k]];
            weight *= term.lambda;
            alphas[k] = term.alpha;
        }
        const std::vector<cd> beta = propagate_coherent(u, alphas);
        cd prod = weight;
        for (int j = 0; j < m && prod != cd(0.0, 0.0); ++j)
            prod *= coherent_fock_amplitude(s[j], beta[j]);
        gamma += prod;

        int k = 0;
        while (k < m && ++idx[k] == state.modes[k].size()) idx[k++] = 0;
        if (k == m) break;
    }
    return gamma;
}

double cat_probability(const CoherentSuperposition& state, const ModeUnitary& u,
                       const FockConfiguration& s) {
    const double n2 = state.norm_squared();
    if (n2 <= 0.0) throw ParameterError("cat_probability: state has zero norm");
    return std::norm(cat_amplitude(state, u, s)) / n2;
}

int cat_fock_cutoff(double alpha_max) {
    if (alpha_max < 0.0) throw ParameterError("cat_fock_cutoff: negative amplitude");
    return static_cast<int>(std::ceil(alpha_max * alpha_max + 8.0 * alpha_max + 10.0));
}

OddCatBound odd_cat_hardness_bound(double alpha, int n, double k) {
    if (alpha <= 0.0) throw ParameterError("odd_cat_hardness_bound: need alpha > 0");
    if (n < 1) throw ParameterError("odd_cat_hardness_bound: need n >= 1");
    const double a2 = alpha * alpha;
    // log csch(a^2) = -log sinh(a^2), expanded for small arguments.
    const double log_sinh =
        (a2 < 1e-4) ? std::log(a2) + std::log1p(a2 * a2 / 6.0) : std::log(std::sinh(a2));
    const double logp = n * (2.0 * std::log(alpha) - log_sinh);
    OddCatBound b;
    b.probability = std::exp(logp);
    b.exceeds_poly = logp > -k * std::log(static_cast<double>(n));
    return b;
}

SpacsStats spacs_stats(int n, double alpha2) {
    if (n < 1) throw ParameterError("spacs_stats: need n >= 1");
    if (alpha2 < 0.0) throw ParameterError("spacs_stats: negative |alpha|^2");
    SpacsStats st;
    st.p.resize(n + 1);
    // P_i = C(n,i) a^{n-i} / (1+a)^n, assembled in log space.
    const double log_norm = n * std::log1p(alpha2);
    for (int i = 0; i <= n; ++i) {
        if (alpha2 == 0.0) {
            st.p[i] = (i == n) ? 1.0 : 0.0;
            continue;
        }
        st.p[i] = std::exp(log_binomial(n, i) + (n - i) * std::log(alpha2) - log_norm);
    }
    if (alpha2 <= 1.0 / n)
        st.regime = SamplingRegime::Hard;
    else if (alpha2 >= static_cast<double>(n) * n)
        st.regime = SamplingRegime::Easy;
    else
        st.regime = SamplingRegime::Intermediate;
    return st;
}

namespace {

void require_orthogonal(const ModeUnitary& u) {
    if (u.kind != ModeUnitary::Kind::Orthogonal)
        throw ParameterError("passv: network must be a real orthogonal matrix");
    u.validate();
}

void require_real_squeezing(double xi) {
    if (!std::isfinite(xi)) throw ParameterError("passv: squeezing must be finite");
    // The parity statistics are squeezing-free: the network is real and the
    // measurement only reads the parity the creation operators carried, so xi
    // drops out of every probability and is not used past this point.
}

}  // namespace

double passv_sample(const ModeUnitary& orth, int n, const std::vector<Parity>& parity_outcome,
                    double xi) {
    require_orthogonal(orth);
    require_real_squeezing(xi);
    const int m = orth.modes();
    if (static_cast<int>(parity_outcome.size()) != m)
        throw DimensionError("passv_sample: parity pattern length mismatch");
    FockConfiguration s(m, 0);
    int odd = 0;
    for (int i = 0; i < m; ++i)
        if (parity_outcome[i] == Parity::Odd) {
            s[i] = 1;
            ++odd;
        }
    if (odd != n)
        throw InconsistencyError("passv_sample: parity pattern does not place all n operators");
    FockConfiguration input(m, 0);
    for (int i = 0; i < n; ++i) input[i] = 1;
    return std::norm(output_amplitude(orth, input, s));
}

std::vector<std::pair<std::vector<Parity>, double>> passv_parity_distribution(
    const ModeUnitary& orth, int n, double xi) {
    require_orthogonal(orth);
    require_real_squeezing(xi);
    const int m = orth.modes();
    FockConfiguration input(m, 0);
    for (int i = 0; i < n; ++i) input[i] = 1;
    const AmplitudeMap amps = full_distribution(orth, input, FockLimits{n, m});

    std::map<std::vector<int>, double> acc;  // binary pattern -> mass
    for (const auto& [cfg, amp] : amps.entries) {
        std::vector<int> pattern(m);
        for (int i = 0; i < m; ++i) pattern[i] = cfg[i] % 2;
        acc[pattern] += std::norm(amp);
    }
    std::vector<std::pair<std::vector<Parity>, double>> out;
    out.reserve(acc.size());
    for (const auto& [pattern, mass] : acc) {
        std::vector<Parity> p(m);
        for (int i = 0; i < m; ++i) p[i] = pattern[i] ? Parity::Odd : Parity::Even;
        out.emplace_back(std::move(p), mass);
    }
    return out;
}

}  // namespace loqs
