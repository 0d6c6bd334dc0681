#include "loqs/gkp.hpp"

#include <cmath>

#include "loqs/util.hpp"

#if defined(__GNUC__) && defined(__x86_64__)
#include <quadmath.h>
#define LOQS_HAVE_FLOAT128 1
#endif

namespace loqs {

void SpinLightParams::validate() const {
    if (twice_j < 1) throw ParameterError("SpinLightParams: need J >= 1/2");
    if (g <= 0.0) throw ParameterError("SpinLightParams: need g > 0");
    if (!std::isfinite(xi)) throw ParameterError("SpinLightParams: xi must be finite");
}

namespace {

void check_spin_indices(int twice_m, int twice_j) {
    if (twice_j < 1) throw ParameterError("wigner_d: need J >= 1/2");
    if (std::abs(twice_m) > twice_j || ((twice_m ^ twice_j) & 1))
        throw DimensionError("wigner_d: m must satisfy |m| <= J with matching parity");
}

// |m'| = J column: d_{m,+-J} = (+-1)^{J+m} 2^{-J} sqrt(C(2J, J-m)).
double d_column_extremal(int twice_m, int twice_j, bool plus) {
    const int jm = (twice_j - twice_m) / 2;  // J - m
    const int jpm = (twice_j + twice_m) / 2; // J + m
    const double logv = 0.5 * log_binomial(twice_j, jm) - 0.5 * twice_j * std::log(2.0);
    double sign = 1.0;
    if (!plus && (jpm % 2 != 0)) sign = -1.0;
    return sign * std::exp(logv);
}

#ifdef LOQS_HAVE_FLOAT128

// Alternating Wigner sum in binary128: the terms reach ~2^{2J} while the
// result stays O(1), so double (and even 80-bit) precision runs out of
// digits near J ~ 25.
double d_sum_quad(int twice_m, int twice_mp, int twice_j) {
    const int jpm = (twice_j + twice_m) / 2, jmm = (twice_j - twice_m) / 2;
    const int jpmp = (twice_j + twice_mp) / 2, jmmp = (twice_j - twice_mp) / 2;
    const int mm_mp = (twice_m - twice_mp) / 2;  // m - m'

    static thread_local std::vector<__float128> fact{1.0Q};
    while (static_cast<int>(fact.size()) <= twice_j) {
        fact.push_back(fact.back() * static_cast<__float128>(fact.size()));
    }

    const __float128 num =
        sqrtq(fact[jpmp] * fact[jmmp] * fact[jpm] * fact[jmm]);
    __float128 sum = 0.0Q;
    const int k_lo = std::max(0, -mm_mp);
    const int k_hi = std::min(jpmp, jmm);
    for (int k = k_lo; k <= k_hi; ++k) {
        const __float128 denom = fact[jpmp - k] * fact[k] * fact[jmm - k] * fact[k + mm_mp];
        const __float128 term = num / denom;
        sum += ((k + mm_mp) % 2 == 0) ? term : -term;
    }
    const __float128 scale = powq(2.0Q, -static_cast<__float128>(twice_j) / 2.0Q);
    return static_cast<double>(sum * scale);
}

#else

double d_sum_quad(int, int, int) {
    throw Error("wigner_d: extended-precision path unavailable on this toolchain");
}

#endif

}  // namespace

double wigner_d(int twice_m, int twice_mp, int twice_j) {
    check_spin_indices(twice_m, twice_j);
    check_spin_indices(twice_mp, twice_j);
    if (twice_mp == twice_j) return d_column_extremal(twice_m, twice_j, true);
    if (twice_mp == -twice_j) return d_column_extremal(twice_m, twice_j, false);
    if (twice_j > 80)
        throw SizeGuardError("wigner_d: general columns limited to 2J <= 80");
    return d_sum_quad(twice_m, twice_mp, twice_j);
}

cd GaussianComb::evaluate(double coordinate) const {
    cd v(0.0, 0.0);
    if (representation == Representation::Position) {
        for (const auto& [c, w] : peaks) {
            const double d = coordinate - c;
            v += w * std::exp(-d * d / (2.0 * peak_variance));
        }
    } else {
        for (const auto& [c, w] : peaks)
            v += w * std::exp(cd(0.0, -c * coordinate));
        v *= std::exp(-coordinate * coordinate / (2.0 * peak_variance));
    }
    return v;
}

double GaussianComb::norm_squared() const {
    const double v = peak_variance;
    double total = 0.0;
    for (const auto& [ca, wa] : peaks) {
        for (const auto& [cb, wb] : peaks) {
            const double d = ca - cb;
            double overlap;
            if (representation == Representation::Position) {
                overlap = std::sqrt(M_PI * v) * std::exp(-d * d / (4.0 * v));
            } else {
                // int e^{-p^2/v} e^{-i d p} dp
                overlap = std::sqrt(M_PI * v) * std::exp(-v * d * d / 4.0);
            }
            total += (std::conj(wa) * wb).real() * overlap;
        }
    }
    return total;
}

ConditionalState conditional_state(int twice_x, const SpinLightParams& params) {
    params.validate();
    const int tj = params.twice_j;
    check_spin_indices(twice_x, tj);

    ConditionalState st;
    st.position.representation = GaussianComb::Representation::Position;
    st.position.peak_variance = std::exp(-2.0 * params.xi);
    st.momentum.representation = GaussianComb::Representation::Momentum;
    st.momentum.peak_variance = std::exp(2.0 * params.xi);

    for (int tm = -tj; tm <= tj; tm += 2) {
        const double w = wigner_d(tm, tj, tj) * wigner_d(tm, twice_x, tj);
        const double center = params.g * (tm / 2.0);
        st.position.peaks.emplace_back(center, cd(w, 0.0));
        st.momentum.peaks.emplace_back(center, cd(w, 0.0));
    }
    return st;
}

namespace {

double overlap_kernel(int dm_twice, const SpinLightParams& p) {
    // <g m, xi | g m', xi> for position displacements g m: coherent
    // displacement amplitudes g m / sqrt(2), giving
    // exp(-g^2 e^{2 xi} (m - m')^2 / 4).
    const double diff = p.g * (dm_twice / 2.0) / std::sqrt(2.0);
    return displaced_squeezed_overlap(diff, 0.0, p.xi);
}

// log of d_{m,J} d_{m,+-J}-squared-style binomial weight: C(2J, J-m)/4^J.
double log_extremal_weight(int tm, int tj) {
    return log_binomial(tj, (tj - tm) / 2) - tj * std::log(2.0);
}

double extremal_outcome_prob(bool plus, const SpinLightParams& p) {
    const int tj = p.twice_j;
    double total = 0.0;
    for (int tm = -tj; tm <= tj; tm += 2) {
        for (int tmp = -tj; tmp <= tj; tmp += 2) {
            const double logw = log_extremal_weight(tm, tj) + log_extremal_weight(tmp, tj);
            double sign = 1.0;
            if (!plus) {
                const int par = ((tj + tm) / 2 + (tj + tmp) / 2) % 2;
                if (par != 0) sign = -1.0;
            }
            total += sign * std::exp(logw) * overlap_kernel(tm - tmp, p);
        }
    }
    return total;
}

}  // namespace

double outcome_prob(int twice_x, const SpinLightParams& params) {
    params.validate();
    const int tj = params.twice_j;
    check_spin_indices(twice_x, tj);
    if (twice_x == tj) return extremal_outcome_prob(true, params);
    if (twice_x == -tj) return extremal_outcome_prob(false, params);

    std::vector<double> weight;
    weight.reserve(tj + 1);
    for (int tm = -tj; tm <= tj; tm += 2)
        weight.push_back(wigner_d(tm, tj, tj) * wigner_d(tm, twice_x, tj));

    double total = 0.0;
    const int count = static_cast<int>(weight.size());
    for (int a = 0; a < count; ++a)
        for (int b = 0; b < count; ++b)
            total += weight[a] * weight[b] * overlap_kernel(2 * (a - b), params);
    return total;
}

double success_prob(const SpinLightParams& params) {
    params.validate();
    const int tj = params.twice_j;
    // Nearest-neighbor kernel value bounds the whole off-diagonal mass.
    if (overlap_kernel(2, params) < 1e-12) {
        const double logp = log_binomial(2 * tj, tj) - tj * std::log(4.0);
        return 2.0 * std::exp(logp);  // 2 C(4J,2J)/16^J
    }
    return extremal_outcome_prob(true, params) + extremal_outcome_prob(false, params);
}

double displaced_squeezed_overlap(double a, double b, double xi) {
    const double d = a - b;
    return std::exp(-0.5 * std::exp(2.0 * xi) * d * d);
}

double squeezing_db_from_xi(double xi) {
    return -10.0 * std::log10(std::exp(-2.0 * xi) / 0.5);
}

double xi_from_squeezing_db(double db) {
    // e^{-2 xi} = 0.5 * 10^{-db/10}
    return -0.5 * std::log(0.5 * std::pow(10.0, -db / 10.0));
}

SymmetricEncoding symmetric_encoding(double xi) {
    SymmetricEncoding enc;
    enc.g = std::sqrt(M_PI);
    enc.j_exact = (2.0 / M_PI) * std::exp(2.0 * xi);
    const int j_round = static_cast<int>(std::lround(enc.j_exact));
    enc.twice_j = 2 * std::max(1, j_round);
    return enc;
}

PeakVariances peak_variances(const SpinLightParams& params) {
    params.validate();
    const double j = params.j();
    const double g2 = params.g * params.g;
    PeakVariances v;
    v.sigma_q2 = std::exp(-2.0 * params.xi);
    v.sigma_p2_exact = 2.0 * (j * j * hurwitz_zeta2(j) - 1.0) / (g2 * j * j);
    v.sigma_p2_approx = 2.0 / (g2 * j);
    return v;
}

}  // namespace loqs
