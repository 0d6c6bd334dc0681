#include "loqs/qufti.hpp"

#include <cmath>
#include <limits>

#include "loqs/permanent.hpp"

namespace loqs {

void QuftiParams::validate() const {
    if (n < 1) throw ParameterError("QuftiParams: need n >= 1");
    if (dephasing_var < 0.0) throw ParameterError("QuftiParams: negative dephasing variance");
}

namespace {

Matrix fourier_matrix(int n) {
    Matrix v(n, n);
    const cd i(0.0, 1.0);
    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k)
            v(j - 1, k - 1) = std::exp(-2.0 * i * M_PI * static_cast<double>(j) *
                                       static_cast<double>(k) / static_cast<double>(n)) /
                              std::sqrt(static_cast<double>(n));
    return v;
}

// a_n(j) and b_n(j) of the product form of P, with the dephasing contraction
// already absorbed into a.
struct ProductTerms {
    std::vector<double> a, b;
};

ProductTerms product_terms(int n, double dephasing_var) {
    ProductTerms t;
    const double contraction = std::exp(-0.5 * n * static_cast<double>(n) * dephasing_var);
    for (int j = 1; j <= n - 1; ++j) {
        t.a.push_back(2.0 * j * (n - j) * contraction);
        t.b.push_back(static_cast<double>(n) * n - 2.0 * j * n + 2.0 * j * j);
    }
    return t;
}

}  // namespace

ModeUnitary qufti_unitary(int n, double phi) {
    if (n < 1) throw ParameterError("qufti_unitary: need n >= 1");
    const cd i(0.0, 1.0);
    const cd eip = std::exp(i * phi);
    const cd num = 1.0 - std::exp(i * static_cast<double>(n) * phi);

    // Scan for near-singular denominators; e^{i phi} close to an n-th root of
    // unity makes the closed form ill-conditioned.
    bool singular = false;
    std::vector<cd> roots(n);
    for (int d = 0; d < n; ++d) {
        roots[d] = std::exp(2.0 * i * M_PI * static_cast<double>(d) / static_cast<double>(n));
        if (std::abs(roots[d] - eip) < 1e-8) singular = true;
    }

    Matrix u(n, n);
    if (singular) {
        const Matrix v = fourier_matrix(n);
        Matrix gradient = Matrix::Zero(n, n);
        for (int l = 0; l < n; ++l) gradient(l, l) = std::exp(i * static_cast<double>(l) * phi);
        u = v * gradient * v.adjoint();
    } else {
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const int d = ((j - k) % n + n) % n;
                u(j, k) = num / (static_cast<double>(n) * (roots[d] - eip));
            }
    }
    return ModeUnitary::unitary(std::move(u));
}

cd conjectured_permanent(int n, double phi) {
    if (n < 1) throw ParameterError("conjectured_permanent: need n >= 1");
    const cd einp = std::exp(cd(0.0, 1.0) * static_cast<double>(n) * phi);
    cd prod(1.0, 0.0);
    for (int j = 1; j <= n - 1; ++j)
        prod *= (static_cast<double>(j) * einp + static_cast<double>(n - j));
    return prod / std::pow(static_cast<double>(n), n - 1);
}

double coincidence_probability(const QuftiParams& p, int ryser_crossover) {
    p.validate();
    const int n = p.n;
    if (n == 1) return 1.0;
    if (p.dephasing_var == 0.0 && n <= ryser_crossover) {
        return std::norm(permanent_ryser(qufti_unitary(n, p.phi).entries));
    }
    const ProductTerms t = product_terms(n, p.dephasing_var);
    const double c = std::cos(n * p.phi);
    double prod = 1.0;
    for (std::size_t j = 0; j < t.a.size(); ++j) prod *= t.a[j] * c + t.b[j];
    return prod / std::pow(static_cast<double>(n), 2 * n - 2);
}

QuftiSignal signal_and_sensitivity(const QuftiParams& p) {
    p.validate();
    QuftiSignal out;
    const int n = p.n;
    if (n == 1) {
        out.p = 1.0;
        out.dp_dphi = 0.0;
        out.delta_phi = std::numeric_limits<double>::quiet_NaN();
        out.degenerate_reason = "n = 1 carries no phase information (P is identically 1)";
        return out;
    }

    const ProductTerms t = product_terms(n, p.dephasing_var);
    const double c = std::cos(n * p.phi);
    const double s = std::sin(n * p.phi);
    const double scale = std::pow(static_cast<double>(n), 2 * n - 2);

    std::vector<double> factors(t.a.size());
    double prod = 1.0;
    for (std::size_t j = 0; j < t.a.size(); ++j) {
        factors[j] = t.a[j] * c + t.b[j];
        prod *= factors[j];
    }
    out.p = prod / scale;

    // dP/dphi = -n sin(n phi) sum_j a_j prod_{k != j} factor_k; evaluated as
    // a leave-one-out sum so vanishing factors cause no 0/0.
    double deriv_sum = 0.0;
    for (std::size_t j = 0; j < t.a.size(); ++j) {
        double loo = 1.0;
        for (std::size_t k = 0; k < t.a.size(); ++k)
            if (k != j) loo *= factors[k];
        deriv_sum += t.a[j] * loo;
    }
    out.dp_dphi = std::abs(n * s * deriv_sum / scale);

    const double var = out.p - out.p * out.p;
    if (out.dp_dphi == 0.0) {
        out.delta_phi = std::numeric_limits<double>::quiet_NaN();
        out.degenerate_reason = "dP/dphi = 0: phase is stationary at this operating point";
    } else {
        out.delta_phi = std::sqrt(std::max(0.0, var)) / out.dp_dphi;
    }
    return out;
}

double small_angle_sensitivity(int n) {
    if (n < 2) throw ParameterError("small_angle_sensitivity: need n >= 2");
    const double nn = static_cast<double>(n);
    return std::sqrt(3.0 / (2.0 * nn * (nn + 1.0) * (nn - 1.0)));
}

OrcBaselines orc_baselines(int n) {
    if (n < 1) throw ParameterError("orc_baselines: need n >= 1");
    OrcBaselines b;
    b.resources = 1.0 + 0.5 * n * (n - 1.0);
    b.snl = 1.0 / std::sqrt(b.resources);
    b.hl = 1.0 / b.resources;
    return b;
}

}  // namespace loqs
