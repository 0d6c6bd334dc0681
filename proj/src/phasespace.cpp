#include "loqs/phasespace.hpp"

#include <algorithm>
#include <cmath>

#include "loqs/permanent.hpp"
#include "loqs/util.hpp"

namespace loqs {

HermiteRule gauss_hermite(int order) {
    if (order < 1) throw ParameterError("gauss_hermite: order must be positive");
    HermiteRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    // Newton iteration on physicists' Hermite polynomials with initial
    // guesses marching in from the largest root (Numerical Recipes scheme).
    const double pim4 = 0.7511255444649425;  // pi^{-1/4}
    const int m = (order + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * order + 1.0) - 1.85575 * std::pow(2.0 * order + 1.0, -1.0 / 6.0);
        else if (i == 1)
            z -= 1.14 * std::pow(static_cast<double>(order), 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * rule.nodes[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * rule.nodes[1];
        else
            z = 2.0 * z - rule.nodes[i - 2];

        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = pim4, p2 = 0.0;
            for (int j = 0; j < order; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 -
                     std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * order) * p2;
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        rule.nodes[i] = z;
        rule.nodes[order - 1 - i] = -z;
        rule.weights[i] = 2.0 / (pp * pp);
        rule.weights[order - 1 - i] = rule.weights[i];
    }
    if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
    return rule;
}

cd displacement_overlap_fock1(cd lambda) {
    const double a2 = std::norm(lambda);
    return std::exp(-0.5 * a2) * (1.0 - a2);
}

cd char_w(const ModeUnitary& u, int n, const std::vector<cd>& lambdas) {
    const int m = u.modes();
    if (n < 0 || n > m) throw ParameterError("char_w: need 0 <= n <= m");
    if (static_cast<int>(lambdas.size()) != m)
        throw DimensionError("char_w: lambda vector length mismatch");
    std::vector<cd> mu(m, cd(0.0, 0.0));
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) mu[j] += u.entries(j, k) * lambdas[k];
    double energy = 0.0;
    for (const cd& v : mu) energy += std::norm(v);
    cd out = std::exp(cd(-0.5 * energy, 0.0));
    for (int j = 0; j < n; ++j) out *= (1.0 - std::norm(mu[j]));
    return out;
}

double wigner(const ModeUnitary& u, int n, const std::vector<cd>& alphas) {
    const int m = u.modes();
    if (n < 0 || n > m) throw ParameterError("wigner: need 0 <= n <= m");
    if (static_cast<int>(alphas.size()) != m)
        throw DimensionError("wigner: alpha vector length mismatch");
    double a2 = 0.0;
    for (const cd& v : alphas) a2 += std::norm(v);
    double w = std::pow(2.0 / M_PI, m) * std::exp(-2.0 * a2);
    for (int j = 0; j < n; ++j) {
        cd beta(0.0, 0.0);
        for (int k = 0; k < m; ++k) beta += alphas[k] * u.entries(k, j);
        w *= 4.0 * std::norm(beta) - 1.0;
    }
    return w;
}

namespace {

// Shared integrand core: given complex alphas (length dims), the product
// prod_j |sum_k alpha_k U_{k,j}|^2-like factors times prod (|alpha_j|^2 - 1/2).
double reduced_integrand(const Matrix& u, int n, const std::vector<cd>& alphas) {
    double f = 1.0;
    for (int j = 0; j < n; ++j) {
        cd beta(0.0, 0.0);
        for (int k = 0; k < n; ++k) beta += alphas[k] * u(k, j);
        f *= std::norm(beta);
    }
    for (int j = 0; j < n; ++j) f *= std::norm(alphas[j]) - 0.5;
    return f;
}

double full_integrand(const Matrix& u, int n, int m, const std::vector<cd>& alphas) {
    double f = 1.0;
    for (int j = 0; j < n; ++j) {
        cd beta(0.0, 0.0);
        for (int k = 0; k < m; ++k) beta += alphas[k] * u(k, j);
        f *= 4.0 * std::norm(beta) - 1.0;
    }
    for (int j = 0; j < n; ++j) f *= std::norm(alphas[j]) - 0.5;
    return f;
}

// Tensor-product Gauss-Hermite over `dims` complex variables with weight
// e^{-2|alpha|^2}; alpha = (x + iy)/sqrt(2) turns each real factor into the
// standard e^{-x^2} weight with Jacobian 1/2 per complex variable.
//
// Accumulation goes through fixed-size index blocks summed in order, so the
// result does not depend on the worker count.
constexpr std::int64_t kBlock = 4096;

IntegralResult quadrature_eval(int dims, int order, int threads,
                               const std::function<double(const std::vector<cd>&)>& f) {
    const HermiteRule rule = gauss_hermite(order);
    std::int64_t total = 1;
    for (int d = 0; d < 2 * dims; ++d) total *= order;

    const std::int64_t nblocks = (total + kBlock - 1) / kBlock;
    std::vector<double> block_sum(nblocks, 0.0);
    parallel_for(
        nblocks,
        [&](std::int64_t blk) {
            std::vector<cd> alphas(dims);
            double acc = 0.0;
            const std::int64_t lo = blk * kBlock;
            const std::int64_t hi = std::min(total, lo + kBlock);
            for (std::int64_t idx = lo; idx < hi; ++idx) {
                double wprod = 1.0;
                std::int64_t rest = idx;
                for (int d = 0; d < dims; ++d) {
                    const int ix = static_cast<int>(rest % order);
                    rest /= order;
                    const int iy = static_cast<int>(rest % order);
                    rest /= order;
                    alphas[d] = cd(rule.nodes[ix], rule.nodes[iy]) / std::sqrt(2.0);
                    wprod *= rule.weights[ix] * rule.weights[iy];
                }
                acc += wprod * f(alphas);
            }
            block_sum[blk] = acc;
        },
        threads);

    double sum = 0.0;
    for (double p : block_sum) sum += p;
    IntegralResult r;
    r.value = sum * std::pow(0.5, dims);
    r.evaluations = total;
    return r;
}

}  // namespace

IntegralResult integral_prob(const ModeUnitary& u, int n, const IntegralOptions& options) {
    const int m = u.modes();
    if (n < 1 || n > m) throw ParameterError("integral_prob: need 1 <= n <= m");
    const Matrix& mat = u.entries;

    if (options.method == IntegralMethod::Quadrature) {
        if (n > 3) throw SizeGuardError("integral_prob: quadrature limited to n <= 3");
        IntegralResult r = quadrature_eval(
            n, options.quadrature_order, options.threads,
            [&](const std::vector<cd>& alphas) { return reduced_integrand(mat, n, alphas); });
        r.value *= std::pow(8.0 / M_PI, n);
        return r;
    }

    if (n > 6) throw SizeGuardError("integral_prob: Monte Carlo limited to n <= 6");
    const std::int64_t samples = std::max<std::int64_t>(1, options.mc_samples);
    const std::int64_t nblocks = (samples + 4095) / 4096;
    std::vector<double> bsum(nblocks, 0.0), bsumsq(nblocks, 0.0);
    Rng root(options.seed, 0x9e3779b97f4a7c15ULL);
    parallel_for(
        nblocks,
        [&](std::int64_t blk) {
            std::vector<cd> alphas(n);
            double acc = 0.0, accsq = 0.0;
            const std::int64_t lo = blk * 4096;
            const std::int64_t hi = std::min(samples, lo + 4096);
            for (std::int64_t i = lo; i < hi; ++i) {
                Rng rng = root.split(i);
                for (int d = 0; d < n; ++d)
                    alphas[d] = cd(rng.gaussian(), rng.gaussian()) * 0.5;  // e^{-2|a|^2} sampler
                const double v = std::pow(4.0, n) * reduced_integrand(mat, n, alphas);
                acc += v;
                accsq += v * v;
            }
            bsum[blk] = acc;
            bsumsq[blk] = accsq;
        },
        options.threads);
    double s = 0.0, s2 = 0.0;
    for (std::int64_t b = 0; b < nblocks; ++b) {
        s += bsum[b];
        s2 += bsumsq[b];
    }
    IntegralResult r;
    r.value = s / static_cast<double>(samples);
    const double var = std::max(0.0, s2 / samples - r.value * r.value);
    r.error_estimate = std::sqrt(var / static_cast<double>(samples));
    r.evaluations = samples;
    return r;
}

IntegralResult integral_prob_full(const ModeUnitary& u, int n, const IntegralOptions& options) {
    const int m = u.modes();
    if (n < 1 || n > m) throw ParameterError("integral_prob_full: need 1 <= n <= m");
    if (options.method != IntegralMethod::Quadrature)
        throw ParameterError("integral_prob_full: quadrature only");
    if (m > 3) throw SizeGuardError("integral_prob_full: full form limited to m <= 3");
    const Matrix& mat = u.entries;
    IntegralResult r = quadrature_eval(
        m, options.quadrature_order, options.threads,
        [&](const std::vector<cd>& alphas) { return full_integrand(mat, n, m, alphas); });
    r.value *= std::pow(2.0 / M_PI, m);
    return r;
}

BlockDiagonalCheck block_diagonal_check(const std::vector<Matrix>& blocks,
                                        const std::vector<int>& permutation) {
    if (blocks.empty()) throw ParameterError("block_diagonal_check: no blocks");
    int total = 0;
    for (const auto& b : blocks) {
        if (b.rows() != b.cols()) throw DimensionError("block_diagonal_check: non-square block");
        total += static_cast<int>(b.rows());
    }
    Matrix assembled = Matrix::Zero(total, total);
    int off = 0;
    for (const auto& b : blocks) {
        assembled.block(off, off, b.rows(), b.cols()) = b;
        off += static_cast<int>(b.rows());
    }
    if (!permutation.empty()) {
        if (static_cast<int>(permutation.size()) != total)
            throw DimensionError("block_diagonal_check: permutation length mismatch");
        Matrix p = Matrix::Zero(total, total);
        for (int i = 0; i < total; ++i) p(permutation[i], i) = 1.0;
        assembled = p * assembled * p.transpose();
    }
    BlockDiagonalCheck out;
    out.assembled = permanent_ryser(assembled);
    out.block_product = cd(1.0, 0.0);
    for (const auto& b : blocks) out.block_product *= permanent_ryser(b);
    return out;
}

}  // namespace loqs
