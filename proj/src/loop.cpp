#include "loqs/loop.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "loqs/fock.hpp"
#include "loqs/util.hpp"

namespace loqs {

Eigen::Matrix2cd SwitchSequence::swap() {
    Eigen::Matrix2cd s;
    s << 0, 1, 1, 0;
    return s;
}

Eigen::Matrix2cd SwitchSequence::beamsplitter(double beta, double gamma, double delta) {
    using std::cos;
    using std::sin;
    const cd i(0.0, 1.0);
    Eigen::Matrix2cd u;
    u(0, 0) = std::exp(i * (-beta / 2 - gamma / 2)) * cos(delta / 2);
    u(0, 1) = -std::exp(i * (-beta / 2 + gamma / 2)) * sin(delta / 2);
    u(1, 0) = std::exp(i * (beta / 2 - gamma / 2)) * sin(delta / 2);
    u(1, 1) = std::exp(i * (beta / 2 + gamma / 2)) * cos(delta / 2);
    return u;
}

SwitchSequence SwitchSequence::uniform(int m, const Eigen::Matrix2cd& mid) {
    if (m < 1) throw SequenceError("SwitchSequence: need m >= 1");
    SwitchSequence s;
    s.steps.assign(m + 1, mid);
    s.steps.front() = swap();
    s.steps.back() = swap();
    return s;
}

SwitchSequence SwitchSequence::random(int m, Rng& rng) {
    SwitchSequence s = uniform(m, swap());
    for (int t = 2; t <= m; ++t)
        s.steps[t - 1] = beamsplitter(rng.uniform(0.0, M_PI), rng.uniform(0.0, M_PI),
                                      rng.uniform(0.0, M_PI));
    return s;
}

void SwitchSequence::validate() const {
    const int m = modes();
    if (m < 1) throw SequenceError("SwitchSequence: too few steps");
    const Eigen::Matrix2cd sw = swap();
    if ((steps.front() - sw).cwiseAbs().maxCoeff() > 1e-10 ||
        (steps.back() - sw).cwiseAbs().maxCoeff() > 1e-10)
        throw SequenceError("SwitchSequence: boundary steps must be swaps");
    for (const auto& u : steps) {
        Eigen::Matrix2cd d = u.adjoint() * u - Eigen::Matrix2cd::Identity();
        if (d.cwiseAbs().maxCoeff() > 1e-10)
            throw SequenceError("SwitchSequence: non-unitary step");
    }
}

void LossParams::validate() const {
    if (eta_f < 0.0 || eta_f > 1.0 || eta_s < 0.0 || eta_s > 1.0)
        throw ParameterError("LossParams: efficiencies must lie in [0, 1]");
}

namespace {

// u(t) entry, 1-based time index.
cd uent(const SwitchSequence& seq, int t, int r, int c) {
    return seq.steps[t - 1](r - 1, c - 1);
}

Matrix loop_pass_matrix(const SwitchSequence& seq, int m, double eta_path, double eta_switch) {
    if (seq.modes() != m) throw SequenceError("loop map: sequence has wrong length");
    seq.validate();
    Matrix v = Matrix::Zero(m, m);
    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= m; ++j) {
            cd val;
            if (i > j + 1) {
                continue;
            } else if (i == j + 1) {
                val = uent(seq, i, 1, 1);
            } else {
                val = uent(seq, i, 1, 2) * uent(seq, j + 1, 2, 1);
                for (int k = i + 1; k <= j; ++k) val *= uent(seq, k, 2, 2);
                val *= std::pow(eta_path, j - i + 1);
            }
            v(i - 1, j - 1) = eta_switch * val;
        }
    }
    return v;
}

}  // namespace

ModeUnitary loop_pass_map(const SwitchSequence& seq, int m) {
    return ModeUnitary::unitary(loop_pass_matrix(seq, m, 1.0, 1.0));
}

Matrix lossy_loop_pass(const SwitchSequence& seq, int m, const LossParams& loss) {
    loss.validate();
    return loop_pass_matrix(seq, m, loss.eta(), loss.eta_s);
}

Matrix loss_matrix(int m, const LossParams& loss, int L) {
    loss.validate();
    if (L < 1) throw ParameterError("loss_matrix: need L >= 1");
    const double eta = loss.eta();
    Matrix l(m, m);
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j)
            l(i - 1, j - 1) = std::pow(loss.eta_s, L) * std::pow(eta, L + j - i);
    return l;
}

double outer_loop_factor(int m, const LossParams& loss, int L) {
    return std::pow(loss.eta_f, static_cast<double>(m) * (L - 1)) *
           std::pow(loss.eta_s, 2.0 * (L - 1));
}

LossyLoopMap lossy_loop_map(const std::vector<SwitchSequence>& seqs, int m,
                            const LossParams& loss) {
    if (seqs.empty()) throw ParameterError("lossy_loop_map: need at least one loop");
    loss.validate();
    const int L = static_cast<int>(seqs.size());
    Matrix inner = Matrix::Identity(m, m);
    Matrix ideal = Matrix::Identity(m, m);
    // Input-to-output composition: pass l applied after pass l-1 multiplies
    // on the right under the rows-are-inputs convention.
    for (int l = 0; l < L; ++l) {
        inner = inner * lossy_loop_pass(seqs[l], m, loss);
        ideal = ideal * loop_pass_matrix(seqs[l], m, 1.0, 1.0);
    }
    return LossyLoopMap{std::move(inner), std::move(ideal), outer_loop_factor(m, loss, L)};
}

double similarity(const Matrix& u) {
    const double m = static_cast<double>(u.rows());
    const double s1 = u.cwiseAbs().sum();
    const double s2 = u.cwiseAbs2().sum();
    if (s2 == 0.0) throw ParameterError("similarity: zero matrix");
    return s1 * s1 / (m * m * s2);
}

double similarity_balanced(const Matrix& u) {
    const double m = static_cast<double>(u.rows());
    const double s1 = u.cwiseAbs().sum();
    return s1 * s1 / (m * m * m);
}

namespace {

using LoopAngles = std::vector<std::vector<std::array<double, 3>>>;  // [loop][step]{b,g,d}

std::vector<SwitchSequence> sequences_from_angles(int m, const LoopAngles& angles) {
    std::vector<SwitchSequence> seqs;
    seqs.reserve(angles.size());
    for (const auto& loop : angles) {
        SwitchSequence s = SwitchSequence::uniform(m, SwitchSequence::swap());
        for (int t = 2; t <= m; ++t) {
            const auto& a = loop[t - 2];
            s.steps[t - 1] = SwitchSequence::beamsplitter(a[0], a[1], a[2]);
        }
        seqs.push_back(std::move(s));
    }
    return seqs;
}

double angles_similarity(int m, const LoopAngles& angles, const LossParams& loss) {
    return similarity(lossy_loop_map(sequences_from_angles(m, angles), m, loss).inner);
}

}  // namespace

SimilaritySearchResult similarity_search(int m, int L, const LossParams& loss, Rng& rng,
                                         int trials, int refine_sweeps) {
    if (trials < 1) throw ParameterError("similarity_search: need trials >= 1");
    const int interior = std::max(0, m - 1);

    LoopAngles best_angles;
    double best_s = -1.0;
    for (int t = 0; t < trials; ++t) {
        Rng trial_rng = rng.split(t);
        // One fixed beamsplitter ratio per loop, independently drawn, as in
        // the simplified architecture the similarity figures sample.
        LoopAngles angles(L, std::vector<std::array<double, 3>>(interior));
        for (int l = 0; l < L; ++l) {
            const std::array<double, 3> a = {trial_rng.uniform(0.0, M_PI),
                                             trial_rng.uniform(0.0, M_PI),
                                             trial_rng.uniform(0.0, M_PI)};
            for (int k = 0; k < interior; ++k) angles[l][k] = a;
        }
        const double s = angles_similarity(m, angles, loss);
        if (s > best_s) {
            best_s = s;
            best_angles = std::move(angles);
        }
    }

    // Optional coordinate descent on the winning candidate, now with every
    // time-bin free.
    double step = 0.4;
    for (int sweep = 0; sweep < refine_sweeps; ++sweep) {
        for (auto& loop : best_angles) {
            for (auto& bs : loop) {
                for (double& angle : bs) {
                    for (double delta : {step, -step}) {
                        const double saved = angle;
                        angle = std::clamp(angle + delta, 0.0, M_PI);
                        const double s = angles_similarity(m, best_angles, loss);
                        if (s > best_s)
                            best_s = s;
                        else
                            angle = saved;
                    }
                }
            }
        }
        step *= 0.7;
    }

    SimilaritySearchResult best;
    best.best_similarity = best_s;
    best.best_sequences = sequences_from_angles(m, best_angles);
    best.best_map = lossy_loop_map(best.best_sequences, m, loss).full();
    return best;
}

double postselect_prob(const Matrix& u, const FockConfiguration& k) {
    if (static_cast<int>(k.size()) != u.rows())
        throw DimensionError("postselect_prob: configuration length mismatch");
    double p = 1.0;
    for (int i = 0; i < u.rows(); ++i) {
        const double row = u.row(i).cwiseAbs2().sum();
        p *= std::pow(row, k[i]);
    }
    return p;
}

double packet_overlap(double shift_a, double shift_b, double omega) {
    const double d = shift_a - shift_b;
    return std::exp(-d * d / (4.0 * omega * omega));
}

double packet_overlap(const TemporalPhoton& a, const TemporalPhoton& b) {
    if (a.width <= 0.0 || b.width <= 0.0)
        throw RegimeError("packet_overlap: packet width must be positive");
    if (a.width != b.width)
        throw RegimeError("packet_overlap: packets must share one width");
    if (a.bin != b.bin) return 0.0;  // bins are separated far beyond the packet width
    return packet_overlap(a.shift, b.shift, a.width);
}

namespace {

// Small permanent of a dense real kernel matrix, n <= 8 here.
double permanent_small(const std::vector<std::vector<double>>& a) {
    const int n = static_cast<int>(a.size());
    if (n == 0) return 1.0;
    std::vector<double> rowsum(n, 0.0);
    double total = 0.0;
    const unsigned count = 1u << n;
    unsigned gray_prev = 0;
    for (unsigned k = 1; k < count; ++k) {
        const unsigned gray = k ^ (k >> 1);
        const unsigned changed = gray ^ gray_prev;
        int j = 0;
        while (!((changed >> j) & 1u)) ++j;
        const double s = (gray & changed) ? 1.0 : -1.0;
        for (int i = 0; i < n; ++i) rowsum[i] += s * a[i][j];
        gray_prev = gray;
        double prod = 1.0;
        for (int i = 0; i < n; ++i) prod *= rowsum[i];
        int bits = 0;
        for (unsigned g = gray; g; g >>= 1) bits += g & 1u;
        total += ((n - bits) % 2 == 0) ? prod : -prod;
    }
    return total;
}

struct Assignment {
    std::vector<int> bins;     // output bin of each photon (photon = input mode)
    FockConfiguration config;  // resulting occupation
    cd amp;                    // product of V entries
};

// Inner-loop traversal count for input mode i to output bin j (0-based).
int traversals(int i, int j) {
    return (j >= i) ? (j - i + 1) : 0;
}

}  // namespace

double mismatch_fidelity(const SwitchSequence& seq, int m, double delta, double sigma,
                         double omega, Rng& rng, int trials) {
    if (omega <= 0.0) throw RegimeError("mismatch_fidelity: packet width must be positive");
    if (sigma < 0.0) throw RegimeError("mismatch_fidelity: negative jitter std-dev");
    if (std::abs(delta) / omega > 10.0 || sigma / omega > 10.0)
        throw RegimeError("mismatch_fidelity: shifts are outside the small-mismatch regime");
    if (trials < 1) throw ParameterError("mismatch_fidelity: need trials >= 1");

    const ModeUnitary v = loop_pass_map(seq, m);
    const int n = m;  // one photon per mode

    // All photon-to-bin assignments with nonzero amplitude.
    std::vector<Assignment> assignments;
    {
        std::vector<int> bins(n, 0);
        while (true) {
            cd amp(1.0, 0.0);
            for (int p = 0; p < n; ++p) amp *= v.entries(p, bins[p]);
            if (std::abs(amp) > 0.0) {
                FockConfiguration cfg(m, 0);
                for (int p = 0; p < n; ++p) ++cfg[bins[p]];
                assignments.push_back({bins, std::move(cfg), amp});
            }
            int p = 0;
            while (p < n && ++bins[p] == m) bins[p++] = 0;
            if (p == n) break;
        }
    }

    // Ideal (zero-shift) configuration amplitudes and sqrt(prod S_b!).
    FockConfiguration input(m, 1);
    const AmplitudeMap ideal = full_distribution(v, input, FockLimits{m, m});
    std::map<FockConfiguration, cd> ideal_amp;
    std::map<FockConfiguration, double> cfg_weight;
    for (const auto& [cfg, amp] : ideal.entries) {
        ideal_amp[cfg] = amp;
        double w = 1.0;
        for (int b : cfg) w *= factorial(b);
        cfg_weight[cfg] = std::sqrt(w);
    }
    double ideal_norm = ideal.total_probability();

    // Group assignments by configuration for the actual-state norm.
    std::map<FockConfiguration, std::vector<int>> groups;
    for (int a = 0; a < static_cast<int>(assignments.size()); ++a)
        groups[assignments[a].config].push_back(a);

    const int effective_trials = (sigma == 0.0) ? 1 : trials;
    double fid_sum = 0.0;
    for (int trial = 0; trial < effective_trials; ++trial) {
        Rng trial_rng = rng.split(trial);
        std::vector<double> jitter(n, 0.0);
        if (sigma > 0.0)
            for (int i = 0; i < n; ++i) jitter[i] = sigma * trial_rng.gaussian();

        // Per-assignment photon shifts.
        std::vector<std::vector<double>> shifts(assignments.size());
        for (std::size_t a = 0; a < assignments.size(); ++a) {
            shifts[a].resize(n);
            for (int p = 0; p < n; ++p)
                shifts[a][p] = jitter[p] + traversals(p, assignments[a].bins[p]) * delta;
        }

        // <Psi_i | Psi_a>
        cd overlap(0.0, 0.0);
        for (std::size_t a = 0; a < assignments.size(); ++a) {
            const auto& as = assignments[a];
            double kern = 1.0;
            for (int p = 0; p < n; ++p) kern *= packet_overlap(0.0, shifts[a][p], omega);
            overlap += as.amp * std::conj(ideal_amp[as.config]) * cfg_weight[as.config] * kern;
        }

        // <Psi_a | Psi_a> over pairs of assignments with matching bins.
        double norm_a = 0.0;
        std::vector<std::vector<double>> kernel;
        for (const auto& [cfg, idxs] : groups) {
            for (int ia : idxs) {
                for (int ib : idxs) {
                    const auto& A = assignments[ia];
                    const auto& B = assignments[ib];
                    double pairing = 1.0;
                    for (int b = 0; b < m && pairing != 0.0; ++b) {
                        std::vector<double> sa, sb;
                        for (int p = 0; p < n; ++p) {
                            if (A.bins[p] == b) sa.push_back(shifts[ia][p]);
                            if (B.bins[p] == b) sb.push_back(shifts[ib][p]);
                        }
                        if (sa.empty()) continue;
                        kernel.assign(sa.size(), std::vector<double>(sa.size()));
                        for (std::size_t r = 0; r < sa.size(); ++r)
                            for (std::size_t c = 0; c < sb.size(); ++c)
                                kernel[r][c] = packet_overlap(sa[r], sb[c], omega);
                        pairing *= permanent_small(kernel);
                    }
                    norm_a += (std::conj(A.amp) * B.amp).real() * pairing;
                }
            }
        }

        fid_sum += std::norm(overlap) / (ideal_norm * norm_a);
    }
    return fid_sum / effective_trials;
}

}  // namespace loqs
