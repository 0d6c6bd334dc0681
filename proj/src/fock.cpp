#include "loqs/fock.hpp"

#include <Eigen/QR>

#include "loqs/permanent.hpp"
#include "loqs/util.hpp"

namespace loqs {

cd output_amplitude(const ModeUnitary& u, const FockConfiguration& input,
                    const FockConfiguration& output) {
    const int m = u.modes();
    if (static_cast<int>(input.size()) != m || static_cast<int>(output.size()) != m)
        throw DimensionError("output_amplitude: configuration length must match mode count");
    const int n = total_photons(input);
    if (n != total_photons(output))
        throw ConservationError("output_amplitude: photon number not conserved");
    if (n == 0) return cd(1.0, 0.0);

    std::vector<int> rows, cols;
    rows.reserve(n);
    cols.reserve(n);
    for (int i = 0; i < m; ++i) {
        if (input[i] < 0 || output[i] < 0)
            throw ParameterError("output_amplitude: negative occupation");
        for (int k = 0; k < input[i]; ++k) rows.push_back(i);
        for (int k = 0; k < output[i]; ++k) cols.push_back(i);
    }

    Matrix sub(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) sub(a, b) = u.entries(rows[a], cols[b]);

    double norm = 1.0;
    for (int i = 0; i < m; ++i) norm *= factorial(input[i]) * factorial(output[i]);
    return permanent_ryser(sub) / std::sqrt(norm);
}

AmplitudeMap full_distribution(const ModeUnitary& u, const FockConfiguration& input,
                               const FockLimits& limits) {
    const int m = u.modes();
    const int n = total_photons(input);
    if (n > limits.max_photons || m > limits.max_modes)
        throw SizeGuardError("full_distribution: photon/mode count exceeds the configured guard");
    AmplitudeMap out;
    for (auto& cfg : enumerate_configurations(m, n))
        out.entries.emplace_back(cfg, output_amplitude(u, input, cfg));
    return out;
}

ModeUnitary random_matrix(int modes, RandomKind kind, Rng& rng) {
    if (modes < 1) throw DimensionError("random_matrix: need at least one mode");
    const bool complex_case = (kind == RandomKind::HaarUnitary);
    Matrix g(modes, modes);
    for (int i = 0; i < modes; ++i)
        for (int j = 0; j < modes; ++j)
            g(i, j) = complex_case ? cd(rng.gaussian(), rng.gaussian()) : cd(rng.gaussian(), 0.0);

    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the gauge: scale each column of Q by the phase of the matching R
    // diagonal so the result is Haar-distributed (Mezzadri's recipe).
    for (int j = 0; j < modes; ++j) {
        cd d = r(j, j);
        cd phase = (std::abs(d) == 0.0) ? cd(1.0, 0.0) : d / std::abs(d);
        q.col(j) *= phase;
    }
    if (complex_case) return ModeUnitary::unitary(std::move(q));
    return ModeUnitary::orthogonal(std::move(q));
}

}  // namespace loqs
