#include "loqs/types.hpp"

#include <Eigen/SVD>
#include <numeric>

namespace loqs {

namespace {

double max_abs(const Matrix& m) {
    return m.cwiseAbs().maxCoeff();
}

}  // namespace

void ModeUnitary::validate() const {
    const auto n = entries.rows();
    if (n != entries.cols()) throw DimensionError("ModeUnitary: matrix must be square");
    switch (kind) {
        case Kind::Unitary: {
            Matrix d = entries.adjoint() * entries - Matrix::Identity(n, n);
            if (max_abs(d) > kTol) throw ParameterError("ModeUnitary: U^dag U deviates from identity");
            break;
        }
        case Kind::Orthogonal: {
            if (entries.imag().cwiseAbs().maxCoeff() > kTol)
                throw ParameterError("ModeUnitary: orthogonal matrix must be real");
            Matrix d = entries.transpose() * entries - Matrix::Identity(n, n);
            if (max_abs(d) > kTol) throw ParameterError("ModeUnitary: O^T O deviates from identity");
            break;
        }
        case Kind::LossyMap: {
            Eigen::JacobiSVD<Matrix> svd(entries);
            if (svd.singularValues().maxCoeff() > 1.0 + kTol)
                throw ParameterError("ModeUnitary: lossy map has singular value above 1");
            break;
        }
    }
}

ModeUnitary ModeUnitary::unitary(Matrix m) {
    ModeUnitary u{std::move(m), Kind::Unitary};
    u.validate();
    return u;
}

ModeUnitary ModeUnitary::orthogonal(Matrix m) {
    ModeUnitary u{std::move(m), Kind::Orthogonal};
    u.validate();
    return u;
}

ModeUnitary ModeUnitary::lossy(Matrix m) {
    ModeUnitary u{std::move(m), Kind::LossyMap};
    u.validate();
    return u;
}

int total_photons(const FockConfiguration& c) {
    return std::accumulate(c.begin(), c.end(), 0);
}

cd AmplitudeMap::at(const FockConfiguration& c) const {
    for (const auto& [cfg, amp] : entries)
        if (cfg == c) return amp;
    throw Error("AmplitudeMap: configuration not present");
}

bool AmplitudeMap::contains(const FockConfiguration& c) const {
    for (const auto& [cfg, amp] : entries)
        if (cfg == c) return true;
    return false;
}

double AmplitudeMap::total_probability() const {
    double s = 0.0;
    for (const auto& [cfg, amp] : entries) s += std::norm(amp);
    return s;
}

namespace {

void enumerate_rec(int modes, int photons, FockConfiguration& scratch,
                   std::vector<FockConfiguration>& out) {
    if (modes == 1) {
        scratch[0] = photons;
        out.push_back(scratch);
        return;
    }
    // Last mode varies slowest: colexicographic order.
    for (int k = 0; k <= photons; ++k) {
        scratch[modes - 1] = k;
        enumerate_rec(modes - 1, photons - k, scratch, out);
    }
}

}  // namespace

std::vector<FockConfiguration> enumerate_configurations(int modes, int photons) {
    if (modes < 1) throw DimensionError("enumerate_configurations: need at least one mode");
    if (photons < 0) throw ParameterError("enumerate_configurations: negative photon number");
    std::vector<FockConfiguration> out;
    FockConfiguration scratch(modes, 0);
    enumerate_rec(modes, photons, scratch, out);
    return out;
}

}  // namespace loqs
