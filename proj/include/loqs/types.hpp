#ifndef LOQS_TYPES_HPP
#define LOQS_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace loqs {

using cd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionError : Error {
    using Error::Error;
};
struct SizeGuardError : Error {
    using Error::Error;
};
struct ConservationError : Error {
    using Error::Error;
};
struct ParameterError : Error {
    using Error::Error;
};
struct SequenceError : Error {
    using Error::Error;
};
struct RegimeError : Error {
    using Error::Error;
};
struct InconsistencyError : Error {
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Mode transfer matrices
// ---------------------------------------------------------------------------

/// Complex m x m transfer matrix of a linear-optical network.
/// Rows index input modes, columns index output modes.
struct ModeUnitary {
    enum class Kind { Unitary, Orthogonal, LossyMap };

    Matrix entries;
    Kind kind = Kind::Unitary;

    static constexpr double kTol = 1e-10;

    int modes() const { return static_cast<int>(entries.rows()); }

    /// Checks the invariant matching `kind`; throws ParameterError on failure.
    void validate() const;

    static ModeUnitary unitary(Matrix m);
    static ModeUnitary orthogonal(Matrix m);
    static ModeUnitary lossy(Matrix m);
};

// ---------------------------------------------------------------------------
// Fock configurations
// ---------------------------------------------------------------------------

/// Occupation-number vector over m modes.
using FockConfiguration = std::vector<int>;

int total_photons(const FockConfiguration& c);

/// Amplitude map over Fock configurations, stored in colexicographic order.
struct AmplitudeMap {
    std::vector<std::pair<FockConfiguration, cd>> entries;

    cd at(const FockConfiguration& c) const;
    bool contains(const FockConfiguration& c) const;
    std::size_t size() const { return entries.size(); }

    double total_probability() const;
};

/// All weak compositions of n photons over m modes in colexicographic order
/// (last mode's occupation varies slowest).
std::vector<FockConfiguration> enumerate_configurations(int modes, int photons);

}  // namespace loqs

#endif
