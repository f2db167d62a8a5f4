#pragma once

// Dense complex kernel: state vectors, unitary matrices, distances and
// measurement statistics.
//
// Basis indices are big-endian in qubit order: qubit 0 is the most
// significant bit of the index, so |b0 b1 ... b(n-1)> reads left to right.

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qsim/rng.hpp"

namespace qsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr int kDefaultMaxQubits = 26;
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kUnitaryTolerance = 1e-10;
inline constexpr double kPi = 3.14159265358979323846;

/// Bit mask selecting `qubit` inside a basis index of an n-qubit register.
constexpr std::uint64_t qubit_mask(int num_qubits, int qubit) {
    return std::uint64_t{1} << (num_qubits - 1 - qubit);
}

/// Throws CapacityError when `num_qubits` is outside [0, max_qubits].
void check_capacity(int num_qubits, int max_qubits, const std::string &what);

/// Pure state of n qubits stored as 2^n amplitudes.
class StateVector {
  public:
    /// |0...0> on `num_qubits` qubits.
    explicit StateVector(int num_qubits, int max_qubits = kDefaultMaxQubits);

    static StateVector basis(int num_qubits, std::uint64_t index,
                             int max_qubits = kDefaultMaxQubits);
    /// Basis state from a string of '0'/'1' characters, qubit 0 first.
    static StateVector from_bitstring(std::string_view bits,
                                      int max_qubits = kDefaultMaxQubits);
    /// Takes ownership of `amps` and rescales them to unit norm.
    static StateVector from_amplitudes(std::vector<Complex> amps,
                                       int max_qubits = kDefaultMaxQubits);

    int num_qubits() const noexcept { return num_qubits_; }
    std::size_t dim() const noexcept { return amps_.size(); }

    std::span<const Complex> amplitudes() const noexcept { return amps_; }
    std::span<Complex> amplitudes() noexcept { return amps_; }
    Complex operator[](std::uint64_t index) const { return amps_[index]; }

    double norm_squared() const;
    void normalize();

    /// Swaps in a new amplitude buffer of identical length.
    void replace_amplitudes(std::vector<Complex> &&amps);

  private:
    StateVector() = default;

    int num_qubits_ = 0;
    std::vector<Complex> amps_;
};

/// Square matrix of power-of-two dimension, unitary within a tolerance.
class UnitaryMatrix {
  public:
    /// Throws DimensionError if `m` is not square with power-of-two size, or
    /// if ||U^dagger U - I|| exceeds `tolerance`.
    explicit UnitaryMatrix(Matrix m, double tolerance = kUnitaryTolerance);

    static UnitaryMatrix identity(int num_qubits);

    const Matrix &matrix() const noexcept { return m_; }
    int dim() const noexcept { return static_cast<int>(m_.rows()); }
    int num_qubits() const noexcept;
    Complex operator()(int row, int col) const { return m_(row, col); }

    UnitaryMatrix adjoint() const;
    UnitaryMatrix operator*(const UnitaryMatrix &rhs) const;

  private:
    Matrix m_;
};

/// Spectral norm of U^dagger U - I.
double unitarity_defect(const Matrix &m);

/// Map from basis outcome to probability over `num_bits` measured bits.
class MeasurementDistribution {
  public:
    MeasurementDistribution() = default;
    MeasurementDistribution(int num_bits, std::map<std::uint64_t, double> outcomes);

    int num_bits() const noexcept { return num_bits_; }
    const std::map<std::uint64_t, double> &outcomes() const noexcept { return outcomes_; }
    double probability(std::uint64_t outcome) const;
    double total() const;
    /// Outcome formatted as a bit string, most significant (first measured) bit first.
    std::string label(std::uint64_t outcome) const;

  private:
    int num_bits_ = 0;
    std::map<std::uint64_t, double> outcomes_;
};

double total_variation(const MeasurementDistribution &a, const MeasurementDistribution &b);

/// |a> (x) |b>; qubits of `a` come first.
StateVector tensor(const StateVector &a, const StateVector &b,
                   int max_qubits = kDefaultMaxQubits);

/// <a|b>
Complex inner_product(const StateVector &a, const StateVector &b);

/// arccos |<b|a>| in [0, pi/2]; zero iff the states agree up to global phase.
double quantum_angle(const StateVector &a, const StateVector &b);

/// Largest singular value.
///
/// Dimensions up to 8 use a direct SVD; larger matrices use power iteration
/// on A^dagger A (relative tolerance 1e-12, at most 10^4 iterations).
double spectral_norm(const Matrix &a);

/// ||A - B|| in the spectral norm.
double spectral_distance(const Matrix &a, const Matrix &b);
double spectral_distance(const UnitaryMatrix &a, const UnitaryMatrix &b);

/// min over phi of ||A - e^{i phi} B|| for unitary A, B.
double projective_distance(const Matrix &a, const Matrix &b);

/// Empirical distribution of `shots` full-register measurements.
MeasurementDistribution sample(const StateVector &state, std::uint64_t rng_seed,
                               std::uint64_t shots);

/// Exact marginal distribution of the listed qubits; the first listed qubit is
/// the most significant bit of each outcome.
MeasurementDistribution exact_distribution(const StateVector &state,
                                           std::span<const int> marginal_qubits);
MeasurementDistribution exact_distribution(const StateVector &state);

/// Dense marginal probability table, indexed like the outcomes above.
std::vector<double> marginal_probabilities(const StateVector &state,
                                           std::span<const int> marginal_qubits);

/// Inverse-CDF sampler over a fixed discrete probability table.
class DiscreteSampler {
  public:
    explicit DiscreteSampler(std::span<const double> probabilities);

    std::uint64_t draw(Rng &rng) const;
    std::size_t size() const noexcept { return cdf_.size(); }

  private:
    std::vector<double> cdf_;
};

/// Random state with i.i.d. complex Gaussian amplitudes (unitarily invariant).
StateVector random_state(int num_qubits, Rng &rng);

/// Haar-random unitary via QR of a complex Gaussian matrix.
Matrix random_unitary(int dim, Rng &rng);

} // namespace qsim
