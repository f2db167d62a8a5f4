#include "qsim/state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "qsim/errors.hpp"

namespace qsim {

void check_capacity(int num_qubits, int max_qubits, const std::string &what) {
    if (num_qubits < 0 || num_qubits > max_qubits || num_qubits > 62) {
        throw CapacityError(what, num_qubits, max_qubits);
    }
}

StateVector::StateVector(int num_qubits, int max_qubits) {
    check_capacity(num_qubits, max_qubits, "state vector");
    num_qubits_ = num_qubits;
    amps_.assign(std::size_t{1} << num_qubits, Complex{});
    amps_[0] = 1.0;
}

StateVector StateVector::basis(int num_qubits, std::uint64_t index, int max_qubits) {
    StateVector s(num_qubits, max_qubits);
    if (index >= s.dim()) {
        throw InvalidIndexError("basis index " + std::to_string(index) +
                                " out of range for " + std::to_string(num_qubits) +
                                " qubits");
    }
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

StateVector StateVector::from_bitstring(std::string_view bits, int max_qubits) {
    std::uint64_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw ParseError("bit string may contain only 0 and 1: '" +
                             std::string(bits) + "'");
        }
        index = (index << 1) | static_cast<std::uint64_t>(c == '1');
    }
    return basis(static_cast<int>(bits.size()), index, max_qubits);
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amps, int max_qubits) {
    if (amps.empty() || !std::has_single_bit(amps.size())) {
        throw DimensionError("amplitude count must be a power of two, got " +
                             std::to_string(amps.size()));
    }
    StateVector s;
    s.num_qubits_ = std::countr_zero(amps.size());
    check_capacity(s.num_qubits_, max_qubits, "state vector");
    s.amps_ = std::move(amps);
    if (s.norm_squared() == 0.0) {
        throw InvalidArgument("cannot normalize the zero vector");
    }
    s.normalize();
    return s;
}

double StateVector::norm_squared() const {
    double total = 0.0;
    for (const auto &a : amps_) {
        total += std::norm(a);
    }
    return total;
}

void StateVector::normalize() {
    const double scale = 1.0 / std::sqrt(norm_squared());
    for (auto &a : amps_) {
        a *= scale;
    }
}

void StateVector::replace_amplitudes(std::vector<Complex> &&amps) {
    if (amps.size() != amps_.size()) {
        throw DimensionError("replacement amplitude buffer has wrong length");
    }
    amps_ = std::move(amps);
}

UnitaryMatrix::UnitaryMatrix(Matrix m, double tolerance) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0 ||
        !std::has_single_bit(static_cast<std::uint64_t>(m_.rows()))) {
        throw DimensionError("unitary must be square with power-of-two dimension");
    }
    const double defect = unitarity_defect(m_);
    if (!(defect <= tolerance)) {
        throw DimensionError("matrix is not unitary: ||U^dagger U - I|| = " +
                             std::to_string(defect));
    }
}

UnitaryMatrix UnitaryMatrix::identity(int num_qubits) {
    const auto d = Eigen::Index{1} << num_qubits;
    return UnitaryMatrix(Matrix::Identity(d, d));
}

int UnitaryMatrix::num_qubits() const noexcept {
    return std::countr_zero(static_cast<std::uint64_t>(m_.rows()));
}

UnitaryMatrix UnitaryMatrix::adjoint() const { return UnitaryMatrix(m_.adjoint()); }

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix &rhs) const {
    if (dim() != rhs.dim()) {
        throw DimensionError("unitary product dimension mismatch");
    }
    return UnitaryMatrix(m_ * rhs.m_);
}

double unitarity_defect(const Matrix &m) {
    const Matrix gram = m.adjoint() * m;
    return spectral_norm(gram - Matrix::Identity(m.rows(), m.cols()));
}

MeasurementDistribution::MeasurementDistribution(int num_bits,
                                                 std::map<std::uint64_t, double> outcomes)
    : num_bits_(num_bits), outcomes_(std::move(outcomes)) {}

double MeasurementDistribution::probability(std::uint64_t outcome) const {
    const auto it = outcomes_.find(outcome);
    return it == outcomes_.end() ? 0.0 : it->second;
}

double MeasurementDistribution::total() const {
    double t = 0.0;
    for (const auto &[_, p] : outcomes_) {
        t += p;
    }
    return t;
}

std::string MeasurementDistribution::label(std::uint64_t outcome) const {
    std::string s(static_cast<std::size_t>(num_bits_), '0');
    for (int i = 0; i < num_bits_; ++i) {
        if ((outcome >> (num_bits_ - 1 - i)) & 1U) {
            s[static_cast<std::size_t>(i)] = '1';
        }
    }
    return s;
}

double total_variation(const MeasurementDistribution &a, const MeasurementDistribution &b) {
    double sum = 0.0;
    for (const auto &[k, p] : a.outcomes()) {
        sum += std::abs(p - b.probability(k));
    }
    for (const auto &[k, p] : b.outcomes()) {
        if (!a.outcomes().contains(k)) {
            sum += p;
        }
    }
    return 0.5 * sum;
}

StateVector tensor(const StateVector &a, const StateVector &b, int max_qubits) {
    const int n = a.num_qubits() + b.num_qubits();
    check_capacity(n, max_qubits, "tensor product");
    std::vector<Complex> amps(std::size_t{1} << n);
    const auto ra = a.amplitudes();
    const auto rb = b.amplitudes();
    for (std::size_t i = 0; i < ra.size(); ++i) {
        for (std::size_t j = 0; j < rb.size(); ++j) {
            amps[i * rb.size() + j] = ra[i] * rb[j];
        }
    }
    return StateVector::from_amplitudes(std::move(amps), max_qubits);
}

Complex inner_product(const StateVector &a, const StateVector &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw DimensionError("inner product of states with different qubit counts");
    }
    Complex acc{};
    const auto ra = a.amplitudes();
    const auto rb = b.amplitudes();
    for (std::size_t i = 0; i < ra.size(); ++i) {
        acc += std::conj(ra[i]) * rb[i];
    }
    return acc;
}

double quantum_angle(const StateVector &a, const StateVector &b) {
    // atan2(|a - <b|a> b|, |<b|a>|) equals arccos|<b|a>| for unit vectors but
    // keeps full relative precision for nearly parallel states.
    const Complex overlap = inner_product(b, a);
    const auto ra = a.amplitudes();
    const auto rb = b.amplitudes();
    double perp = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        perp += std::norm(ra[i] - overlap * rb[i]);
    }
    return std::atan2(std::sqrt(perp), std::abs(overlap));
}

namespace {

double power_iteration_norm(const Matrix &a) {
    const Eigen::Index n = a.cols();
    Vector v(n);
    // Deterministic start vector with no special symmetry.
    for (Eigen::Index i = 0; i < n; ++i) {
        v(i) = Complex(1.0 + 0.1 * std::sin(1.0 + static_cast<double>(i)),
                       0.05 * std::cos(2.0 + 3.0 * static_cast<double>(i)));
    }
    v.normalize();
    double lambda = 0.0;
    for (int it = 0; it < 10000; ++it) {
        Vector w = a.adjoint() * (a * v);
        const double next = std::abs(v.dot(w));
        const double wn = w.norm();
        if (wn == 0.0) {
            return 0.0;
        }
        v = w / wn;
        if (std::abs(next - lambda) <= 1e-12 * std::max(next, 1e-300)) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return std::sqrt(lambda);
}

} // namespace

double spectral_norm(const Matrix &a) {
    if (a.size() == 0) {
        return 0.0;
    }
    if (std::max(a.rows(), a.cols()) <= 8) {
        Eigen::JacobiSVD<Matrix> svd(a);
        return svd.singularValues()(0);
    }
    return power_iteration_norm(a);
}

double spectral_distance(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("spectral distance of matrices with different shapes");
    }
    return spectral_norm(a - b);
}

double spectral_distance(const UnitaryMatrix &a, const UnitaryMatrix &b) {
    return spectral_distance(a.matrix(), b.matrix());
}

double projective_distance(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("projective distance of matrices with different shapes");
    }
    // ||A - e^{i phi} B|| = ||B^dagger A - e^{i phi} I||: the worst chord from
    // e^{i phi} to an eigenvalue of W = B^dagger A. The best phi sits in the
    // middle of the shortest arc holding every eigenphase.
    const Matrix w = b.adjoint() * a;
    Eigen::ComplexEigenSolver<Matrix> solver(w, false);
    std::vector<double> phases;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        phases.push_back(std::arg(solver.eigenvalues()(i)));
    }
    std::sort(phases.begin(), phases.end());
    double largest_gap = 2.0 * kPi - (phases.back() - phases.front());
    for (std::size_t i = 1; i < phases.size(); ++i) {
        largest_gap = std::max(largest_gap, phases[i] - phases[i - 1]);
    }
    const double arc = std::max(0.0, 2.0 * kPi - largest_gap);
    return 2.0 * std::sin(arc / 4.0);
}

std::vector<double> marginal_probabilities(const StateVector &state,
                                           std::span<const int> marginal_qubits) {
    const int n = state.num_qubits();
    const auto k = static_cast<int>(marginal_qubits.size());
    std::vector<std::uint64_t> masks;
    masks.reserve(marginal_qubits.size());
    std::uint64_t seen = 0;
    for (int q : marginal_qubits) {
        if (q < 0 || q >= n) {
            throw InvalidIndexError("qubit index " + std::to_string(q) +
                                    " out of range for " + std::to_string(n) + " qubits");
        }
        const std::uint64_t m = qubit_mask(n, q);
        if (seen & m) {
            throw InvalidIndexError("qubit index " + std::to_string(q) + " listed twice");
        }
        seen |= m;
        masks.push_back(m);
    }
    std::vector<double> probs(std::size_t{1} << k, 0.0);
    const auto amps = state.amplitudes();
    // Contiguous leading registers need no bit gathering.
    bool leading = true;
    for (int i = 0; i < k; ++i) {
        leading = leading && marginal_qubits[static_cast<std::size_t>(i)] == i;
    }
    if (leading) {
        const int shift = n - k;
        for (std::size_t i = 0; i < amps.size(); ++i) {
            probs[i >> shift] += std::norm(amps[i]);
        }
        return probs;
    }
    for (std::size_t i = 0; i < amps.size(); ++i) {
        std::uint64_t outcome = 0;
        for (const auto m : masks) {
            outcome = (outcome << 1) | static_cast<std::uint64_t>((i & m) != 0);
        }
        probs[outcome] += std::norm(amps[i]);
    }
    return probs;
}

MeasurementDistribution exact_distribution(const StateVector &state,
                                           std::span<const int> marginal_qubits) {
    const auto probs = marginal_probabilities(state, marginal_qubits);
    std::map<std::uint64_t, double> outcomes;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] > 0.0) {
            outcomes.emplace(i, probs[i]);
        }
    }
    return {static_cast<int>(marginal_qubits.size()), std::move(outcomes)};
}

MeasurementDistribution exact_distribution(const StateVector &state) {
    std::vector<int> all(static_cast<std::size_t>(state.num_qubits()));
    std::iota(all.begin(), all.end(), 0);
    return exact_distribution(state, all);
}

DiscreteSampler::DiscreteSampler(std::span<const double> probabilities)
    : cdf_(probabilities.size()) {
    if (probabilities.empty()) {
        throw InvalidArgument("cannot sample from an empty distribution");
    }
    std::partial_sum(probabilities.begin(), probabilities.end(), cdf_.begin());
    if (!(cdf_.back() > 0.0)) {
        throw InvalidArgument("distribution has no probability mass");
    }
}

std::uint64_t DiscreteSampler::draw(Rng &rng) const {
    const double u = rng.uniform() * cdf_.back();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    auto idx = static_cast<std::size_t>(it - cdf_.begin());
    if (idx == cdf_.size()) {
        // u rounded up to the total; fall back to the last outcome with mass.
        idx = cdf_.size() - 1;
        while (idx > 0 && cdf_[idx] == cdf_[idx - 1]) {
            --idx;
        }
    }
    return idx;
}

MeasurementDistribution sample(const StateVector &state, std::uint64_t rng_seed,
                               std::uint64_t shots) {
    if (shots == 0) {
        throw InvalidArgument("shots must be at least 1");
    }
    std::vector<double> probs(state.dim());
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < probs.size(); ++i) {
        probs[i] = std::norm(amps[i]);
    }
    const DiscreteSampler sampler(probs);
    Rng rng(rng_seed);
    std::map<std::uint64_t, std::uint64_t> counts;
    for (std::uint64_t s = 0; s < shots; ++s) {
        ++counts[sampler.draw(rng)];
    }
    std::map<std::uint64_t, double> outcomes;
    for (const auto &[k, c] : counts) {
        outcomes.emplace(k, static_cast<double>(c) / static_cast<double>(shots));
    }
    return {state.num_qubits(), std::move(outcomes)};
}

StateVector random_state(int num_qubits, Rng &rng) {
    std::vector<Complex> amps(std::size_t{1} << num_qubits);
    for (auto &a : amps) {
        const double re = rng.normal();
        const double im = rng.normal();
        a = Complex(re, im);
    }
    return StateVector::from_amplitudes(std::move(amps), 62);
}

Matrix random_unitary(int dim, Rng &rng) {
    Matrix g(dim, dim);
    for (int c = 0; c < dim; ++c) {
        for (int r = 0; r < dim; ++r) {
            const double re = rng.normal();
            const double im = rng.normal();
            g(r, c) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix rmat = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase of R's diagonal so Q is Haar distributed.
    for (int i = 0; i < dim; ++i) {
        const Complex d = rmat(i, i);
        q.col(i) *= d / std::abs(d);
    }
    return q;
}

} // namespace qsim
