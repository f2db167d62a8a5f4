#include "qsim/gate.hpp"

#include <algorithm>
#include <cmath>

#include "qsim/errors.hpp"
#include "qsim/number_theory.hpp"

namespace qsim {

namespace {

constexpr std::int64_t kParallelThreshold = std::int64_t{1} << 14;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

int expected_arity(GateKind kind) {
    switch (kind) {
    case GateKind::H:
    case GateKind::T:
    case GateKind::Tdg:
    case GateKind::X:
    case GateKind::Z:
    case GateKind::Phase:
        return 1;
    case GateKind::CPhase:
    case GateKind::CNOT:
    case GateKind::SWAP:
        return 2;
    case GateKind::CCNOT:
    case GateKind::CSWAP:
        return 3;
    default:
        return -1; // variable arity
    }
}

// Bit positions (LSB = 0) of the listed qubits.
std::vector<int> bit_positions(std::span<const int> qubits, int num_qubits) {
    std::vector<int> pos;
    pos.reserve(qubits.size());
    for (int q : qubits) {
        pos.push_back(num_qubits - 1 - q);
    }
    return pos;
}

// Expands `i` by inserting a zero bit at each of the ascending positions.
inline std::uint64_t insert_zero_bits(std::uint64_t i, std::span<const int> sorted_positions) {
    for (int p : sorted_positions) {
        const std::uint64_t low = i & ((std::uint64_t{1} << p) - 1);
        i = ((i ^ low) << 1) | low;
    }
    return i;
}

// Reads the listed qubits of basis index `i` as an integer, first qubit most
// significant.
inline std::uint64_t gather(std::uint64_t i, std::span<const std::uint64_t> masks) {
    std::uint64_t v = 0;
    for (const auto m : masks) {
        v = (v << 1) | static_cast<std::uint64_t>((i & m) != 0);
    }
    return v;
}

inline std::uint64_t scatter(std::uint64_t i, std::uint64_t value,
                             std::span<const std::uint64_t> masks) {
    const auto k = masks.size();
    for (std::size_t b = 0; b < k; ++b) {
        const auto m = masks[b];
        if ((value >> (k - 1 - b)) & 1U) {
            i |= m;
        } else {
            i &= ~m;
        }
    }
    return i;
}

std::vector<std::uint64_t> masks_of(std::span<const int> qubits, int num_qubits) {
    std::vector<std::uint64_t> m;
    m.reserve(qubits.size());
    for (int q : qubits) {
        m.push_back(qubit_mask(num_qubits, q));
    }
    return m;
}

// Calls f(i) for every basis index whose bits under `required` are all set.
template <typename F>
void for_each_with_bits(std::span<const int> qubits, int num_qubits, std::size_t dim, F &&f) {
    auto pos = bit_positions(qubits, num_qubits);
    std::sort(pos.begin(), pos.end());
    std::uint64_t required = 0;
    for (int p : pos) {
        required |= std::uint64_t{1} << p;
    }
    const auto count = static_cast<std::int64_t>(dim >> qubits.size());
#pragma omp parallel for schedule(static) if (count > kParallelThreshold)
    for (std::int64_t j = 0; j < count; ++j) {
        f(insert_zero_bits(static_cast<std::uint64_t>(j), pos) | required);
    }
}

void apply_single(std::span<Complex> a, int num_qubits, int qubit, Complex m00, Complex m01,
                  Complex m10, Complex m11) {
    const int p = num_qubits - 1 - qubit;
    const std::uint64_t mask = std::uint64_t{1} << p;
    const auto count = static_cast<std::int64_t>(a.size() / 2);
#pragma omp parallel for schedule(static) if (count > kParallelThreshold)
    for (std::int64_t j = 0; j < count; ++j) {
        const auto u = static_cast<std::uint64_t>(j);
        const std::uint64_t i0 = ((u >> p) << (p + 1)) | (u & (mask - 1));
        const std::uint64_t i1 = i0 | mask;
        const Complex v0 = a[i0];
        const Complex v1 = a[i1];
        a[i0] = m00 * v0 + m01 * v1;
        a[i1] = m10 * v0 + m11 * v1;
    }
}

void apply_hadamard(std::span<Complex> a, int num_qubits, int qubit) {
    const int p = num_qubits - 1 - qubit;
    const std::uint64_t mask = std::uint64_t{1} << p;
    const auto count = static_cast<std::int64_t>(a.size() / 2);
#pragma omp parallel for schedule(static) if (count > kParallelThreshold)
    for (std::int64_t j = 0; j < count; ++j) {
        const auto u = static_cast<std::uint64_t>(j);
        const std::uint64_t i0 = ((u >> p) << (p + 1)) | (u & (mask - 1));
        const std::uint64_t i1 = i0 | mask;
        const Complex v0 = a[i0];
        const Complex v1 = a[i1];
        a[i0] = (v0 + v1) * kInvSqrt2;
        a[i1] = (v0 - v1) * kInvSqrt2;
    }
}

// Multiplies by `phase` every amplitude whose listed qubits are all 1.
void apply_controlled_phase(std::span<Complex> a, int num_qubits, std::span<const int> qubits,
                            Complex phase) {
    for_each_with_bits(qubits, num_qubits, a.size(), [&](std::uint64_t i) { a[i] *= phase; });
}

// Swaps qubits `x` and `y` on the subspace where all `controls` are 1.
void apply_controlled_swap(std::span<Complex> a, int num_qubits, std::span<const int> controls,
                           int x, int y) {
    const std::uint64_t mx = qubit_mask(num_qubits, x);
    const std::uint64_t my = qubit_mask(num_qubits, y);
    std::vector<int> fixed(controls.begin(), controls.end());
    fixed.push_back(x);
    fixed.push_back(y);
    // Enumerate indices with controls = 1, x = 1, y = 1 and clear y / x.
    for_each_with_bits(fixed, num_qubits, a.size(),
                       [&](std::uint64_t i) { std::swap(a[i & ~my], a[i & ~mx]); });
}

// Flips `target` on the subspace where all `controls` are 1.
void apply_controlled_not(std::span<Complex> a, int num_qubits, std::span<const int> controls,
                          int target) {
    const std::uint64_t mt = qubit_mask(num_qubits, target);
    std::vector<int> fixed(controls.begin(), controls.end());
    fixed.push_back(target);
    for_each_with_bits(fixed, num_qubits, a.size(),
                       [&](std::uint64_t i) { std::swap(a[i], a[i & ~mt]); });
}

template <typename Map>
void apply_permutation(StateVector &state, Map &&image) {
    const auto src = state.amplitudes();
    std::vector<Complex> out(src.size());
    const auto count = static_cast<std::int64_t>(src.size());
#pragma omp parallel for schedule(static) if (count > kParallelThreshold)
    for (std::int64_t j = 0; j < count; ++j) {
        const auto i = static_cast<std::uint64_t>(j);
        out[image(i)] = src[i];
    }
    state.replace_amplitudes(std::move(out));
}

void apply_oracle(const Gate &g, StateVector &state) {
    auto &oracle = *g.query_oracle();
    const auto &f = oracle.function();
    const int n = state.num_qubits();
    const auto qubits = g.qubits();
    const auto in_masks = masks_of(qubits.first(static_cast<std::size_t>(f.num_inputs())), n);
    oracle.record_query();
    if (oracle.mode() == OracleMode::Phase) {
        auto a = state.amplitudes();
        const auto count = static_cast<std::int64_t>(a.size());
#pragma omp parallel for schedule(static) if (count > kParallelThreshold)
        for (std::int64_t j = 0; j < count; ++j) {
            const auto i = static_cast<std::uint64_t>(j);
            if (f(gather(i, in_masks)) & 1U) {
                a[i] = -a[i];
            }
        }
        return;
    }
    const auto out_masks = masks_of(qubits.subspan(static_cast<std::size_t>(f.num_inputs())), n);
    apply_permutation(state, [&](std::uint64_t i) {
        const std::uint64_t y = gather(i, out_masks) ^ f(gather(i, in_masks));
        return scatter(i, y, out_masks);
    });
}

void apply_modexp(const Gate &g, StateVector &state) {
    const auto &p = g.modexp_params();
    const int n = state.num_qubits();
    const auto qubits = g.qubits();
    const auto k = static_cast<std::size_t>(p.source_qubits);
    const auto src_masks = masks_of(qubits.first(k), n);
    const auto dst_masks = masks_of(qubits.subspan(k), n);
    // a^x mod N for every exponent value, each by square-and-multiply.
    std::vector<std::uint64_t> powers(std::size_t{1} << k);
    const auto count = static_cast<std::int64_t>(powers.size());
#pragma omp parallel for schedule(static) if (count > kParallelThreshold)
    for (std::int64_t x = 0; x < count; ++x) {
        powers[static_cast<std::size_t>(x)] =
            nt::pow_mod(p.base, static_cast<std::uint64_t>(x), p.modulus);
    }
    apply_permutation(state, [&](std::uint64_t i) {
        const std::uint64_t y = gather(i, dst_masks);
        if (y >= p.modulus) {
            return i;
        }
        const std::uint64_t y2 = nt::mul_mod(y, powers[gather(i, src_masks)], p.modulus);
        return scatter(i, y2, dst_masks);
    });
}

} // namespace

Gate::Gate(GateKind kind, std::vector<int> qubits) : kind_(kind), qubits_(std::move(qubits)) {
    validate();
}

void Gate::validate() const {
    const int want = expected_arity(kind_);
    if (want >= 0 && arity() != want) {
        throw ArityError(name() + " expects " + std::to_string(want) + " qubits, got " +
                         std::to_string(arity()));
    }
    if (qubits_.empty()) {
        throw ArityError(name() + " needs at least one qubit");
    }
    for (std::size_t i = 0; i < qubits_.size(); ++i) {
        if (qubits_[i] < 0) {
            throw InvalidIndexError("negative qubit index in " + name());
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (qubits_[i] == qubits_[j]) {
                throw InvalidIndexError(name() + " qubit indices must be distinct");
            }
        }
    }
}

Gate Gate::phase(int q, double theta) {
    Gate g(GateKind::Phase, {q});
    g.angle_ = theta;
    return g;
}

Gate Gate::cphase(int control, int target, double theta) {
    Gate g(GateKind::CPhase, {control, target});
    g.angle_ = theta;
    return g;
}

Gate Gate::unitary(UnitaryMatrix u, std::vector<int> qubits) {
    if (u.num_qubits() != static_cast<int>(qubits.size())) {
        throw ArityError("custom unitary on " + std::to_string(u.num_qubits()) +
                         " qubits given " + std::to_string(qubits.size()) + " indices");
    }
    Gate g(GateKind::Unitary, std::move(qubits));
    g.custom_ = std::make_shared<const UnitaryMatrix>(std::move(u));
    return g;
}

Gate Gate::oracle(std::shared_ptr<QueryOracle> oracle, std::vector<int> qubits) {
    if (!oracle) {
        throw InvalidArgument("oracle gate needs an oracle");
    }
    if (oracle->num_qubits() != static_cast<int>(qubits.size())) {
        throw ArityError("oracle acts on " + std::to_string(oracle->num_qubits()) +
                         " qubits, given " + std::to_string(qubits.size()));
    }
    Gate g(GateKind::Oracle, std::move(qubits));
    g.oracle_ = std::move(oracle);
    return g;
}

Gate Gate::modexp(std::uint64_t base, std::uint64_t modulus, int source_qubits,
                  std::vector<int> qubits) {
    const int width = static_cast<int>(qubits.size()) - source_qubits;
    if (source_qubits < 1 || width < 1) {
        throw ArityError("modular exponentiation needs non-empty source and target registers");
    }
    if (modulus < 2 || width >= 63 || modulus > (std::uint64_t{1} << width)) {
        throw InvalidArgument("modulus " + std::to_string(modulus) +
                              " does not fit the target register");
    }
    Gate g(GateKind::ModExp, std::move(qubits));
    g.modexp_ = {base % modulus, modulus, source_qubits};
    return g;
}

std::string Gate::name() const {
    switch (kind_) {
    case GateKind::H:
        return "H";
    case GateKind::T:
        return "T";
    case GateKind::Tdg:
        return "TDG";
    case GateKind::X:
        return "X";
    case GateKind::Z:
        return "Z";
    case GateKind::Phase:
        return "PHASE";
    case GateKind::CPhase:
        return "CPHASE";
    case GateKind::CNOT:
        return "CNOT";
    case GateKind::CCNOT:
        return "CCNOT";
    case GateKind::CSWAP:
        return "CSWAP";
    case GateKind::SWAP:
        return "SWAP";
    case GateKind::MCZ:
        return "MCZ";
    case GateKind::Unitary:
        return "UNITARY";
    case GateKind::Oracle:
        return oracle_ && oracle_->mode() == OracleMode::Phase ? "ORACLE_PHASE"
                                                               : "ORACLE_BITFLIP";
    case GateKind::ModExp:
        return "MODEXP";
    }
    return "?";
}

Matrix Gate::local_matrix() const {
    const auto d = Eigen::Index{1} << arity();
    Matrix m = Matrix::Zero(d, d);
    const Complex i1(0.0, 1.0);
    switch (kind_) {
    case GateKind::H:
        m << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
        return m;
    case GateKind::T:
        m << 1, 0, 0, std::exp(i1 * (kPi / 4));
        return m;
    case GateKind::Tdg:
        m << 1, 0, 0, std::exp(-i1 * (kPi / 4));
        return m;
    case GateKind::X:
        m << 0, 1, 1, 0;
        return m;
    case GateKind::Z:
        m << 1, 0, 0, -1;
        return m;
    case GateKind::Phase:
        m << 1, 0, 0, std::exp(i1 * angle_);
        return m;
    case GateKind::CPhase:
        m.diagonal() << 1, 1, 1, std::exp(i1 * angle_);
        return m;
    case GateKind::CNOT:
    case GateKind::CCNOT: {
        m.setIdentity();
        m(d - 1, d - 1) = 0;
        m(d - 2, d - 2) = 0;
        m(d - 1, d - 2) = 1;
        m(d - 2, d - 1) = 1;
        return m;
    }
    case GateKind::SWAP:
        m(0, 0) = m(3, 3) = 1;
        m(1, 2) = m(2, 1) = 1;
        return m;
    case GateKind::CSWAP:
        m.setIdentity();
        m(5, 5) = m(6, 6) = 0;
        m(5, 6) = m(6, 5) = 1;
        return m;
    case GateKind::MCZ:
        m.setIdentity();
        m(d - 1, d - 1) = -1;
        return m;
    case GateKind::Unitary:
        return custom_->matrix();
    case GateKind::Oracle: {
        const auto &f = oracle_->function();
        if (oracle_->mode() == OracleMode::Phase) {
            for (Eigen::Index x = 0; x < d; ++x) {
                m(x, x) = (f(static_cast<std::uint64_t>(x)) & 1U) ? -1.0 : 1.0;
            }
            return m;
        }
        const int n_out = f.num_outputs();
        for (Eigen::Index col = 0; col < d; ++col) {
            const auto c = static_cast<std::uint64_t>(col);
            const std::uint64_t x = c >> n_out;
            const std::uint64_t y = c & ((std::uint64_t{1} << n_out) - 1);
            m(static_cast<Eigen::Index>((x << n_out) | (y ^ f(x))), col) = 1.0;
        }
        return m;
    }
    case GateKind::ModExp: {
        const int width = arity() - modexp_.source_qubits;
        for (Eigen::Index col = 0; col < d; ++col) {
            const auto c = static_cast<std::uint64_t>(col);
            const std::uint64_t x = c >> width;
            const std::uint64_t y = c & ((std::uint64_t{1} << width) - 1);
            std::uint64_t y2 = y;
            if (y < modexp_.modulus) {
                y2 = nt::mul_mod(y, nt::pow_mod(modexp_.base, x, modexp_.modulus),
                                 modexp_.modulus);
            }
            m(static_cast<Eigen::Index>((x << width) | y2), col) = 1.0;
        }
        return m;
    }
    }
    return m;
}

Gate Gate::remapped(std::span<const int> map) const {
    Gate g = *this;
    for (auto &q : g.qubits_) {
        if (q >= static_cast<int>(map.size())) {
            throw InvalidIndexError("qubit map too short for " + name());
        }
        q = map[static_cast<std::size_t>(q)];
    }
    g.validate();
    return g;
}

Gate Gate::inverse() const {
    Gate g = *this;
    switch (kind_) {
    case GateKind::T:
        g.kind_ = GateKind::Tdg;
        break;
    case GateKind::Tdg:
        g.kind_ = GateKind::T;
        break;
    case GateKind::Phase:
    case GateKind::CPhase:
        g.angle_ = -angle_;
        break;
    case GateKind::Unitary:
        g.custom_ = std::make_shared<const UnitaryMatrix>(custom_->adjoint());
        break;
    case GateKind::ModExp:
        throw InvalidArgument("modular exponentiation gate has no stored inverse");
    default:
        break; // self-inverse
    }
    return g;
}

bool Gate::operator==(const Gate &other) const {
    if (kind_ != other.kind_ || qubits_ != other.qubits_ || angle_ != other.angle_ ||
        !(modexp_ == other.modexp_)) {
        return false;
    }
    if (kind_ == GateKind::Unitary) {
        return custom_->matrix() == other.custom_->matrix();
    }
    if (kind_ == GateKind::Oracle) {
        return oracle_->mode() == other.oracle_->mode() &&
               oracle_->function() == other.oracle_->function();
    }
    return true;
}

void apply_local_matrix(const Matrix &m, std::span<const int> qubits, int num_qubits,
                        std::span<Complex> amps) {
    const auto k = qubits.size();
    const auto d = std::size_t{1} << k;
    auto pos = bit_positions(qubits, num_qubits);
    std::vector<std::uint64_t> offsets(d, 0);
    for (std::size_t l = 0; l < d; ++l) {
        for (std::size_t b = 0; b < k; ++b) {
            if ((l >> (k - 1 - b)) & 1U) {
                offsets[l] |= std::uint64_t{1} << pos[b];
            }
        }
    }
    std::sort(pos.begin(), pos.end());
    const auto count = static_cast<std::int64_t>(amps.size() >> k);
#pragma omp parallel if (count > kParallelThreshold)
    {
        std::vector<Complex> in(d);
#pragma omp for schedule(static)
        for (std::int64_t j = 0; j < count; ++j) {
            const std::uint64_t base = insert_zero_bits(static_cast<std::uint64_t>(j), pos);
            for (std::size_t l = 0; l < d; ++l) {
                in[l] = amps[base + offsets[l]];
            }
            for (std::size_t r = 0; r < d; ++r) {
                Complex acc{};
                for (std::size_t c = 0; c < d; ++c) {
                    acc += m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[c];
                }
                amps[base + offsets[r]] = acc;
            }
        }
    }
}

void apply_gate(const Gate &gate, StateVector &state) {
    const int n = state.num_qubits();
    for (int q : gate.qubits()) {
        if (q >= n) {
            throw InvalidIndexError(gate.name() + " qubit " + std::to_string(q) +
                                    " out of range for " + std::to_string(n) + " qubits");
        }
    }
    auto a = state.amplitudes();
    const auto qs = gate.qubits();
    const Complex i1(0.0, 1.0);
    switch (gate.kind()) {
    case GateKind::H:
        apply_hadamard(a, n, qs[0]);
        return;
    case GateKind::X:
        apply_controlled_not(a, n, {}, qs[0]);
        return;
    case GateKind::Z:
        apply_controlled_phase(a, n, qs, -1.0);
        return;
    case GateKind::T:
        apply_controlled_phase(a, n, qs, std::exp(i1 * (kPi / 4)));
        return;
    case GateKind::Tdg:
        apply_controlled_phase(a, n, qs, std::exp(-i1 * (kPi / 4)));
        return;
    case GateKind::Phase:
    case GateKind::CPhase:
        apply_controlled_phase(a, n, qs, std::exp(i1 * gate.angle()));
        return;
    case GateKind::MCZ:
        apply_controlled_phase(a, n, qs, -1.0);
        return;
    case GateKind::CNOT:
    case GateKind::CCNOT:
        apply_controlled_not(a, n, qs.first(qs.size() - 1), qs.back());
        return;
    case GateKind::SWAP:
        apply_controlled_swap(a, n, {}, qs[0], qs[1]);
        return;
    case GateKind::CSWAP:
        apply_controlled_swap(a, n, qs.first(1), qs[1], qs[2]);
        return;
    case GateKind::Unitary: {
        const auto &m = gate.custom()->matrix();
        if (m.rows() == 2) {
            apply_single(a, n, qs[0], m(0, 0), m(0, 1), m(1, 0), m(1, 1));
        } else {
            apply_local_matrix(m, qs, n, a);
        }
        return;
    }
    case GateKind::Oracle:
        apply_oracle(gate, state);
        return;
    case GateKind::ModExp:
        apply_modexp(gate, state);
        return;
    }
}

Matrix embed_gate(const Gate &gate, int num_qubits) {
    const Matrix local = gate.local_matrix();
    const auto masks = masks_of(gate.qubits(), num_qubits);
    std::uint64_t all = 0;
    for (auto m : masks) {
        all |= m;
    }
    const auto d = Eigen::Index{1} << num_qubits;
    Matrix full = Matrix::Zero(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            const auto ru = static_cast<std::uint64_t>(r);
            const auto cu = static_cast<std::uint64_t>(c);
            if ((ru & ~all) != (cu & ~all)) {
                continue;
            }
            full(r, c) = local(static_cast<Eigen::Index>(gather(ru, masks)),
                               static_cast<Eigen::Index>(gather(cu, masks)));
        }
    }
    return full;
}

} // namespace qsim
