#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "qsim/boolean.hpp"
#include "qsim/state.hpp"

namespace qsim {

enum class GateKind {
    H,
    T,
    Tdg,
    X,
    Z,
    Phase,  // diag(1, e^{i theta})
    CPhase, // diag(1, 1, 1, e^{i theta})
    CNOT,
    CCNOT,
    CSWAP,
    SWAP,
    MCZ,     // phase -1 on |1...1>, any arity >= 1
    Unitary, // custom dense matrix
    Oracle,  // opaque QueryOracle application
    ModExp,  // |x>|y> -> |x>|y * a^x mod N> for y < N, identity for y >= N
};

/// Parameters of the modular-exponentiation permutation gate.
struct ModExpParams {
    std::uint64_t base = 0;
    std::uint64_t modulus = 0;
    int source_qubits = 0;

    bool operator==(const ModExpParams &) const = default;
};

/// One gate on an ordered list of qubits. Controls are listed before targets.
class Gate {
  public:
    static Gate h(int q) { return {GateKind::H, {q}}; }
    static Gate t(int q) { return {GateKind::T, {q}}; }
    static Gate tdg(int q) { return {GateKind::Tdg, {q}}; }
    static Gate x(int q) { return {GateKind::X, {q}}; }
    static Gate z(int q) { return {GateKind::Z, {q}}; }
    static Gate phase(int q, double theta);
    static Gate cphase(int control, int target, double theta);
    static Gate cnot(int control, int target) { return {GateKind::CNOT, {control, target}}; }
    static Gate ccnot(int c0, int c1, int target) {
        return {GateKind::CCNOT, {c0, c1, target}};
    }
    static Gate cswap(int control, int a, int b) { return {GateKind::CSWAP, {control, a, b}}; }
    static Gate swap(int a, int b) { return {GateKind::SWAP, {a, b}}; }
    static Gate mcz(std::vector<int> qubits) { return {GateKind::MCZ, std::move(qubits)}; }
    static Gate unitary(UnitaryMatrix u, std::vector<int> qubits);
    /// Qubits are the oracle inputs followed, for bit-flip oracles, by its outputs.
    static Gate oracle(std::shared_ptr<QueryOracle> oracle, std::vector<int> qubits);
    /// Qubits are `source_qubits` exponent qubits followed by the target register.
    static Gate modexp(std::uint64_t base, std::uint64_t modulus, int source_qubits,
                       std::vector<int> qubits);

    GateKind kind() const noexcept { return kind_; }
    std::span<const int> qubits() const noexcept { return qubits_; }
    int arity() const noexcept { return static_cast<int>(qubits_.size()); }
    double angle() const noexcept { return angle_; }
    const UnitaryMatrix *custom() const noexcept { return custom_.get(); }
    const std::shared_ptr<QueryOracle> &query_oracle() const noexcept { return oracle_; }
    const ModExpParams &modexp_params() const noexcept { return modexp_; }

    /// Mnemonic used by the text format, e.g. "CNOT".
    std::string name() const;

    /// Dense 2^arity matrix in the gate's own qubit order (first qubit most
    /// significant).
    Matrix local_matrix() const;

    /// Same gate with every qubit index q replaced by map[q].
    Gate remapped(std::span<const int> map) const;

    /// Inverse gate. Throws InvalidArgument for ModExp.
    Gate inverse() const;

    /// Structural equality; oracles compare by function and mode.
    bool operator==(const Gate &other) const;

  private:
    Gate(GateKind kind, std::vector<int> qubits);
    void validate() const;

    GateKind kind_;
    std::vector<int> qubits_;
    double angle_ = 0.0;
    std::shared_ptr<const UnitaryMatrix> custom_;
    std::shared_ptr<QueryOracle> oracle_;
    ModExpParams modexp_;
};

/// Applies `gate` in place by amplitude index arithmetic. Oracle gates record
/// one query on their QueryOracle.
void apply_gate(const Gate &gate, StateVector &state);

/// Multiplies the amplitudes by a dense matrix acting on `qubits` (first qubit
/// most significant in the matrix index).
void apply_local_matrix(const Matrix &m, std::span<const int> qubits, int num_qubits,
                        std::span<Complex> amps);

/// The gate embedded as a full 2^n x 2^n matrix, built entry by entry from
/// local_matrix(). Intended for small n.
Matrix embed_gate(const Gate &gate, int num_qubits);

} // namespace qsim
