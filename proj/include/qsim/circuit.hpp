#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qsim/gate.hpp"
#include "qsim/state.hpp"

namespace qsim {

inline constexpr int kMaxUnitaryQubits = 10;

/// Ordered gate sequence on a fixed number of qubits.
class Circuit {
  public:
    explicit Circuit(int num_qubits, std::string name = {});

    int num_qubits() const noexcept { return num_qubits_; }
    const std::string &name() const noexcept { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }
    const std::vector<Gate> &gates() const noexcept { return gates_; }

    /// Throws InvalidIndexError if a gate qubit is >= num_qubits().
    Circuit &add(Gate gate);
    /// Appends `other` with its qubit q placed on qubit q + offset.
    Circuit &append(const Circuit &other, int offset = 0);
    /// Appends `other` with its qubit q placed on qubit map[q].
    Circuit &append(const Circuit &other, std::span<const int> qubit_map);

    /// Gate count.
    std::size_t size() const noexcept { return gates_.size(); }
    /// Longest chain of gates linked through shared qubits; every gate counts
    /// as one layer regardless of arity.
    int depth() const;

    /// Number of oracle gates, i.e. oracle queries per execution.
    std::uint64_t oracle_gate_count() const;

    /// Reversed circuit of inverse gates.
    Circuit inverse() const;

    bool operator==(const Circuit &other) const;

  private:
    int num_qubits_;
    std::string name_;
    std::vector<Gate> gates_;
};

/// U_c |s>. Throws DimensionError if the qubit counts differ.
StateVector apply(const Circuit &c, const StateVector &s);
void apply_in_place(const Circuit &c, StateVector &s);

/// Dense product of the embedded gate matrices (last gate leftmost). Throws
/// CapacityError above kMaxUnitaryQubits qubits.
UnitaryMatrix circuit_unitary(const Circuit &c);

} // namespace qsim
