#include "qsim/circuit.hpp"

#include <algorithm>
#include <numeric>

#include "qsim/errors.hpp"

namespace qsim {

Circuit::Circuit(int num_qubits, std::string name)
    : num_qubits_(num_qubits), name_(std::move(name)) {
    if (num_qubits < 0 || num_qubits > 62) {
        throw CapacityError("circuit", num_qubits, 62);
    }
}

Circuit &Circuit::add(Gate gate) {
    for (int q : gate.qubits()) {
        if (q >= num_qubits_) {
            throw InvalidIndexError(gate.name() + " qubit " + std::to_string(q) +
                                    " out of range for a " + std::to_string(num_qubits_) +
                                    "-qubit circuit");
        }
    }
    gates_.push_back(std::move(gate));
    return *this;
}

Circuit &Circuit::append(const Circuit &other, int offset) {
    std::vector<int> map(static_cast<std::size_t>(other.num_qubits()));
    std::iota(map.begin(), map.end(), offset);
    return append(other, map);
}

Circuit &Circuit::append(const Circuit &other, std::span<const int> qubit_map) {
    if (static_cast<int>(qubit_map.size()) < other.num_qubits()) {
        throw InvalidIndexError("qubit map shorter than the appended circuit");
    }
    for (const auto &g : other.gates()) {
        add(g.remapped(qubit_map));
    }
    return *this;
}

int Circuit::depth() const {
    std::vector<int> level(static_cast<std::size_t>(num_qubits_), 0);
    int depth = 0;
    for (const auto &g : gates_) {
        int layer = 0;
        for (int q : g.qubits()) {
            layer = std::max(layer, level[static_cast<std::size_t>(q)]);
        }
        ++layer;
        for (int q : g.qubits()) {
            level[static_cast<std::size_t>(q)] = layer;
        }
        depth = std::max(depth, layer);
    }
    return depth;
}

std::uint64_t Circuit::oracle_gate_count() const {
    return static_cast<std::uint64_t>(std::count_if(gates_.begin(), gates_.end(), [](const Gate &g) {
        return g.kind() == GateKind::Oracle;
    }));
}

Circuit Circuit::inverse() const {
    Circuit inv(num_qubits_, name_.empty() ? name_ : name_ + "^-1");
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        inv.add(it->inverse());
    }
    return inv;
}

bool Circuit::operator==(const Circuit &other) const {
    return num_qubits_ == other.num_qubits_ && name_ == other.name_ && gates_ == other.gates_;
}

void apply_in_place(const Circuit &c, StateVector &s) {
    if (c.num_qubits() != s.num_qubits()) {
        throw DimensionError("circuit on " + std::to_string(c.num_qubits()) +
                             " qubits applied to a " + std::to_string(s.num_qubits()) +
                             "-qubit state");
    }
    for (const auto &g : c.gates()) {
        apply_gate(g, s);
    }
}

StateVector apply(const Circuit &c, const StateVector &s) {
    StateVector out = s;
    apply_in_place(c, out);
    return out;
}

UnitaryMatrix circuit_unitary(const Circuit &c) {
    const int n = c.num_qubits();
    check_capacity(n, kMaxUnitaryQubits, "circuit unitary");
    const auto d = Eigen::Index{1} << n;
    Matrix u = Matrix::Identity(d, d);
    // Left-multiply each column by the embedded gate via its local matrix.
    for (const auto &g : c.gates()) {
        const Matrix local = g.local_matrix();
        for (Eigen::Index col = 0; col < d; ++col) {
            std::span<Complex> column(u.col(col).data(), static_cast<std::size_t>(d));
            apply_local_matrix(local, g.qubits(), n, column);
        }
    }
    return UnitaryMatrix(std::move(u));
}

} // namespace qsim
