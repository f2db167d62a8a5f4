#include "qsim/oracle.hpp"

#include <numeric>

#include "qsim/errors.hpp"

namespace qsim {

namespace {

Circuit single_gate_circuit(std::shared_ptr<QueryOracle> oracle, int max_qubits,
                            const char *name) {
    const int n = oracle->num_qubits();
    check_capacity(n, max_qubits, name);
    std::vector<int> qubits(static_cast<std::size_t>(n));
    std::iota(qubits.begin(), qubits.end(), 0);
    Circuit c(n, name);
    c.add(Gate::oracle(std::move(oracle), std::move(qubits)));
    return c;
}

} // namespace

Circuit bitflip_oracle(std::shared_ptr<QueryOracle> oracle, int max_qubits) {
    if (oracle->mode() != OracleMode::BitFlip) {
        throw InvalidArgument("bit-flip oracle circuit needs a bit-flip QueryOracle");
    }
    return single_gate_circuit(std::move(oracle), max_qubits, "bitflip_oracle");
}

Circuit bitflip_oracle(const BooleanFunction &f, int max_qubits) {
    check_capacity(f.num_inputs() + f.num_outputs(), max_qubits, "bitflip_oracle");
    return bitflip_oracle(QueryOracle::make(f, OracleMode::BitFlip), max_qubits);
}

Circuit phase_oracle(std::shared_ptr<QueryOracle> oracle, int max_qubits) {
    if (oracle->mode() != OracleMode::Phase) {
        throw InvalidArgument("phase oracle circuit needs a phase QueryOracle");
    }
    return single_gate_circuit(std::move(oracle), max_qubits, "phase_oracle");
}

Circuit phase_oracle(const BooleanFunction &f, int max_qubits) {
    if (f.num_outputs() != 1) {
        throw ArityError("phase oracle needs a single-output function, got " +
                         std::to_string(f.num_outputs()) + " outputs");
    }
    check_capacity(f.num_inputs(), max_qubits, "phase_oracle");
    return phase_oracle(QueryOracle::make(f, OracleMode::Phase), max_qubits);
}

} // namespace qsim
