#pragma once

#include <memory>

#include "qsim/boolean.hpp"
#include "qsim/circuit.hpp"

namespace qsim {

/// Circuit on n_in + n_out qubits holding one opaque bit-flip oracle gate:
/// |x>|y> -> |x>|y xor f(x)>. Inputs occupy qubits 0..n_in-1.
Circuit bitflip_oracle(std::shared_ptr<QueryOracle> oracle, int max_qubits = kDefaultMaxQubits);
Circuit bitflip_oracle(const BooleanFunction &f, int max_qubits = kDefaultMaxQubits);

/// Circuit on n_in qubits holding one opaque phase oracle gate:
/// |x> -> (-1)^f(x) |x>. Throws ArityError unless f has one output bit.
Circuit phase_oracle(std::shared_ptr<QueryOracle> oracle, int max_qubits = kDefaultMaxQubits);
Circuit phase_oracle(const BooleanFunction &f, int max_qubits = kDefaultMaxQubits);

} // namespace qsim
