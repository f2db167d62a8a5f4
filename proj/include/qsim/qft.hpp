#pragma once

#include "qsim/circuit.hpp"

namespace qsim {

/// QFT on k qubits: H and controlled-phase(2 pi / 2^m) layers followed by
/// the qubit-reversal swaps. k(k+1)/2 + floor(k/2) gates.
Circuit qft_circuit(int k, int max_qubits = kDefaultMaxQubits);

/// Exact inverse of qft_circuit(k).
Circuit qft_inverse_circuit(int k, int max_qubits = kDefaultMaxQubits);

/// Dense matrix with entries w^(q q') / sqrt(Q), Q = 2^k, w = e^(2 pi i / Q),
/// or w^(-q q') for the inverse. Limited to kMaxUnitaryQubits.
UnitaryMatrix qft_matrix(int k, bool inverse = false);

} // namespace qsim
