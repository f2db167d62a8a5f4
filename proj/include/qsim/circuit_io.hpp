#pragma once

// Line-oriented circuit text format.
//
//   # comment                       blank lines and '#' comments are ignored
//   QUBITS <n>                      required, before the first gate
//   NAME <text>                     optional
//   H|T|TDG|X|Z <q>
//   PHASE <q> <theta>
//   CPHASE <control> <target> <theta>
//   CNOT <c> <t> | SWAP <a> <b> | CCNOT <c0> <c1> <t> | CSWAP <c> <a> <b>
//   MCZ <k> <q0> ... <q(k-1)>
//   UNITARY <k> <q0> ... <q(k-1)> <re im> x 4^k   (row-major)
//   ORACLE_BITFLIP <n_in> <n_out> <q0> ... <q(n_in+n_out-1)> <table, 2^n_in ints>
//   ORACLE_PHASE <n_in> <q0> ... <q(n_in-1)> <table, 2^n_in ints>
//   MODEXP <base> <modulus> <k> <width> <q0> ... <q(k+width-1)>
//
// Angles and matrix entries are written with 17 significant digits, so
// format/parse round trips are exact. Oracle gates read back with a fresh
// query counter.

#include <iosfwd>
#include <string>

#include "qsim/circuit.hpp"

namespace qsim {

Circuit parse_circuit(std::istream &in);
Circuit parse_circuit(const std::string &text);
Circuit read_circuit(const std::string &path);
std::string format_circuit(const Circuit &c);

} // namespace qsim
