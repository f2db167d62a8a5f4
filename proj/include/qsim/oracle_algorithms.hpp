#pragma once

// Deutsch-Jozsa, Bernstein-Vazirani and Simon over counted oracles.

#include <cstdint>
#include <memory>

#include "qsim/boolean.hpp"
#include "qsim/circuit.hpp"
#include "qsim/report.hpp"

namespace qsim {

enum class DjAnswer { Constant, Balanced };

/// Throws PromiseViolation unless f (one output bit) is constant or balanced.
void validate_dj_promise(const BooleanFunction &f);

/// H^n on the inputs, one oracle query, H^n, measure the inputs. A bit-flip
/// oracle gets an extra ancilla prepared in (|0> - |1>)/sqrt(2).
Circuit deutsch_jozsa_circuit(std::shared_ptr<QueryOracle> oracle);

/// One query. Constant iff the input register measures all zeros.
AlgorithmReport<DjAnswer> deutsch_jozsa(std::shared_ptr<QueryOracle> oracle,
                                        std::uint64_t rng_seed = 0,
                                        int max_qubits = kDefaultMaxQubits);

/// One query; the measured input register is the hidden string.
AlgorithmReport<std::uint64_t> bernstein_vazirani(std::shared_ptr<QueryOracle> oracle,
                                                  std::uint64_t rng_seed = 0,
                                                  int max_qubits = kDefaultMaxQubits);

/// Classical baseline: probes each unit vector, n queries.
AlgorithmReport<std::uint64_t> bernstein_vazirani_classical(QueryOracle &oracle);

/// Throws PromiseViolation unless f(x) == f(y) exactly when x xor y is 0 or s.
void validate_simon_promise(const BooleanFunction &f, std::uint64_t s);

/// f(x) = pi(min(x, x xor s)) for a random permutation pi of {0,1}^n.
BooleanFunction random_simon_function(int n, std::uint64_t s, Rng &rng);

/// Random balanced single-output function on n inputs.
BooleanFunction random_balanced_function(int n, Rng &rng);

struct SimonOptions {
    /// Iteration cap; 0 selects 20 n.
    int max_iterations = 0;
    int max_qubits = kDefaultMaxQubits;
};

struct SimonAnswer {
    std::uint64_t s = 0;
    int iterations = 0;
};

/// Repeats the one-query Simon circuit, collecting strings y with y.s = 0
/// until the GF(2) system leaves a single candidate. A nonzero candidate is
/// confirmed with two classical queries, f(0) and f(s); full rank means
/// s = 0. oracle_queries therefore equals iterations plus the confirmation
/// queries.
AlgorithmReport<SimonAnswer> simon(std::shared_ptr<QueryOracle> oracle, std::uint64_t rng_seed,
                                   const SimonOptions &options = {});

} // namespace qsim
