#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "qsim/boolean.hpp"
#include "qsim/circuit.hpp"
#include "qsim/report.hpp"

namespace qsim {

/// floor((pi/4) sqrt(N/M)).
int grover_default_iterations(int num_qubits, std::uint64_t num_marked);

/// sin^2((2j+1) theta) with theta = arcsin(sqrt(M/N)).
double grover_success_closed_form(int num_qubits, std::uint64_t num_marked, int iterations);

/// Phase-oracle function marking the listed items.
BooleanFunction marked_items_function(int num_qubits, const std::vector<std::uint64_t> &marked);

/// Inversion about the mean, up to a global phase: H X MCZ X H on every qubit.
Circuit grover_diffusion(int num_qubits);

/// H^n followed by `iterations` rounds of (phase oracle, diffusion).
Circuit grover_circuit(std::shared_ptr<QueryOracle> oracle, int iterations);

struct GroverOptions {
    /// Unset selects grover_default_iterations.
    std::optional<int> iterations;
    std::uint64_t shots = 1;
    int max_qubits = kDefaultMaxQubits;
};

struct GroverAnswer {
    /// First sampled outcome.
    std::uint64_t index = 0;
    int iterations = 0;
    /// Exact probability mass on marked items before measurement.
    double success_probability = 0.0;
    /// Fraction of shots that landed on a marked item.
    double empirical_success = 0.0;
};

/// Runs the search once and samples the register `shots` times. The oracle
/// is queried once per iteration.
AlgorithmReport<GroverAnswer> grover(std::shared_ptr<QueryOracle> oracle, std::uint64_t rng_seed,
                                     const GroverOptions &options = {});

/// Exact success probability after each of j = 0..max_iterations rounds.
std::vector<double> grover_success_curve(int num_qubits, const std::vector<std::uint64_t> &marked,
                                         int max_iterations);

struct GroverScalingPoint {
    int num_qubits = 0;
    /// Iteration count maximizing the exact success probability.
    int best_iterations = 0;
    double best_success = 0.0;
};

struct GroverScalingFit {
    std::vector<GroverScalingPoint> points;
    /// Least-squares slope of log(best_iterations) against log(N).
    double exponent = 0.0;
    /// Least-squares c in best_iterations ~ c sqrt(N).
    double coefficient = 0.0;
};

/// Single marked item over N = 2^min_qubits .. 2^max_qubits.
GroverScalingFit grover_scaling(int min_qubits, int max_qubits);

} // namespace qsim
