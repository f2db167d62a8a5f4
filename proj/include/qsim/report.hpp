#pragma once

#include <cstdint>

namespace qsim {

/// Outcome of one algorithm run with its cost accounting.
template <typename Answer>
struct AlgorithmReport {
    Answer answer{};
    /// Oracle invocations, read from the QueryOracle counters.
    std::uint64_t oracle_queries = 0;
    /// Measurement samples drawn.
    std::uint64_t shots = 0;
    std::uint64_t restarts = 0;
    std::uint64_t rng_seed = 0;
    /// False when an iteration or restart cap was hit.
    bool success = true;
};

} // namespace qsim
