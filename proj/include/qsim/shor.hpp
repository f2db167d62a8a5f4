#pragma once

// Order finding by phase estimation of modular multiplication, and the
// factoring loop built on it.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qsim/circuit.hpp"
#include "qsim/report.hpp"

namespace qsim {

/// Register sizing for one order-finding run.
struct OrderFindingInstance {
    std::uint64_t modulus = 0; // N
    std::uint64_t base = 0;    // a
    int source_qubits = 0;     // k, with N^2 <= 2^k < 2 N^2
    int target_qubits = 0;     // n_t, with 2^n_t > N

    /// Validates N >= 3, gcd(a, N) = 1 and N^2 < 2^62, then sizes the registers.
    static OrderFindingInstance make(std::uint64_t modulus, std::uint64_t base);

    int total_qubits() const noexcept { return source_qubits + target_qubits; }
    std::uint64_t source_dim() const noexcept { return std::uint64_t{1} << source_qubits; }
};

/// Smallest r >= 1 with a^r = 1 (mod N), by direct scan.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t modulus);

/// X on the target's low bit, H on the source, MODEXP, inverse QFT on the
/// source. Source qubits come first.
Circuit order_finding_circuit(const OrderFindingInstance &inst, int max_qubits = kDefaultMaxQubits);

/// Exact source-register distribution of the full circuit on |0>^k |0>^n_t.
std::vector<double> order_finding_probabilities(const OrderFindingInstance &inst,
                                                int max_qubits = kDefaultMaxQubits);

/// Source-register distribution in closed form, given the order r.
///
/// With Q = 2^k = d r + e, residue classes with d + 1 terms have total weight
/// e (d + 1) / Q. Within a class of m terms, s is distributed as
/// sin^2(pi m s r / Q) / sin^2(pi s r / Q), which depends on s only through
/// u = s r / g mod L, g = gcd(r, Q), L = Q / g. Draws pick the class, then u
/// by rejection from a flat-top envelope, then one of the g preimages of u.
/// Expected cost per draw is O(1); no amplitude array is allocated.
class OrderSampler {
  public:
    OrderSampler(const OrderFindingInstance &inst, std::uint64_t order);

    std::uint64_t draw(Rng &rng) const;
    /// Exact P(s).
    double probability(std::uint64_t s) const;
    std::uint64_t order() const noexcept { return r_; }

  private:
    std::uint64_t draw_residue(std::uint64_t m, Rng &rng) const;

    std::uint64_t q_;
    std::uint64_t r_;
    std::uint64_t d_;
    std::uint64_t e_;
    std::uint64_t g_;
    std::uint64_t l_;
    std::uint64_t step_inverse_; // (r / g)^-1 mod L
    // Inverse-CDF tables for classes of d and d + 1 terms when L is small.
    std::shared_ptr<const DiscreteSampler> short_table_;
    std::shared_ptr<const DiscreteSampler> long_table_;
};

/// One draw from the closed-form distribution with a fresh seeded generator.
std::uint64_t order_distribution_sampler(const OrderFindingInstance &inst, std::uint64_t order,
                                         std::uint64_t rng_seed);

enum class ExecutionPath { StateVector, Sampler, ClassicalGcd };

std::string to_string(ExecutionPath path);

struct OrderFindingOptions {
    /// The full state vector is used when k + n_t fits in this budget.
    int max_qubits = kDefaultMaxQubits;
    int max_restarts = 50;
    int samples_per_attempt = 10;
};

struct OrderAnswer {
    std::uint64_t order = 0;
    ExecutionPath path = ExecutionPath::StateVector;
};

/// Samples the source register and infers r from continued-fraction
/// convergents of s / 2^k with denominators below N. Within an attempt the
/// lcm of candidate denominators is tried as samples accumulate; an attempt
/// that ends without a verified order counts as a restart. Every sample is
/// one execution of the modular-exponentiation circuit and counts as one
/// oracle query. The sampler path takes its r from multiplicative_order.
AlgorithmReport<OrderAnswer> order_find_simulated(const OrderFindingInstance &inst,
                                                  std::uint64_t rng_seed,
                                                  const OrderFindingOptions &options = {});

/// Throws InvalidArgument unless N is odd, composite and not a prime power.
void validate_shor_modulus(std::uint64_t modulus);

struct ShorOptions {
    int max_qubits = kDefaultMaxQubits;
    int max_restarts = 50;
    int samples_per_attempt = 10;
};

struct FactorAnswer {
    std::uint64_t p = 0; // p <= q, p q = N when the run succeeded
    std::uint64_t q = 0;
    std::uint64_t base = 0;
    std::uint64_t order = 0; // 0 when the factor came from gcd(a, N)
    ExecutionPath path = ExecutionPath::ClassicalGcd;
};

/// Random a; a shared factor with N ends the run at once. Otherwise find the
/// order r of a, restart if r is odd or a^(r/2) = -1 (mod N), else return
/// gcd(a^(r/2) +- 1, N). restarts counts draws of a after the first.
AlgorithmReport<FactorAnswer> shor_factor(std::uint64_t modulus, std::uint64_t rng_seed,
                                          const ShorOptions &options = {});

} // namespace qsim
