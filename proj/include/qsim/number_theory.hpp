#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace qsim::nt {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);

/// base^exp mod m by square-and-multiply. m must be positive.
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// floor(n^(1/k)).
std::uint64_t integer_root(std::uint64_t n, unsigned k);

/// (p, k) with p^k == n and k >= 2 maximal, when n is a perfect power.
std::optional<std::pair<std::uint64_t, unsigned>> perfect_power(std::uint64_t n);

/// True if n = p^k for a prime p and k >= 1.
bool is_prime_power(std::uint64_t n);

std::uint64_t lcm(std::uint64_t a, std::uint64_t b);

/// Distinct prime factors by trial division.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

struct Convergent {
    std::uint64_t numerator;
    std::uint64_t denominator;
};

/// Continued-fraction convergents of num/den in order of increasing
/// denominator.
std::vector<Convergent> convergents(std::uint64_t num, std::uint64_t den);

/// Smallest divisor d of `multiple` with a^d == 1 (mod n), given that
/// a^multiple == 1 (mod n).
std::uint64_t reduce_to_order(std::uint64_t a, std::uint64_t n, std::uint64_t multiple);

/// Number of bits needed to write n (0 for n == 0).
int bit_width(std::uint64_t n);

} // namespace qsim::nt
