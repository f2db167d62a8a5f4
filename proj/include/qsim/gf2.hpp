#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace qsim {

/// Basis of {y : popcount(row & y) is even for every row}, for n-bit rows
/// (bit n-1 - i of a word holds coordinate i). Gaussian elimination over GF(2).
std::vector<std::uint64_t> gf2_solve(std::span<const std::uint64_t> rows, int n);

/// Rank of the rows over GF(2).
int gf2_rank(std::span<const std::uint64_t> rows, int n);

} // namespace qsim
