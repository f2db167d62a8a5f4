#include "qsim/gf2.hpp"

#include <bit>

#include "qsim/errors.hpp"

namespace qsim {

namespace {

struct Echelon {
    std::vector<std::uint64_t> rows; // reduced, one pivot each
    std::vector<int> pivots;         // bit position of each row's pivot
};

Echelon reduce(std::span<const std::uint64_t> input, int n) {
    if (n < 0 || n > 63) {
        throw InvalidArgument("GF(2) width must be in [0, 63]");
    }
    const std::uint64_t mask = n == 0 ? 0 : (std::uint64_t{1} << n) - 1;
    Echelon e;
    for (std::uint64_t row : input) {
        row &= mask;
        for (std::size_t i = 0; i < e.rows.size(); ++i) {
            if ((row >> e.pivots[i]) & 1U) {
                row ^= e.rows[i];
            }
        }
        if (row == 0) {
            continue;
        }
        const int pivot = std::bit_width(row) - 1;
        for (auto &other : e.rows) {
            if ((other >> pivot) & 1U) {
                other ^= row;
            }
        }
        e.rows.push_back(row);
        e.pivots.push_back(pivot);
    }
    return e;
}

} // namespace

std::vector<std::uint64_t> gf2_solve(std::span<const std::uint64_t> rows, int n) {
    const Echelon e = reduce(rows, n);
    std::uint64_t pivot_bits = 0;
    for (int p : e.pivots) {
        pivot_bits |= std::uint64_t{1} << p;
    }
    // One basis vector per free coordinate: set it, then solve each pivot.
    std::vector<std::uint64_t> basis;
    for (int bit = n - 1; bit >= 0; --bit) {
        if ((pivot_bits >> bit) & 1U) {
            continue;
        }
        std::uint64_t y = std::uint64_t{1} << bit;
        for (std::size_t i = 0; i < e.rows.size(); ++i) {
            if ((e.rows[i] >> bit) & 1U) {
                y |= std::uint64_t{1} << e.pivots[i];
            }
        }
        basis.push_back(y);
    }
    return basis;
}

int gf2_rank(std::span<const std::uint64_t> rows, int n) {
    return static_cast<int>(reduce(rows, n).rows.size());
}

} // namespace qsim
