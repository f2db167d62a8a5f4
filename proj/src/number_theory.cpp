#include "qsim/number_theory.hpp"

#include <bit>
#include <numeric>

namespace qsim::nt {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1U) {
            result = mul_mod(result, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) {
        return false;
    }
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) {
            return n == p;
        }
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) {
            continue;
        }
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) {
            return false;
        }
    }
    return true;
}

namespace {

// base^k, saturating at UINT64_MAX.
std::uint64_t saturating_pow(std::uint64_t base, unsigned k) {
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < k; ++i) {
        acc *= base;
        if (acc > UINT64_MAX) {
            return UINT64_MAX;
        }
    }
    return static_cast<std::uint64_t>(acc);
}

} // namespace

std::uint64_t integer_root(std::uint64_t n, unsigned k) {
    if (k == 1 || n < 2) {
        return n;
    }
    std::uint64_t lo = 1;
    std::uint64_t hi = std::uint64_t{1} << ((64 + k - 1) / k);
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo + 1) / 2;
        if (saturating_pow(mid, k) <= n) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    return lo;
}

std::optional<std::pair<std::uint64_t, unsigned>> perfect_power(std::uint64_t n) {
    if (n < 4) {
        return std::nullopt;
    }
    for (unsigned k = 63; k >= 2; --k) {
        const std::uint64_t r = integer_root(n, k);
        if (r >= 2 && saturating_pow(r, k) == n) {
            return std::make_pair(r, k);
        }
    }
    return std::nullopt;
}

bool is_prime_power(std::uint64_t n) {
    if (is_prime(n)) {
        return true;
    }
    const auto pp = perfect_power(n);
    return pp.has_value() && is_prime(pp->first);
}

std::uint64_t lcm(std::uint64_t a, std::uint64_t b) { return std::lcm(a, b); }

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) {
                n /= p;
            }
        }
    }
    if (n > 1) {
        out.push_back(n);
    }
    return out;
}

std::vector<Convergent> convergents(std::uint64_t num, std::uint64_t den) {
    std::vector<Convergent> out;
    // h_{-1} = 1, h_{-2} = 0; k_{-1} = 0, k_{-2} = 1
    unsigned __int128 h_prev = 1;
    unsigned __int128 h_prev2 = 0;
    unsigned __int128 k_prev = 0;
    unsigned __int128 k_prev2 = 1;
    while (den != 0) {
        const std::uint64_t a = num / den;
        const unsigned __int128 h = a * h_prev + h_prev2;
        const unsigned __int128 k = a * k_prev + k_prev2;
        if (h > UINT64_MAX || k > UINT64_MAX) {
            break;
        }
        out.push_back({static_cast<std::uint64_t>(h), static_cast<std::uint64_t>(k)});
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
        const std::uint64_t rem = num % den;
        num = den;
        den = rem;
    }
    return out;
}

std::uint64_t reduce_to_order(std::uint64_t a, std::uint64_t n, std::uint64_t multiple) {
    std::uint64_t order = multiple;
    for (const auto p : prime_factors(multiple)) {
        while (order % p == 0 && pow_mod(a, order / p, n) == 1 % n) {
            order /= p;
        }
    }
    return order;
}

int bit_width(std::uint64_t n) { return static_cast<int>(std::bit_width(n)); }

} // namespace qsim::nt
