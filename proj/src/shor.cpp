#include "qsim/shor.hpp"

#include <cmath>
#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>

#include "qsim/errors.hpp"
#include "qsim/number_theory.hpp"
#include "qsim/qft.hpp"

namespace qsim {

namespace {

constexpr std::uint64_t kTableThreshold = 1024;

/// sin^2(pi m u / L) / sin^2(pi u / L), equal to m^2 at u = 0.
double fejer(std::uint64_t m, std::uint64_t u, std::uint64_t l) {
    if (u == 0) {
        return static_cast<double>(m) * static_cast<double>(m);
    }
    const double lf = static_cast<double>(l);
    const double num = std::sin(kPi * static_cast<double>(nt::mul_mod(m, u, l)) / lf);
    const double den = std::sin(kPi * static_cast<double>(u) / lf);
    return (num * num) / (den * den);
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
    __int128 old_r = static_cast<__int128>(a % m), r = static_cast<__int128>(m);
    __int128 old_s = 1, s = 0;
    while (r != 0) {
        const __int128 q = old_r / r;
        const __int128 tmp_r = old_r - q * r;
        old_r = r;
        r = tmp_r;
        const __int128 tmp_s = old_s - q * s;
        old_s = s;
        s = tmp_s;
    }
    if (old_r != 1) {
        throw InvalidArgument("value has no inverse modulo " + std::to_string(m));
    }
    const __int128 mm = static_cast<__int128>(m);
    return static_cast<std::uint64_t>(((old_s % mm) + mm) % mm);
}

std::vector<int> first_qubits(int count) {
    std::vector<int> qs(static_cast<std::size_t>(count));
    std::iota(qs.begin(), qs.end(), 0);
    return qs;
}

} // namespace

OrderFindingInstance OrderFindingInstance::make(std::uint64_t modulus, std::uint64_t base) {
    if (modulus < 3) {
        throw InvalidArgument("order finding needs N >= 3, got " + std::to_string(modulus));
    }
    if (modulus >= (std::uint64_t{1} << 31)) {
        throw InvalidArgument("order finding needs N < 2^31, got " + std::to_string(modulus));
    }
    base %= modulus;
    if (std::gcd(base, modulus) != 1) {
        throw InvalidArgument("base " + std::to_string(base) + " is not coprime to " +
                              std::to_string(modulus));
    }
    OrderFindingInstance inst;
    inst.modulus = modulus;
    inst.base = base;
    const std::uint64_t square = modulus * modulus;
    int k = 0;
    while ((std::uint64_t{1} << k) < square) {
        ++k;
    }
    inst.source_qubits = k;
    inst.target_qubits = nt::bit_width(modulus);
    return inst;
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t modulus) {
    if (modulus < 2 || std::gcd(a, modulus) != 1) {
        throw InvalidArgument("order needs gcd(a, N) = 1 and N >= 2");
    }
    a %= modulus;
    std::uint64_t x = a;
    std::uint64_t r = 1;
    while (x != 1 % modulus) {
        x = nt::mul_mod(x, a, modulus);
        ++r;
    }
    return r;
}

Circuit order_finding_circuit(const OrderFindingInstance &inst, int max_qubits) {
    const int k = inst.source_qubits;
    const int n = inst.total_qubits();
    check_capacity(n, max_qubits, "order finding");
    Circuit c(n, "order_finding");
    c.add(Gate::x(n - 1));
    for (int q = 0; q < k; ++q) {
        c.add(Gate::h(q));
    }
    c.add(Gate::modexp(inst.base, inst.modulus, k, first_qubits(n)));
    c.append(qft_inverse_circuit(k, max_qubits));
    return c;
}

std::vector<double> order_finding_probabilities(const OrderFindingInstance &inst,
                                                int max_qubits) {
    const Circuit c = order_finding_circuit(inst, max_qubits);
    StateVector s(c.num_qubits(), max_qubits);
    apply_in_place(c, s);
    return marginal_probabilities(s, first_qubits(inst.source_qubits));
}

OrderSampler::OrderSampler(const OrderFindingInstance &inst, std::uint64_t order)
    : q_(inst.source_dim()), r_(order) {
    if (order < 1 || nt::pow_mod(inst.base, order, inst.modulus) != 1 % inst.modulus) {
        throw InvalidArgument("sampler needs the order of the base");
    }
    d_ = q_ / r_;
    e_ = q_ % r_;
    g_ = std::gcd(r_, q_);
    l_ = q_ / g_;
    step_inverse_ = l_ == 1 ? 0 : inverse_mod(r_ / g_, l_);
    if (l_ <= kTableThreshold) {
        std::vector<double> w(l_);
        for (std::uint64_t u = 0; u < l_; ++u) {
            w[u] = fejer(d_, u, l_);
        }
        short_table_ = std::make_shared<DiscreteSampler>(w);
        for (std::uint64_t u = 0; u < l_; ++u) {
            w[u] = fejer(d_ + 1, u, l_);
        }
        long_table_ = std::make_shared<DiscreteSampler>(w);
    }
}

double OrderSampler::probability(std::uint64_t s) const {
    if (s >= q_) {
        return 0.0;
    }
    const std::uint64_t t = nt::mul_mod(s, r_, q_);
    const double qf = static_cast<double>(q_);
    const double weight = static_cast<double>(e_) * fejer(d_ + 1, t, q_) +
                          static_cast<double>(r_ - e_) * fejer(d_, t, q_);
    return weight / (qf * qf);
}

std::uint64_t OrderSampler::draw_residue(std::uint64_t m, Rng &rng) const {
    const double m2 = static_cast<double>(m) * static_cast<double>(m);
    const double lf = static_cast<double>(l_);
    if (l_ <= kTableThreshold) {
        return (m == d_ ? short_table_ : long_table_)->draw(rng);
    }
    const std::uint64_t v0 = std::max<std::uint64_t>(1, (l_ + 2 * m - 1) / (2 * m));
    const std::uint64_t dmax = l_ / 2;
    if (v0 >= dmax) {
        for (;;) {
            const std::uint64_t u = rng.below(l_);
            if (rng.uniform() * m2 < fejer(m, u, l_)) {
                return u;
            }
        }
    }
    // Flat top m^2 on |v| <= v0; tails (L^2/4) / (delta (delta - 1)) bound
    // 1 / sin^2(pi delta / L) for v0 < delta <= L/2.
    const double inv_v0 = 1.0 / static_cast<double>(v0);
    const double inv_d = 1.0 / static_cast<double>(dmax);
    const double plateau = static_cast<double>(2 * v0 + 1) * m2;
    const double tails = 0.5 * lf * lf * (inv_v0 - inv_d);
    for (;;) {
        std::uint64_t u = 0;
        double envelope = m2;
        if (rng.uniform() * (plateau + tails) < plateau) {
            const std::uint64_t j = rng.below(2 * v0 + 1);
            u = j >= v0 ? j - v0 : l_ - (v0 - j);
        } else {
            const double y = inv_v0 - rng.uniform() * (inv_v0 - inv_d);
            auto delta = static_cast<std::uint64_t>(std::ceil(1.0 / y));
            delta = std::clamp(delta, v0 + 1, dmax);
            const bool negative = rng.below(2) == 1;
            if (negative && 2 * delta == l_) {
                continue;
            }
            u = negative ? l_ - delta : delta;
            const double df = static_cast<double>(delta);
            envelope = 0.25 * lf * lf / (df * (df - 1.0));
        }
        if (rng.uniform() * envelope < fejer(m, u, l_)) {
            return u;
        }
    }
}

std::uint64_t OrderSampler::draw(Rng &rng) const {
    const double long_classes =
        static_cast<double>(e_) * static_cast<double>(d_ + 1) / static_cast<double>(q_);
    const std::uint64_t m = rng.uniform() < long_classes ? d_ + 1 : d_;
    const std::uint64_t u = draw_residue(m, rng);
    const std::uint64_t s0 = l_ == 1 ? 0 : nt::mul_mod(u, step_inverse_, l_);
    return s0 + rng.below(g_) * l_;
}

std::uint64_t order_distribution_sampler(const OrderFindingInstance &inst, std::uint64_t order,
                                         std::uint64_t rng_seed) {
    Rng rng(rng_seed);
    return OrderSampler(inst, order).draw(rng);
}

std::string to_string(ExecutionPath path) {
    switch (path) {
    case ExecutionPath::StateVector:
        return "state-vector";
    case ExecutionPath::Sampler:
        return "sampler";
    case ExecutionPath::ClassicalGcd:
        return "classical-gcd";
    }
    return "?";
}

namespace {

/// Order implied by one measured s, folding candidates into `lcm_acc`.
std::uint64_t infer_order(std::uint64_t s, const OrderFindingInstance &inst,
                          std::uint64_t &lcm_acc) {
    const std::uint64_t n = inst.modulus;
    const std::uint64_t a = inst.base;
    if (s == 0) {
        return a == 1 ? 1 : 0;
    }
    std::uint64_t largest = 1;
    for (const auto &c : nt::convergents(s, inst.source_dim())) {
        if (c.denominator >= n) {
            break;
        }
        if (c.denominator == 0) {
            continue;
        }
        largest = c.denominator;
        if (nt::pow_mod(a, c.denominator, n) == 1) {
            return nt::reduce_to_order(a, n, c.denominator);
        }
    }
    const std::uint64_t combined = nt::lcm(lcm_acc, largest);
    if (combined < n) {
        lcm_acc = combined;
        if (nt::pow_mod(a, lcm_acc, n) == 1) {
            return nt::reduce_to_order(a, n, lcm_acc);
        }
    }
    return 0;
}

} // namespace

AlgorithmReport<OrderAnswer> order_find_simulated(const OrderFindingInstance &inst,
                                                  std::uint64_t rng_seed,
                                                  const OrderFindingOptions &options) {
    AlgorithmReport<OrderAnswer> report;
    report.rng_seed = rng_seed;
    report.success = false;
    Rng rng(rng_seed);

    std::function<std::uint64_t()> measure;
    std::optional<DiscreteSampler> table;
    std::optional<OrderSampler> sampler;
    if (inst.total_qubits() <= options.max_qubits) {
        report.answer.path = ExecutionPath::StateVector;
        table.emplace(order_finding_probabilities(inst, options.max_qubits));
        measure = [&] { return table->draw(rng); };
    } else {
        report.answer.path = ExecutionPath::Sampler;
        sampler.emplace(inst, multiplicative_order(inst.base, inst.modulus));
        measure = [&] { return sampler->draw(rng); };
    }

    for (int attempt = 0; attempt <= options.max_restarts; ++attempt) {
        if (attempt > 0) {
            ++report.restarts;
        }
        std::uint64_t lcm_acc = 1;
        for (int i = 0; i < options.samples_per_attempt; ++i) {
            const std::uint64_t s = measure();
            ++report.shots;
            ++report.oracle_queries;
            const std::uint64_t r = infer_order(s, inst, lcm_acc);
            if (r != 0) {
                report.answer.order = r;
                report.success = true;
                return report;
            }
        }
    }
    return report;
}

void validate_shor_modulus(std::uint64_t modulus) {
    if (modulus < 3 || modulus % 2 == 0) {
        throw InvalidArgument("N must be odd and at least 3, got " + std::to_string(modulus));
    }
    if (nt::is_prime(modulus)) {
        throw InvalidArgument(std::to_string(modulus) + " is prime");
    }
    if (nt::is_prime_power(modulus)) {
        throw InvalidArgument(std::to_string(modulus) + " is a prime power");
    }
    if (modulus >= (std::uint64_t{1} << 31)) {
        throw InvalidArgument("N must be below 2^31");
    }
}

AlgorithmReport<FactorAnswer> shor_factor(std::uint64_t modulus, std::uint64_t rng_seed,
                                          const ShorOptions &options) {
    validate_shor_modulus(modulus);
    AlgorithmReport<FactorAnswer> report;
    report.rng_seed = rng_seed;
    report.success = false;
    Rng rng(rng_seed);
    const OrderFindingOptions of{options.max_qubits, options.max_restarts,
                                 options.samples_per_attempt};

    for (int attempt = 0; attempt <= options.max_restarts; ++attempt) {
        if (attempt > 0) {
            ++report.restarts;
        }
        const std::uint64_t a = 2 + rng.below(modulus - 2);
        report.answer.base = a;
        const std::uint64_t shared = std::gcd(a, modulus);
        if (shared != 1) {
            report.answer.p = std::min(shared, modulus / shared);
            report.answer.q = std::max(shared, modulus / shared);
            report.answer.order = 0;
            report.answer.path = ExecutionPath::ClassicalGcd;
            report.success = true;
            return report;
        }
        const auto inst = OrderFindingInstance::make(modulus, a);
        const auto found = order_find_simulated(inst, rng.next(), of);
        report.oracle_queries += found.oracle_queries;
        report.shots += found.shots;
        report.answer.path = found.answer.path;
        if (!found.success) {
            continue;
        }
        const std::uint64_t r = found.answer.order;
        report.answer.order = r;
        if (r % 2 == 1) {
            continue;
        }
        const std::uint64_t half = nt::pow_mod(a, r / 2, modulus);
        if (half == modulus - 1) {
            continue;
        }
        const std::uint64_t p = std::gcd(half + modulus - 1, modulus);
        report.answer.p = std::min(p, modulus / p);
        report.answer.q = std::max(p, modulus / p);
        report.success = true;
        return report;
    }
    return report;
}

} // namespace qsim
