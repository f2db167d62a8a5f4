#include "qsim/oracle_algorithms.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "qsim/errors.hpp"
#include "qsim/gf2.hpp"

namespace qsim {

namespace {

int input_bits(const QueryOracle &oracle) { return oracle.function().num_inputs(); }

std::vector<int> register_of(int first, int count) {
    std::vector<int> qs(static_cast<std::size_t>(count));
    std::iota(qs.begin(), qs.end(), first);
    return qs;
}

/// Runs `c` on |0...0> and draws one outcome of the first n qubits.
std::uint64_t run_and_measure(const Circuit &c, int n, Rng &rng, int max_qubits) {
    StateVector s(c.num_qubits(), max_qubits);
    apply_in_place(c, s);
    const auto qs = register_of(0, n);
    const auto probs = marginal_probabilities(s, qs);
    return DiscreteSampler(probs).draw(rng);
}

Circuit kickback_circuit(const std::shared_ptr<QueryOracle> &oracle) {
    if (oracle->function().num_outputs() != 1) {
        throw ArityError("oracle must have a single output bit");
    }
    const int n = input_bits(*oracle);
    const bool bitflip = oracle->mode() == OracleMode::BitFlip;
    Circuit c(bitflip ? n + 1 : n);
    if (bitflip) {
        c.add(Gate::x(n));
        c.add(Gate::h(n));
    }
    for (int q = 0; q < n; ++q) {
        c.add(Gate::h(q));
    }
    c.add(Gate::oracle(oracle, register_of(0, oracle->num_qubits())));
    for (int q = 0; q < n; ++q) {
        c.add(Gate::h(q));
    }
    return c;
}

} // namespace

void validate_dj_promise(const BooleanFunction &f) {
    if (f.num_outputs() != 1) {
        throw PromiseViolation("constant-or-balanced promise needs one output bit");
    }
    const auto t = f.table();
    const auto ones = static_cast<std::size_t>(std::count(t.begin(), t.end(), 1U));
    if (ones != 0 && ones != t.size() && 2 * ones != t.size()) {
        throw PromiseViolation("function is neither constant nor balanced (" +
                               std::to_string(ones) + " of " + std::to_string(t.size()) +
                               " inputs map to 1)");
    }
}

Circuit deutsch_jozsa_circuit(std::shared_ptr<QueryOracle> oracle) {
    Circuit c = kickback_circuit(oracle);
    c.set_name("deutsch_jozsa");
    return c;
}

AlgorithmReport<DjAnswer> deutsch_jozsa(std::shared_ptr<QueryOracle> oracle,
                                        std::uint64_t rng_seed, int max_qubits) {
    const Circuit c = deutsch_jozsa_circuit(oracle);
    const std::uint64_t before = oracle->count();
    Rng rng(rng_seed);
    const std::uint64_t y = run_and_measure(c, input_bits(*oracle), rng, max_qubits);
    AlgorithmReport<DjAnswer> report;
    report.answer = y == 0 ? DjAnswer::Constant : DjAnswer::Balanced;
    report.oracle_queries = oracle->count() - before;
    report.shots = 1;
    report.rng_seed = rng_seed;
    return report;
}

AlgorithmReport<std::uint64_t> bernstein_vazirani(std::shared_ptr<QueryOracle> oracle,
                                                  std::uint64_t rng_seed, int max_qubits) {
    Circuit c = kickback_circuit(oracle);
    c.set_name("bernstein_vazirani");
    const std::uint64_t before = oracle->count();
    Rng rng(rng_seed);
    AlgorithmReport<std::uint64_t> report;
    report.answer = run_and_measure(c, input_bits(*oracle), rng, max_qubits);
    report.oracle_queries = oracle->count() - before;
    report.shots = 1;
    report.rng_seed = rng_seed;
    return report;
}

AlgorithmReport<std::uint64_t> bernstein_vazirani_classical(QueryOracle &oracle) {
    const int n = input_bits(oracle);
    const std::uint64_t before = oracle.count();
    AlgorithmReport<std::uint64_t> report;
    for (int i = 0; i < n; ++i) {
        const std::uint64_t e = std::uint64_t{1} << (n - 1 - i);
        if (oracle.query(e) & 1U) {
            report.answer |= e;
        }
    }
    report.oracle_queries = oracle.count() - before;
    return report;
}

void validate_simon_promise(const BooleanFunction &f, std::uint64_t s) {
    const auto t = f.table();
    if (s >= t.size()) {
        throw PromiseViolation("secret string wider than the input register");
    }
    std::set<std::uint32_t> values(t.begin(), t.end());
    const std::size_t expected = s == 0 ? t.size() : t.size() / 2;
    if (values.size() != expected) {
        throw PromiseViolation("function has " + std::to_string(values.size()) +
                               " distinct values, promise requires " +
                               std::to_string(expected));
    }
    for (std::uint64_t x = 0; x < t.size(); ++x) {
        if (t[x] != t[x ^ s]) {
            throw PromiseViolation("f(x) != f(x xor s) at x = " + std::to_string(x));
        }
    }
}

BooleanFunction random_simon_function(int n, std::uint64_t s, Rng &rng) {
    if (n < 1 || n > kMaxTruthTableInputs) {
        throw ArityError("Simon instance width out of range");
    }
    const std::size_t size = std::size_t{1} << n;
    if (s >= size) {
        throw InvalidArgument("secret string wider than the input register");
    }
    std::vector<std::uint32_t> perm(size);
    std::iota(perm.begin(), perm.end(), 0U);
    for (std::size_t i = size - 1; i > 0; --i) {
        std::swap(perm[i], perm[rng.below(i + 1)]);
    }
    return BooleanFunction::from_callable(n, n, [&](std::uint64_t x) {
        return perm[std::min(x, x ^ s)];
    });
}

BooleanFunction random_balanced_function(int n, Rng &rng) {
    if (n < 1 || n > kMaxTruthTableInputs) {
        throw ArityError("balanced function width out of range");
    }
    const std::size_t size = std::size_t{1} << n;
    std::vector<std::uint32_t> table(size, 0U);
    std::fill(table.begin() + static_cast<std::ptrdiff_t>(size / 2), table.end(), 1U);
    for (std::size_t i = size - 1; i > 0; --i) {
        std::swap(table[i], table[rng.below(i + 1)]);
    }
    return {n, 1, std::move(table)};
}

AlgorithmReport<SimonAnswer> simon(std::shared_ptr<QueryOracle> oracle, std::uint64_t rng_seed,
                                   const SimonOptions &options) {
    if (oracle->mode() != OracleMode::BitFlip) {
        throw InvalidArgument("Simon's algorithm needs a bit-flip oracle");
    }
    const int n = input_bits(*oracle);
    if (n < 1) {
        throw ArityError("Simon's algorithm needs at least one input bit");
    }
    const int cap = options.max_iterations > 0 ? options.max_iterations : 20 * n;

    Circuit c(oracle->num_qubits(), "simon");
    for (int q = 0; q < n; ++q) {
        c.add(Gate::h(q));
    }
    c.add(Gate::oracle(oracle, register_of(0, oracle->num_qubits())));
    for (int q = 0; q < n; ++q) {
        c.add(Gate::h(q));
    }

    const std::uint64_t before = oracle->count();
    Rng rng(rng_seed);
    AlgorithmReport<SimonAnswer> report;
    report.rng_seed = rng_seed;

    std::vector<std::uint64_t> rows;
    bool candidate_checked = false;
    const auto try_candidate = [&]() {
        if (candidate_checked || gf2_rank(rows, n) != n - 1) {
            return false;
        }
        candidate_checked = true;
        const std::uint64_t s = gf2_solve(rows, n).front();
        if (oracle->query(0) == oracle->query(s)) {
            report.answer.s = s;
            return true;
        }
        return false;
    };

    report.success = try_candidate();
    for (int it = 1; !report.success && it <= cap; ++it) {
        rows.push_back(run_and_measure(c, n, rng, options.max_qubits));
        report.answer.iterations = it;
        ++report.shots;
        if (gf2_rank(rows, n) == n) {
            report.answer.s = 0;
            report.success = true;
        } else {
            report.success = try_candidate();
        }
    }
    report.oracle_queries = oracle->count() - before;
    return report;
}

} // namespace qsim
