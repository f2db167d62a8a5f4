#include "qsim/grover.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qsim/errors.hpp"

namespace qsim {

namespace {

void check_marked_count(int num_qubits, std::uint64_t num_marked) {
    if (num_qubits < 1 || num_qubits > 62) {
        throw InvalidArgument("search register width out of range");
    }
    const std::uint64_t n_items = std::uint64_t{1} << num_qubits;
    if (num_marked < 1 || num_marked >= n_items) {
        throw InvalidArgument("marked count must satisfy 1 <= M < N, got M = " +
                              std::to_string(num_marked));
    }
}

double marked_mass(const StateVector &s, const BooleanFunction &f) {
    double p = 0.0;
    const auto a = s.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (f(i) & 1U) {
            p += std::norm(a[i]);
        }
    }
    return p;
}

} // namespace

int grover_default_iterations(int num_qubits, std::uint64_t num_marked) {
    check_marked_count(num_qubits, num_marked);
    const double ratio = std::ldexp(1.0, num_qubits) / static_cast<double>(num_marked);
    return static_cast<int>(std::floor(kPi / 4.0 * std::sqrt(ratio)));
}

double grover_success_closed_form(int num_qubits, std::uint64_t num_marked, int iterations) {
    check_marked_count(num_qubits, num_marked);
    const double theta =
        std::asin(std::sqrt(static_cast<double>(num_marked) / std::ldexp(1.0, num_qubits)));
    const double s = std::sin((2.0 * iterations + 1.0) * theta);
    return s * s;
}

BooleanFunction marked_items_function(int num_qubits, const std::vector<std::uint64_t> &marked) {
    if (num_qubits < 1 || num_qubits > kMaxTruthTableInputs) {
        throw ArityError("search register width out of range");
    }
    std::vector<std::uint32_t> table(std::size_t{1} << num_qubits, 0U);
    for (auto m : marked) {
        if (m >= table.size()) {
            throw InvalidIndexError("marked item " + std::to_string(m) + " outside 2^" +
                                    std::to_string(num_qubits));
        }
        table[m] = 1U;
    }
    return {num_qubits, 1, std::move(table)};
}

Circuit grover_diffusion(int num_qubits) {
    Circuit c(num_qubits, "diffusion");
    std::vector<int> all(static_cast<std::size_t>(num_qubits));
    std::iota(all.begin(), all.end(), 0);
    for (int q : all) {
        c.add(Gate::h(q));
    }
    for (int q : all) {
        c.add(Gate::x(q));
    }
    c.add(Gate::mcz(all));
    for (int q : all) {
        c.add(Gate::x(q));
    }
    for (int q : all) {
        c.add(Gate::h(q));
    }
    return c;
}

Circuit grover_circuit(std::shared_ptr<QueryOracle> oracle, int iterations) {
    if (oracle->mode() != OracleMode::Phase) {
        throw InvalidArgument("Grover search needs a phase oracle");
    }
    if (iterations < 0) {
        throw InvalidArgument("iteration count must be nonnegative");
    }
    const int n = oracle->num_qubits();
    Circuit c(n, "grover");
    for (int q = 0; q < n; ++q) {
        c.add(Gate::h(q));
    }
    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    const Circuit diffusion = grover_diffusion(n);
    for (int j = 0; j < iterations; ++j) {
        c.add(Gate::oracle(oracle, all));
        c.append(diffusion);
    }
    return c;
}

AlgorithmReport<GroverAnswer> grover(std::shared_ptr<QueryOracle> oracle, std::uint64_t rng_seed,
                                     const GroverOptions &options) {
    const auto &f = oracle->function();
    const int n = f.num_inputs();
    const auto table = f.table();
    const auto m = static_cast<std::uint64_t>(std::count(table.begin(), table.end(), 1U));
    check_marked_count(n, m);
    check_capacity(n, options.max_qubits, "grover");
    if (options.shots < 1) {
        throw InvalidArgument("shots must be at least 1");
    }
    const int iterations = options.iterations.value_or(grover_default_iterations(n, m));
    const Circuit c = grover_circuit(oracle, iterations);

    const std::uint64_t before = oracle->count();
    StateVector s(n, options.max_qubits);
    apply_in_place(c, s);

    AlgorithmReport<GroverAnswer> report;
    report.rng_seed = rng_seed;
    report.shots = options.shots;
    report.answer.iterations = iterations;
    report.answer.success_probability = marked_mass(s, f);

    std::vector<double> probs(s.dim());
    for (std::size_t i = 0; i < probs.size(); ++i) {
        probs[i] = std::norm(s[i]);
    }
    const DiscreteSampler sampler(probs);
    Rng rng(rng_seed);
    std::uint64_t hits = 0;
    for (std::uint64_t shot = 0; shot < options.shots; ++shot) {
        const std::uint64_t x = sampler.draw(rng);
        if (shot == 0) {
            report.answer.index = x;
        }
        hits += f(x) & 1U;
    }
    report.answer.empirical_success =
        static_cast<double>(hits) / static_cast<double>(options.shots);
    report.oracle_queries = oracle->count() - before;
    report.success = (f(report.answer.index) & 1U) != 0;
    return report;
}

std::vector<double> grover_success_curve(int num_qubits, const std::vector<std::uint64_t> &marked,
                                         int max_iterations) {
    auto oracle = QueryOracle::make(marked_items_function(num_qubits, marked), OracleMode::Phase);
    const auto &f = oracle->function();
    Circuit round(num_qubits);
    std::vector<int> all(static_cast<std::size_t>(num_qubits));
    std::iota(all.begin(), all.end(), 0);
    round.add(Gate::oracle(oracle, all));
    round.append(grover_diffusion(num_qubits));

    StateVector s(num_qubits);
    apply_in_place(grover_circuit(oracle, 0), s);
    std::vector<double> curve{marked_mass(s, f)};
    for (int j = 1; j <= max_iterations; ++j) {
        apply_in_place(round, s);
        curve.push_back(marked_mass(s, f));
    }
    return curve;
}

GroverScalingFit grover_scaling(int min_qubits, int max_qubits) {
    if (min_qubits < 1 || max_qubits < min_qubits) {
        throw InvalidArgument("bad qubit range for the scaling fit");
    }
    GroverScalingFit fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, root_sq = 0, root_j = 0;
    for (int n = min_qubits; n <= max_qubits; ++n) {
        const int horizon = 2 * grover_default_iterations(n, 1) + 2;
        const auto curve = grover_success_curve(n, {0}, horizon);
        const auto best = std::max_element(curve.begin(), curve.end());
        GroverScalingPoint p{n, static_cast<int>(best - curve.begin()), *best};
        fit.points.push_back(p);
        const double big_n = std::ldexp(1.0, n);
        const double x = std::log(big_n);
        const double y = std::log(std::max(1, p.best_iterations));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        root_sq += big_n;
        root_j += std::sqrt(big_n) * p.best_iterations;
    }
    const double k = static_cast<double>(fit.points.size());
    const double denom = k * sxx - sx * sx;
    fit.exponent = denom > 0 ? (k * sxy - sx * sy) / denom : 0.0;
    fit.coefficient = root_j / root_sq;
    return fit;
}

} // namespace qsim
