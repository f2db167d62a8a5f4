#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "oracles.hpp"
#include "qsim/grover.hpp"
#include "qsim/oracle.hpp"

using namespace qsim;

namespace {

std::vector<std::uint64_t> random_marked(int n, std::uint64_t m, Rng &rng) {
    std::vector<std::uint64_t> all(std::size_t{1} << n);
    std::iota(all.begin(), all.end(), 0);
    for (std::size_t i = 0; i < m; ++i) {
        std::swap(all[i], all[i + rng.below(all.size() - i)]);
    }
    all.resize(m);
    return all;
}

std::shared_ptr<QueryOracle> phase(int n, const std::vector<std::uint64_t> &marked) {
    return QueryOracle::make(marked_items_function(n, marked), OracleMode::Phase);
}

} // namespace

TEST(Grover, FourItemsOneIteration) {
    const auto r = grover(phase(2, {2}), 1, GroverOptions{1, 100});
    EXPECT_NEAR(r.answer.success_probability, 1.0, 1e-12);
    EXPECT_EQ(r.answer.index, 2U);
    EXPECT_EQ(r.answer.empirical_success, 1.0);
    EXPECT_EQ(r.oracle_queries, 1U);
    EXPECT_EQ(r.shots, 100U);
}

TEST(Grover, TenQubitsTwentyFiveIterations) {
    EXPECT_EQ(grover_default_iterations(10, 1), 25);
    const auto r = grover(phase(10, {700}), 2);
    EXPECT_EQ(r.answer.iterations, 25);
    EXPECT_GE(r.answer.success_probability, 0.999);
    EXPECT_NEAR(r.answer.success_probability, oracle::grover_success(1024, 1, 25), 1e-9);
    EXPECT_EQ(r.oracle_queries, 25U);
}

TEST(Grover, HalfMarkedNeedsNoIterations) {
    Rng rng(41);
    const auto marked = random_marked(3, 4, rng);
    EXPECT_EQ(grover_default_iterations(3, 4), 1);
    const auto r = grover(phase(3, marked), 3, GroverOptions{0, 1});
    EXPECT_NEAR(r.answer.success_probability, 0.5, 1e-12);
    EXPECT_EQ(r.oracle_queries, 0U);
}

TEST(Grover, DiffusionIsInversionAboutMean) {
    for (int n = 1; n <= 5; ++n) {
        const Matrix d = circuit_unitary(grover_diffusion(n)).matrix();
        const int dim = 1 << n;
        const Matrix mean = Matrix::Constant(dim, dim, 2.0 / dim) - Matrix::Identity(dim, dim);
        EXPECT_LE(projective_distance(d, mean), 1e-12) << n;
    }
}

TEST(Grover, ExactCurveMatchesClosedForm) {
    Rng rng(42);
    for (int n = 1; n <= 6; ++n) {
        for (std::uint64_t m : {1, 2, 4}) {
            if (m >= (std::uint64_t{1} << n)) {
                continue;
            }
            const auto marked = random_marked(n, m, rng);
            const int jmax = 2 * std::max(1, grover_default_iterations(n, m));
            const auto curve = grover_success_curve(n, marked, jmax);
            ASSERT_EQ(curve.size(), static_cast<std::size_t>(jmax + 1));
            for (int j = 0; j <= jmax; ++j) {
                const double expected = oracle::grover_success(std::ldexp(1.0, n), m, j);
                EXPECT_NEAR(curve[j], expected, 1e-9) << n << " " << m << " " << j;
                EXPECT_NEAR(grover_success_closed_form(n, m, j), expected, 1e-12);
            }
        }
    }
}

TEST(Grover, EmpiricalSuccessTracksClosedForm) {
    Rng rng(43);
    for (int n = 1; n <= 6; ++n) {
        for (std::uint64_t m : {1, 2, 4}) {
            if (m >= (std::uint64_t{1} << n)) {
                continue;
            }
            const auto marked = random_marked(n, m, rng);
            const int jmax = 2 * std::max(1, grover_default_iterations(n, m));
            for (int j = 0; j <= jmax; ++j) {
                auto q = phase(n, marked);
                const auto r = grover(q, rng.next(), GroverOptions{j, 10000});
                EXPECT_NEAR(r.answer.empirical_success,
                            oracle::grover_success(std::ldexp(1.0, n), m, j), 0.02)
                    << n << " " << m << " " << j;
                EXPECT_EQ(r.oracle_queries, static_cast<std::uint64_t>(j));
                EXPECT_EQ(q->count(), static_cast<std::uint64_t>(j));
            }
        }
    }
}

TEST(Grover, ScalingIsSquareRoot) {
    const auto fit = grover_scaling(4, 14);
    ASSERT_EQ(fit.points.size(), 11U);
    EXPECT_NEAR(fit.exponent, 0.5, 0.05);
    EXPECT_GE(fit.coefficient, 0.7);
    EXPECT_LE(fit.coefficient, 0.9);
    for (const auto &p : fit.points) {
        EXPECT_GE(p.best_success, 0.95);
    }
}
