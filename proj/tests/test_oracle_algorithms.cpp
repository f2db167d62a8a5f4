#include <gtest/gtest.h>

#include <set>

#include "qsim/errors.hpp"
#include "qsim/gf2.hpp"
#include "qsim/oracle_algorithms.hpp"

using namespace qsim;

namespace {

std::shared_ptr<QueryOracle> flip(BooleanFunction f) {
    return QueryOracle::make(std::move(f), OracleMode::BitFlip);
}

int dot(std::uint64_t a, std::uint64_t b) { return __builtin_popcountll(a & b) & 1; }

/// Every single-output table on n inputs with exactly n_ones ones.
std::vector<BooleanFunction> tables_with_weight(int n, int n_ones) {
    std::vector<BooleanFunction> out;
    const std::uint64_t rows = std::uint64_t{1} << n;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << rows); ++bits) {
        if (__builtin_popcountll(bits) == n_ones) {
            out.push_back(BooleanFunction::from_callable(
                n, 1, [bits](std::uint64_t x) { return static_cast<std::uint32_t>((bits >> x) & 1U); }));
        }
    }
    return out;
}

} // namespace

TEST(DeutschJozsa, Examples) {
    const auto constant = deutsch_jozsa(flip(BooleanFunction::constant(3, 1)));
    EXPECT_EQ(constant.answer, DjAnswer::Constant);
    EXPECT_EQ(constant.oracle_queries, 1U);

    const auto parity = BooleanFunction::parity(3);
    EXPECT_NO_THROW(validate_dj_promise(parity));
    const auto balanced = deutsch_jozsa(flip(parity));
    EXPECT_EQ(balanced.answer, DjAnswer::Balanced);
    EXPECT_EQ(balanced.oracle_queries, 1U);
}

TEST(DeutschJozsa, AllTwoBitBalancedTables) {
    const auto tables = tables_with_weight(2, 2);
    ASSERT_EQ(tables.size(), 6U);
    for (const auto &f : tables) {
        for (auto mode : {OracleMode::BitFlip, OracleMode::Phase}) {
            const auto r = deutsch_jozsa(QueryOracle::make(f, mode));
            EXPECT_EQ(r.answer, DjAnswer::Balanced);
            EXPECT_EQ(r.oracle_queries, 1U);
        }
    }
}

TEST(DeutschJozsa, ExhaustiveUpToFourBits) {
    for (int n = 1; n <= 4; ++n) {
        const int rows = 1 << n;
        for (int weight : {0, rows / 2, rows}) {
            const auto expected = weight == rows / 2 ? DjAnswer::Balanced : DjAnswer::Constant;
            for (const auto &f : tables_with_weight(n, weight)) {
                const auto r = deutsch_jozsa(flip(f), 5);
                ASSERT_EQ(r.answer, expected);
                ASSERT_EQ(r.oracle_queries, 1U);
            }
        }
    }
}

TEST(DeutschJozsa, PromiseValidator) {
    EXPECT_THROW(validate_dj_promise(BooleanFunction(2, 1, {1, 0, 0, 0})), PromiseViolation);
    EXPECT_NO_THROW(validate_dj_promise(BooleanFunction::constant(4, 0)));
    Rng rng(31);
    for (int n = 1; n <= 8; ++n) {
        EXPECT_NO_THROW(validate_dj_promise(random_balanced_function(n, rng)));
    }
}

TEST(BernsteinVazirani, Examples) {
    const auto zero = bernstein_vazirani(flip(BooleanFunction::dot_product(3, 0)));
    EXPECT_EQ(zero.answer, 0U);
    const auto h = bernstein_vazirani(flip(BooleanFunction::dot_product(3, 0b101)));
    EXPECT_EQ(h.answer, 0b101U);
    EXPECT_EQ(h.oracle_queries, 1U);
    QueryOracle classical(BooleanFunction::dot_product(3, 0b101), OracleMode::BitFlip);
    const auto c = bernstein_vazirani_classical(classical);
    EXPECT_EQ(c.answer, 0b101U);
    EXPECT_EQ(c.oracle_queries, 3U);
    EXPECT_EQ(classical.count(), 3U);
}

TEST(BernsteinVazirani, ExhaustiveFourBits) {
    for (std::uint64_t h = 0; h < 16; ++h) {
        for (auto mode : {OracleMode::BitFlip, OracleMode::Phase}) {
            auto q = QueryOracle::make(BooleanFunction::dot_product(4, h), mode);
            const auto r = bernstein_vazirani(q, h);
            EXPECT_EQ(r.answer, h);
            EXPECT_EQ(r.oracle_queries, 1U);
            EXPECT_EQ(q->count(), 1U);
        }
    }
}

TEST(Gf2, Examples) {
    EXPECT_EQ(gf2_solve({}, 2).size(), 2U);
    const std::vector<std::uint64_t> rows{0b10};
    EXPECT_EQ(gf2_solve(rows, 2), std::vector<std::uint64_t>{0b01});
    const std::vector<std::uint64_t> three{0b1100, 0b0110, 0b0011};
    const auto basis = gf2_solve(three, 4);
    ASSERT_EQ(basis.size(), 1U);
    EXPECT_EQ(basis[0], 0b1111U);
    EXPECT_EQ(gf2_rank(three, 4), 3);
}

TEST(Gf2, NullspaceMatchesEnumeration) {
    Rng rng(32);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(8));
        std::vector<std::uint64_t> rows(rng.below(10));
        for (auto &r : rows) {
            r = rng.below(std::uint64_t{1} << n);
        }
        std::set<std::uint64_t> null;
        for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y) {
            bool ok = true;
            for (auto r : rows) {
                ok = ok && dot(r, y) == 0;
            }
            if (ok) {
                null.insert(y);
            }
        }
        const auto basis = gf2_solve(rows, n);
        ASSERT_EQ(std::size_t{1} << basis.size(), null.size());
        ASSERT_EQ(gf2_rank(rows, n), n - static_cast<int>(basis.size()));
        for (auto b : basis) {
            ASSERT_TRUE(null.count(b));
        }
        // Spans: every subset sum is distinct, so the count above forces equality.
        std::set<std::uint64_t> span{0};
        for (auto b : basis) {
            std::set<std::uint64_t> next = span;
            for (auto v : span) {
                next.insert(v ^ b);
            }
            span = next;
        }
        ASSERT_EQ(span, null);
    }
}

TEST(Simon, InjectiveFunction) {
    const auto r = simon(flip(BooleanFunction(2, 2, {0, 1, 2, 3})), 3);
    EXPECT_TRUE(r.success);
    EXPECT_EQ(r.answer.s, 0U);
    // The rank passes n - 1 on its way to n, so the candidate check always runs.
    EXPECT_EQ(r.oracle_queries, static_cast<std::uint64_t>(r.answer.iterations) + 2);
}

TEST(Simon, TwoBitExample) {
    const BooleanFunction f(2, 1, {0, 1, 1, 0});
    EXPECT_NO_THROW(validate_simon_promise(f, 0b11));
    auto q = flip(f);
    const auto r = simon(q, 4);
    EXPECT_TRUE(r.success);
    EXPECT_EQ(r.answer.s, 0b11U);
    EXPECT_EQ(r.oracle_queries, static_cast<std::uint64_t>(r.answer.iterations) + 2);
    EXPECT_EQ(q->count(), r.oracle_queries);
}

TEST(Simon, PromiseValidator) {
    EXPECT_THROW(validate_simon_promise(BooleanFunction(2, 1, {0, 1, 1, 0}), 0b01),
                 PromiseViolation);
    EXPECT_THROW(validate_simon_promise(BooleanFunction(2, 2, {0, 0, 1, 2}), 0),
                 PromiseViolation);
}

TEST(Simon, RandomFiveBitInstances) {
    Rng rng(7);
    const int n = 5;
    double total_iterations = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::uint64_t s = rng.below(32);
        const auto f = random_simon_function(n, s, rng);
        validate_simon_promise(f, s);
        auto q = flip(f);
        const auto r = simon(q, rng.next());
        ASSERT_TRUE(r.success);
        ASSERT_EQ(r.answer.s, s);
        ASSERT_EQ(q->count(), r.oracle_queries);
        ASSERT_EQ(r.oracle_queries,
                  static_cast<std::uint64_t>(r.answer.iterations) + 2);
        total_iterations += r.answer.iterations;
    }
    EXPECT_LE(total_iterations / 100.0, 3.0 * n);
}

TEST(Simon, IterationCapReportsFailure) {
    SimonOptions opts;
    opts.max_iterations = 1;
    Rng rng(8);
    const auto r = simon(flip(random_simon_function(6, 0b101101, rng)), 9, opts);
    EXPECT_FALSE(r.success);
    EXPECT_EQ(r.answer.iterations, 1);
}
