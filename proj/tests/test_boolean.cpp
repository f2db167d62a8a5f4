#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "qsim/boolean.hpp"
#include "qsim/circuit.hpp"
#include "qsim/errors.hpp"
#include "qsim/oracle.hpp"

using namespace qsim;

namespace {

/// All 2^(2^n) single-output functions on n inputs, or `limit` random ones.
std::vector<BooleanFunction> functions_on(int n, Rng &rng, std::size_t limit) {
    const std::size_t rows = std::size_t{1} << n;
    std::vector<BooleanFunction> out;
    if (rows < 6) {
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << rows); ++bits) {
            out.push_back(BooleanFunction::from_callable(
                n, 1, [bits](std::uint64_t x) { return static_cast<std::uint32_t>((bits >> x) & 1U); }));
        }
        return out;
    }
    for (std::size_t i = 0; i < limit; ++i) {
        std::vector<std::uint32_t> t(rows);
        for (auto &v : t) {
            v = static_cast<std::uint32_t>(rng.below(2));
        }
        out.emplace_back(n, 1, std::move(t));
    }
    return out;
}

Matrix diag(std::initializer_list<double> d) {
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
    Eigen::Index i = 0;
    for (double v : d) {
        m(i, i) = v;
        ++i;
    }
    return m;
}

} // namespace

TEST(BooleanFunction, Validation) {
    EXPECT_THROW(BooleanFunction(1, 1, {0, 1, 0}), DimensionError);
    EXPECT_THROW(BooleanFunction(1, 1, {0, 2}), InvalidArgument);
    EXPECT_THROW(BooleanFunction(21, 1, {}), ArityError);
    EXPECT_THROW(BooleanFunction(1, 0, {0, 0}), ArityError);
}

TEST(ReversibleEmbed, Not) {
    const auto f = reversible_embed(BooleanFunction(1, 1, {1, 0}));
    for (std::uint64_t b = 0; b < 2; ++b) {
        for (std::uint64_t bp = 0; bp < 2; ++bp) {
            EXPECT_EQ(f((b << 1) | bp), (b << 1) | (bp ^ b ^ 1U));
        }
    }
    EXPECT_TRUE(is_permutation(f));
}

TEST(ReversibleEmbed, AndIsToffoli) {
    const auto f = reversible_embed(BooleanFunction(2, 1, {0, 0, 0, 1}));
    const std::vector<std::uint32_t> ccnot{0, 1, 2, 3, 4, 5, 7, 6};
    EXPECT_EQ(std::vector<std::uint32_t>(f.table().begin(), f.table().end()), ccnot);
}

TEST(ReversibleEmbed, ZeroIsIdentity) {
    const auto f = reversible_embed(BooleanFunction::constant(3, 0));
    for (std::uint64_t x = 0; x < 16; ++x) {
        EXPECT_EQ(f(x), x);
    }
}

TEST(ReversibleEmbed, RejectsMultiOutput) {
    EXPECT_THROW(reversible_embed(BooleanFunction(1, 2, {0, 3})), ArityError);
}

TEST(ReversibleEmbed, PermutationAndInvolution) {
    Rng rng(11);
    for (int n = 0; n <= 6; ++n) {
        for (const auto &f : functions_on(n, rng, 200)) {
            const auto e = reversible_embed(f);
            ASSERT_TRUE(is_permutation(e));
            for (std::uint64_t x = 0; x < e.table().size(); ++x) {
                ASSERT_EQ(e(e(x)), x);
                ASSERT_EQ(e(x) >> 1, x >> 1);
                ASSERT_EQ(e(x) & 1U, (x & 1U) ^ f(x >> 1));
            }
        }
    }
}

TEST(IsPermutation, Examples) {
    EXPECT_TRUE(is_permutation(BooleanFunction(2, 2, {0, 1, 2, 3})));
    EXPECT_FALSE(is_permutation(BooleanFunction(1, 1, {0, 0})));
    EXPECT_THROW(is_permutation(BooleanFunction(1, 2, {0, 0})), ArityError);
}

TEST(BitflipOracle, IdentityIsCnot) {
    const auto u = circuit_unitary(bitflip_oracle(BooleanFunction(1, 1, {0, 1})));
    EXPECT_LE(spectral_distance(u.matrix(), embed_gate(Gate::cnot(0, 1), 2)), 1e-15);
}

TEST(BitflipOracle, AndIsToffoli) {
    const auto u = circuit_unitary(bitflip_oracle(BooleanFunction(2, 1, {0, 0, 0, 1})));
    EXPECT_LE(spectral_distance(u.matrix(), embed_gate(Gate::ccnot(0, 1, 2), 3)), 1e-15);
}

TEST(BitflipOracle, XorOnAllBasisStates) {
    const Circuit c = bitflip_oracle(BooleanFunction(2, 1, {0, 1, 1, 0}));
    ASSERT_EQ(c.num_qubits(), 3);
    for (std::uint64_t i = 0; i < 8; ++i) {
        const int x = oracle::bit(i, 3, 0);
        const int y = oracle::bit(i, 3, 1);
        const int b = oracle::bit(i, 3, 2);
        const std::uint64_t expected = (i & 0b110U) | static_cast<std::uint64_t>(b ^ x ^ y);
        const auto out = apply(c, StateVector::basis(3, i));
        EXPECT_NEAR(std::norm(out[expected]), 1.0, 1e-15) << i;
    }
}

TEST(BitflipOracle, AppliedTwiceIsIdentity) {
    Rng rng(12);
    for (int n_in = 1; n_in <= 6; ++n_in) {
        for (int n_out = 1; n_in + n_out <= 8; ++n_out) {
            std::vector<std::uint32_t> t(std::size_t{1} << n_in);
            for (auto &v : t) {
                v = static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << n_out));
            }
            const Circuit once = bitflip_oracle(BooleanFunction(n_in, n_out, t));
            Circuit twice(once.num_qubits());
            twice.append(once).append(once);
            const int n = n_in + n_out;
            for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
                const auto out = apply(twice, StateVector::basis(n, i));
                ASSERT_NEAR(std::norm(out[i]), 1.0, 1e-15);
            }
        }
    }
}

TEST(BitflipOracle, CapacityChecked) {
    EXPECT_THROW(bitflip_oracle(BooleanFunction::parity(4), 4), CapacityError);
}

TEST(PhaseOracle, Examples) {
    EXPECT_LE(spectral_distance(circuit_unitary(phase_oracle(BooleanFunction::constant(2, 0))).matrix(),
                                Matrix::Identity(4, 4)),
              1e-15);
    EXPECT_LE(spectral_distance(circuit_unitary(phase_oracle(BooleanFunction(2, 1, {0, 0, 0, 1}))).matrix(),
                                diag({1, 1, 1, -1})),
              1e-15);
    const Matrix zz = embed_gate(Gate::z(0), 2) * embed_gate(Gate::z(1), 2);
    const Matrix parity = circuit_unitary(phase_oracle(BooleanFunction::parity(2))).matrix();
    EXPECT_LE(spectral_distance(parity, diag({1, -1, -1, 1})), 1e-15);
    EXPECT_LE(spectral_distance(parity, zz), 1e-15);
}

TEST(PhaseOracle, RejectsMultiOutput) {
    EXPECT_THROW(phase_oracle(BooleanFunction(1, 2, {0, 3})), ArityError);
}

TEST(PhaseOracle, KickbackEquivalence) {
    Rng rng(13);
    const double r = 1.0 / std::sqrt(2.0);
    for (int n = 1; n <= 4; ++n) {
        for (const auto &f : functions_on(n, rng, 64)) {
            const Circuit phase = phase_oracle(f);
            const Circuit flip = bitflip_oracle(f);
            for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
                const auto minus = StateVector::from_amplitudes({r, -r});
                const auto kicked = apply(flip, tensor(StateVector::basis(n, x), minus));
                const auto phased = tensor(apply(phase, StateVector::basis(n, x)), minus);
                double dist = 0.0;
                for (std::size_t i = 0; i < kicked.dim(); ++i) {
                    dist += std::norm(kicked[i] - phased[i]);
                }
                ASSERT_LE(std::sqrt(dist), 1e-10);
            }
        }
    }
}

TEST(QueryOracle, CountsEveryApplication) {
    auto q = QueryOracle::make(BooleanFunction::parity(3), OracleMode::BitFlip);
    const Circuit once = bitflip_oracle(q);
    Circuit c(4);
    for (int i = 0; i < 5; ++i) {
        c.append(once);
        c.add(Gate::h(i % 4));
    }
    EXPECT_EQ(c.oracle_gate_count(), 5U);
    StateVector s(4);
    apply_in_place(c, s);
    EXPECT_EQ(q->count(), 5U);
    apply_in_place(c, s);
    EXPECT_EQ(q->count(), 10U);
    q->query(3);
    EXPECT_EQ(q->count(), 11U);
    EXPECT_THROW(q->query(8), InvalidIndexError);
    EXPECT_EQ(q->count(), 11U);
}

TEST(Nand, Examples) {
    EXPECT_EQ(nand_compose(NandTree::parse("NAND(a,a)"), 1), BooleanFunction(1, 1, {1, 0}));
    EXPECT_EQ(nand_compose(NandTree::parse("NAND(NAND(a,b),NAND(a,b))"), 2),
              BooleanFunction(2, 1, {0, 0, 0, 1}));
    EXPECT_EQ(nand_compose(NandTree::parse("NAND(NAND(a,a),NAND(b,b))"), 2),
              BooleanFunction(2, 1, {0, 1, 1, 1}));
    EXPECT_EQ(nand_compose(NandTree::parse("NAND(x0, x2)"), 3),
              BooleanFunction(3, 1, {1, 1, 1, 1, 1, 0, 1, 0}));
}

TEST(Nand, BuiltTreesMatchParsed) {
    const auto a = NandTree::input(0);
    const auto b = NandTree::input(1);
    const auto t = NandTree::nand(NandTree::nand(a, b), NandTree::nand(a, b));
    EXPECT_EQ(t.to_string(), "NAND(NAND(x0,x1),NAND(x0,x1))");
    EXPECT_EQ(nand_compose(t, 2), nand_compose(NandTree::parse(t.to_string()), 2));
}

TEST(Nand, Malformed) {
    EXPECT_THROW(NandTree::parse("NAND(a)"), MalformedTreeError);
    EXPECT_THROW(NandTree::parse("NAND(a,b"), MalformedTreeError);
    EXPECT_THROW(NandTree::parse("AND(a,b)"), MalformedTreeError);
    EXPECT_THROW(NandTree::parse("NAND(a,b) x"), MalformedTreeError);
    EXPECT_THROW(nand_compose(NandTree::parse("NAND(a,c)"), 2), MalformedTreeError);
    EXPECT_THROW(nand_compose(NandTree::nand(NandTree::input(0), NandTree()), 1),
                 MalformedTreeError);
}

TEST(TruthTableText, RoundTripAndErrors) {
    Rng rng(14);
    std::vector<std::uint32_t> t(32);
    for (auto &v : t) {
        v = static_cast<std::uint32_t>(rng.below(8));
    }
    const BooleanFunction f(5, 3, t);
    std::istringstream in("# comment\n" + format_truth_table(f));
    EXPECT_EQ(parse_truth_table(in), f);

    const auto bad = [](const std::string &text) {
        std::istringstream s(text);
        return parse_truth_table(s);
    };
    EXPECT_THROW(bad(""), ParseError);
    EXPECT_THROW(bad("2 1\n0 1 1\n"), ParseError);
    EXPECT_THROW(bad("2 1\n0 1 1 0 1\n"), ParseError);
    EXPECT_THROW(bad("1 1\n0 x\n"), ParseError);
    EXPECT_THROW(bad("1 1\n0 2\n"), InvalidArgument);
    EXPECT_THROW(read_truth_table("/nonexistent/table.txt"), ParseError);
}
