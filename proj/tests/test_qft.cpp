#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qsim/circuit.hpp"
#include "qsim/errors.hpp"
#include "qsim/qft.hpp"

using namespace qsim;

namespace {

Vector to_vector(const StateVector &s) {
    Vector v(static_cast<Eigen::Index>(s.dim()));
    for (std::size_t i = 0; i < s.dim(); ++i) {
        v(static_cast<Eigen::Index>(i)) = s[i];
    }
    return v;
}

} // namespace

TEST(Qft, OneQubitIsHadamard) {
    EXPECT_LE(spectral_distance(circuit_unitary(qft_circuit(1)).matrix(),
                                embed_gate(Gate::h(0), 1)),
              1e-15);
    EXPECT_LE(spectral_distance(circuit_unitary(qft_inverse_circuit(1)).matrix(),
                                embed_gate(Gate::h(0), 1)),
              1e-15);
}

// The Frobenius norm bounds the spectral norm from above.
TEST(Qft, MatchesDefiningMatrix) {
    for (int k = 1; k <= 10; ++k) {
        const Matrix built = circuit_unitary(qft_circuit(k)).matrix();
        EXPECT_LE((built - oracle::dft(k)).norm(), 1e-9) << k;
        EXPECT_LE(unitarity_defect(built), 1e-10) << k;
        EXPECT_LE((qft_matrix(k).matrix() - oracle::dft(k)).norm(), 1e-9) << k;
        EXPECT_LE((qft_matrix(k, true).matrix() - oracle::dft(k, true)).norm(), 1e-9) << k;
    }
}

TEST(Qft, GateCount) {
    for (int k = 1; k <= 24; ++k) {
        EXPECT_EQ(qft_circuit(k).size(), static_cast<std::size_t>(k * (k + 1) / 2 + k / 2)) << k;
        EXPECT_EQ(qft_inverse_circuit(k).size(), qft_circuit(k).size());
    }
}

TEST(Qft, ZeroStateToUniform) {
    for (int k = 1; k <= 12; ++k) {
        const auto out = apply(qft_circuit(k), StateVector(k));
        Circuit hs(k);
        for (int q = 0; q < k; ++q) {
            hs.add(Gate::h(q));
        }
        EXPECT_LE(quantum_angle(out, apply(hs, StateVector(k))), 1e-9);
        EXPECT_LE(quantum_angle(apply(qft_inverse_circuit(k), out), StateVector(k)), 1e-9);
    }
}

TEST(Qft, TwoQubitsOnEveryBasisState) {
    const Complex i(0.0, 1.0);
    for (int q = 0; q < 4; ++q) {
        const auto out = apply(qft_circuit(2), StateVector::basis(2, q));
        for (int qp = 0; qp < 4; ++qp) {
            EXPECT_NEAR(std::abs(out[qp] - 0.5 * std::pow(i, q * qp)), 0.0, 1e-12);
        }
    }
}

TEST(Qft, AgreesWithMatrixOnRandomStates) {
    Rng rng(21);
    for (int k = 1; k <= 10; ++k) {
        const auto s = random_state(k, rng);
        const Vector expected = oracle::dft(k) * to_vector(s);
        const auto out = apply(qft_circuit(k), s);
        std::vector<Complex> amps(expected.data(), expected.data() + expected.size());
        EXPECT_LE(quantum_angle(out, StateVector::from_amplitudes(amps)), 1e-9) << k;
    }
}

TEST(QftInverse, ComposesToIdentity) {
    for (int k = 1; k <= 10; ++k) {
        Circuit c(k);
        c.append(qft_circuit(k)).append(qft_inverse_circuit(k));
        EXPECT_LE(spectral_distance(circuit_unitary(c).matrix(),
                                    Matrix::Identity(1 << k, 1 << k)),
                  1e-9)
            << k;
    }
}

TEST(QftInverse, RestoresRandomStates) {
    Rng rng(22);
    for (int k : {1, 2, 5, 9, 14, 20}) {
        const auto s = random_state(k, rng);
        const auto back = apply(qft_inverse_circuit(k), apply(qft_circuit(k), s));
        EXPECT_LE(quantum_angle(back, s), 1e-9) << k;
    }
}

TEST(Qft, CapacityChecked) {
    EXPECT_THROW(qft_circuit(0), InvalidArgument);
    EXPECT_THROW(qft_circuit(30), CapacityError);
    EXPECT_THROW(qft_inverse_circuit(12, 10), CapacityError);
    EXPECT_THROW(qft_matrix(11), CapacityError);
}
