#include "qsim/qft.hpp"

#include <cmath>

#include "qsim/errors.hpp"

namespace qsim {

Circuit qft_circuit(int k, int max_qubits) {
    if (k < 1) {
        throw InvalidArgument("QFT needs at least one qubit");
    }
    check_capacity(k, max_qubits, "qft");
    Circuit c(k, "qft");
    for (int j = 0; j < k; ++j) {
        c.add(Gate::h(j));
        for (int m = j + 1; m < k; ++m) {
            c.add(Gate::cphase(m, j, 2.0 * kPi / std::ldexp(1.0, m - j + 1)));
        }
    }
    for (int j = 0; j < k / 2; ++j) {
        c.add(Gate::swap(j, k - 1 - j));
    }
    return c;
}

Circuit qft_inverse_circuit(int k, int max_qubits) {
    Circuit c = qft_circuit(k, max_qubits).inverse();
    c.set_name("qft_inverse");
    return c;
}

UnitaryMatrix qft_matrix(int k, bool inverse) {
    if (k < 1) {
        throw InvalidArgument("QFT needs at least one qubit");
    }
    check_capacity(k, kMaxUnitaryQubits, "qft_matrix");
    const std::uint64_t q = std::uint64_t{1} << k;
    const double scale = 1.0 / std::sqrt(static_cast<double>(q));
    const double sign = inverse ? -1.0 : 1.0;
    Matrix m(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(q));
    for (std::uint64_t r = 0; r < q; ++r) {
        for (std::uint64_t c = 0; c < q; ++c) {
            // Reduce the exponent mod Q first so the angle stays small.
            const auto e = static_cast<double>((r * c) & (q - 1));
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                std::polar(scale, sign * 2.0 * kPi * e / static_cast<double>(q));
        }
    }
    return UnitaryMatrix(std::move(m));
}

} // namespace qsim
