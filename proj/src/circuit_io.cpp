#include "qsim/circuit_io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "qsim/errors.hpp"

namespace qsim {

namespace {

class LineReader {
  public:
    LineReader(std::string line, int line_no) : in_(std::move(line)), line_no_(line_no) {}

    [[noreturn]] void fail(const std::string &why) const {
        throw ParseError("circuit line " + std::to_string(line_no_) + ": " + why);
    }

    std::string word() {
        std::string w;
        if (!(in_ >> w)) {
            fail("unexpected end of line");
        }
        return w;
    }

    long long integer() {
        const std::string w = word();
        long long v = 0;
        const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
        if (ec != std::errc() || ptr != w.data() + w.size()) {
            fail("expected an integer, got '" + w + "'");
        }
        return v;
    }

    int qubit() {
        const long long q = integer();
        if (q < 0 || q > 62) {
            fail("qubit index out of range: " + std::to_string(q));
        }
        return static_cast<int>(q);
    }

    std::vector<int> qubits(long long count) {
        if (count < 1 || count > 62) {
            fail("bad qubit count " + std::to_string(count));
        }
        std::vector<int> qs;
        for (long long i = 0; i < count; ++i) {
            qs.push_back(qubit());
        }
        return qs;
    }

    double real() {
        const std::string w = word();
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(w, &used);
        } catch (const std::exception &) {
            fail("expected a number, got '" + w + "'");
        }
        if (used != w.size()) {
            fail("expected a number, got '" + w + "'");
        }
        return v;
    }

    std::vector<std::uint32_t> table(int n_in) {
        if (n_in < 0 || n_in > kMaxTruthTableInputs) {
            fail("oracle input count out of range");
        }
        std::vector<std::uint32_t> t;
        for (std::size_t i = 0; i < (std::size_t{1} << n_in); ++i) {
            const long long v = integer();
            if (v < 0 || v > UINT32_MAX) {
                fail("oracle table entry out of range");
            }
            t.push_back(static_cast<std::uint32_t>(v));
        }
        return t;
    }

    void finish() {
        std::string extra;
        if (in_ >> extra) {
            fail("unexpected trailing token '" + extra + "'");
        }
    }

    std::string rest() {
        std::string r;
        std::getline(in_ >> std::ws, r);
        return r;
    }

  private:
    std::istringstream in_;
    int line_no_;
};

Gate parse_gate(const std::string &op, LineReader &r) {
    if (op == "H") return Gate::h(r.qubit());
    if (op == "T") return Gate::t(r.qubit());
    if (op == "TDG") return Gate::tdg(r.qubit());
    if (op == "X") return Gate::x(r.qubit());
    if (op == "Z") return Gate::z(r.qubit());
    if (op == "PHASE") {
        const int q = r.qubit();
        return Gate::phase(q, r.real());
    }
    if (op == "CPHASE") {
        const int c = r.qubit();
        const int t = r.qubit();
        return Gate::cphase(c, t, r.real());
    }
    if (op == "CNOT" || op == "SWAP") {
        const int a = r.qubit();
        const int b = r.qubit();
        return op == "CNOT" ? Gate::cnot(a, b) : Gate::swap(a, b);
    }
    if (op == "CCNOT" || op == "CSWAP") {
        const int a = r.qubit();
        const int b = r.qubit();
        const int c = r.qubit();
        return op == "CCNOT" ? Gate::ccnot(a, b, c) : Gate::cswap(a, b, c);
    }
    if (op == "MCZ") {
        return Gate::mcz(r.qubits(r.integer()));
    }
    if (op == "UNITARY") {
        const long long k = r.integer();
        if (k < 1 || k > kMaxUnitaryQubits) {
            r.fail("UNITARY arity out of range");
        }
        auto qs = r.qubits(k);
        const auto d = Eigen::Index{1} << k;
        Matrix m(d, d);
        for (Eigen::Index row = 0; row < d; ++row) {
            for (Eigen::Index col = 0; col < d; ++col) {
                const double re = r.real();
                const double im = r.real();
                m(row, col) = Complex(re, im);
            }
        }
        return Gate::unitary(UnitaryMatrix(std::move(m)), std::move(qs));
    }
    if (op == "ORACLE_BITFLIP") {
        const long long n_in = r.integer();
        const long long n_out = r.integer();
        auto qs = r.qubits(n_in + n_out);
        auto table = r.table(static_cast<int>(n_in));
        auto oracle = QueryOracle::make(
            BooleanFunction(static_cast<int>(n_in), static_cast<int>(n_out), std::move(table)),
            OracleMode::BitFlip);
        return Gate::oracle(std::move(oracle), std::move(qs));
    }
    if (op == "ORACLE_PHASE") {
        const long long n_in = r.integer();
        auto qs = r.qubits(n_in);
        auto table = r.table(static_cast<int>(n_in));
        auto oracle = QueryOracle::make(
            BooleanFunction(static_cast<int>(n_in), 1, std::move(table)), OracleMode::Phase);
        return Gate::oracle(std::move(oracle), std::move(qs));
    }
    if (op == "MODEXP") {
        const long long base = r.integer();
        const long long modulus = r.integer();
        const long long k = r.integer();
        const long long width = r.integer();
        if (base < 0 || modulus < 2 || k < 1 || width < 1) {
            r.fail("bad MODEXP parameters");
        }
        auto qs = r.qubits(k + width);
        return Gate::modexp(static_cast<std::uint64_t>(base), static_cast<std::uint64_t>(modulus),
                            static_cast<int>(k), std::move(qs));
    }
    r.fail("unknown gate '" + op + "'");
}

void write_qubits(std::ostream &out, std::span<const int> qs) {
    for (int q : qs) {
        out << ' ' << q;
    }
}

} // namespace

Circuit parse_circuit(std::istream &in) {
    std::optional<Circuit> circuit;
    std::string name;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        LineReader r(line, line_no);
        const std::string op = r.word();
        if (op == "QUBITS") {
            if (circuit) {
                r.fail("duplicate QUBITS header");
            }
            const long long n = r.integer();
            if (n < 0 || n > 62) {
                r.fail("qubit count out of range");
            }
            r.finish();
            circuit.emplace(static_cast<int>(n), name);
            continue;
        }
        if (op == "NAME") {
            name = r.rest();
            if (circuit) {
                circuit->set_name(name);
            }
            continue;
        }
        if (!circuit) {
            r.fail("gate before QUBITS header");
        }
        try {
            Gate g = parse_gate(op, r);
            r.finish();
            circuit->add(std::move(g));
        } catch (const ParseError &) {
            throw;
        } catch (const Error &e) {
            r.fail(e.what());
        }
    }
    if (!circuit) {
        throw ParseError("circuit text has no QUBITS header");
    }
    return std::move(*circuit);
}

Circuit parse_circuit(const std::string &text) {
    std::istringstream in(text);
    return parse_circuit(in);
}

Circuit read_circuit(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open circuit file '" + path + "'");
    }
    return parse_circuit(in);
}

std::string format_circuit(const Circuit &c) {
    std::ostringstream out;
    out << std::setprecision(17);
    out << "QUBITS " << c.num_qubits() << '\n';
    if (!c.name().empty()) {
        out << "NAME " << c.name() << '\n';
    }
    for (const auto &g : c.gates()) {
        out << g.name();
        switch (g.kind()) {
        case GateKind::Phase:
        case GateKind::CPhase:
            write_qubits(out, g.qubits());
            out << ' ' << g.angle();
            break;
        case GateKind::MCZ:
            out << ' ' << g.arity();
            write_qubits(out, g.qubits());
            break;
        case GateKind::Unitary: {
            out << ' ' << g.arity();
            write_qubits(out, g.qubits());
            const auto &m = g.custom()->matrix();
            for (Eigen::Index row = 0; row < m.rows(); ++row) {
                for (Eigen::Index col = 0; col < m.cols(); ++col) {
                    out << ' ' << m(row, col).real() << ' ' << m(row, col).imag();
                }
            }
            break;
        }
        case GateKind::Oracle: {
            const auto &f = g.query_oracle()->function();
            out << ' ' << f.num_inputs();
            if (g.query_oracle()->mode() == OracleMode::BitFlip) {
                out << ' ' << f.num_outputs();
            }
            write_qubits(out, g.qubits());
            for (auto v : f.table()) {
                out << ' ' << v;
            }
            break;
        }
        case GateKind::ModExp: {
            const auto &p = g.modexp_params();
            out << ' ' << p.base << ' ' << p.modulus << ' ' << p.source_qubits << ' '
                << g.arity() - p.source_qubits;
            write_qubits(out, g.qubits());
            break;
        }
        default:
            write_qubits(out, g.qubits());
            break;
        }
        out << '\n';
    }
    return out.str();
}

} // namespace qsim
