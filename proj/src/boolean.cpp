#include "qsim/boolean.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>

#include "qsim/errors.hpp"

namespace qsim {

BooleanFunction::BooleanFunction(int num_inputs, int num_outputs,
                                 std::vector<std::uint32_t> table)
    : n_in_(num_inputs), n_out_(num_outputs), table_(std::move(table)) {
    if (n_in_ < 0 || n_in_ > kMaxTruthTableInputs) {
        throw ArityError("truth table inputs must be in [0, " +
                         std::to_string(kMaxTruthTableInputs) + "], got " +
                         std::to_string(n_in_));
    }
    if (n_out_ < 1 || n_out_ > kMaxTruthTableOutputs) {
        throw ArityError("truth table outputs must be in [1, " +
                         std::to_string(kMaxTruthTableOutputs) + "], got " +
                         std::to_string(n_out_));
    }
    if (table_.size() != (std::size_t{1} << n_in_)) {
        throw DimensionError("truth table needs " + std::to_string(std::size_t{1} << n_in_) +
                             " entries, got " + std::to_string(table_.size()));
    }
    const std::uint64_t limit = std::uint64_t{1} << n_out_;
    for (std::size_t x = 0; x < table_.size(); ++x) {
        if (table_[x] >= limit) {
            throw InvalidArgument("truth table entry " + std::to_string(table_[x]) +
                                  " at input " + std::to_string(x) + " does not fit in " +
                                  std::to_string(n_out_) + " output bits");
        }
    }
}

BooleanFunction BooleanFunction::from_callable(
    int num_inputs, int num_outputs, const std::function<std::uint32_t(std::uint64_t)> &f) {
    if (num_inputs < 0 || num_inputs > kMaxTruthTableInputs) {
        throw ArityError("truth table inputs out of range: " + std::to_string(num_inputs));
    }
    std::vector<std::uint32_t> table(std::size_t{1} << num_inputs);
    for (std::size_t x = 0; x < table.size(); ++x) {
        table[x] = f(x);
    }
    return {num_inputs, num_outputs, std::move(table)};
}

BooleanFunction BooleanFunction::constant(int num_inputs, std::uint32_t value,
                                          int num_outputs) {
    return from_callable(num_inputs, num_outputs, [value](std::uint64_t) { return value; });
}

BooleanFunction BooleanFunction::parity(int num_inputs) {
    return from_callable(num_inputs, 1, [](std::uint64_t x) {
        return static_cast<std::uint32_t>(__builtin_popcountll(x) & 1);
    });
}

BooleanFunction BooleanFunction::dot_product(int num_inputs, std::uint64_t hidden) {
    if (num_inputs < 64 && (hidden >> num_inputs) != 0) {
        throw InvalidArgument("hidden string wider than the input register");
    }
    return from_callable(num_inputs, 1, [hidden](std::uint64_t x) {
        return static_cast<std::uint32_t>(__builtin_popcountll(x & hidden) & 1);
    });
}

BooleanFunction reversible_embed(const BooleanFunction &f) {
    if (f.num_outputs() != 1) {
        throw ArityError("reversible embedding needs a single-output function, got " +
                         std::to_string(f.num_outputs()) + " outputs");
    }
    const int n = f.num_inputs() + 1;
    return BooleanFunction::from_callable(n, n, [&f](std::uint64_t x) {
        return static_cast<std::uint32_t>(x ^ f(x >> 1));
    });
}

bool is_permutation(const BooleanFunction &f) {
    if (f.num_inputs() != f.num_outputs()) {
        throw ArityError("permutation check needs n_in == n_out");
    }
    std::vector<bool> hit(f.table().size(), false);
    for (auto y : f.table()) {
        if (hit[y]) {
            return false;
        }
        hit[y] = true;
    }
    return true;
}

BooleanFunction parse_truth_table(std::istream &in) {
    std::stringstream body;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first != std::string::npos && line[first] == '#') {
            continue;
        }
        body << line << '\n';
    }
    long long n_in = -1;
    long long n_out = -1;
    if (!(body >> n_in >> n_out)) {
        throw ParseError("truth table header must be `n_in n_out`");
    }
    if (n_in < 0 || n_in > kMaxTruthTableInputs || n_out < 1 || n_out > kMaxTruthTableOutputs) {
        throw ParseError("truth table header out of range: " + std::to_string(n_in) + " " +
                         std::to_string(n_out));
    }
    std::vector<std::uint32_t> table;
    table.reserve(std::size_t{1} << n_in);
    long long v = 0;
    while (body >> v) {
        if (v < 0 || v > UINT32_MAX) {
            throw ParseError("truth table entry out of range: " + std::to_string(v));
        }
        table.push_back(static_cast<std::uint32_t>(v));
    }
    if (!body.eof()) {
        throw ParseError("truth table contains a non-integer token");
    }
    if (table.size() != (std::size_t{1} << n_in)) {
        throw ParseError("truth table expects " + std::to_string(std::size_t{1} << n_in) +
                         " entries, found " + std::to_string(table.size()));
    }
    return {static_cast<int>(n_in), static_cast<int>(n_out), std::move(table)};
}

BooleanFunction read_truth_table(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open truth table file '" + path + "'");
    }
    return parse_truth_table(in);
}

std::string format_truth_table(const BooleanFunction &f) {
    std::ostringstream out;
    out << f.num_inputs() << ' ' << f.num_outputs() << '\n';
    const auto t = f.table();
    for (std::size_t x = 0; x < t.size(); ++x) {
        out << t[x] << ((x + 1) % 16 == 0 || x + 1 == t.size() ? '\n' : ' ');
    }
    return out.str();
}

struct NandTree::Node {
    int variable = -1; // >= 0 for leaves
    NandTree lhs;
    NandTree rhs;
};

NandTree NandTree::input(int index) {
    auto node = std::make_shared<Node>();
    node->variable = index;
    return NandTree(std::move(node));
}

NandTree NandTree::nand(NandTree lhs, NandTree rhs) {
    auto node = std::make_shared<Node>();
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    return NandTree(std::move(node));
}

namespace {

class NandParser {
  public:
    explicit NandParser(std::string_view text) : text_(text) {}

    NandTree parse_all() {
        NandTree t = parse_expr();
        skip_space();
        if (pos_ != text_.size()) {
            fail("trailing characters");
        }
        return t;
    }

  private:
    [[noreturn]] void fail(const std::string &why) const {
        throw MalformedTreeError("NAND expression: " + why + " at offset " +
                                 std::to_string(pos_) + " in '" + std::string(text_) + "'");
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    void expect(char c) {
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] != c) {
            fail(std::string("expected '") + c + "'");
        }
        ++pos_;
    }

    NandTree parse_expr() {
        skip_space();
        if (text_.substr(pos_, 4) == "NAND") {
            pos_ += 4;
            expect('(');
            NandTree lhs = parse_expr();
            expect(',');
            NandTree rhs = parse_expr();
            expect(')');
            return NandTree::nand(std::move(lhs), std::move(rhs));
        }
        if (pos_ < text_.size() && text_[pos_] == 'x' && pos_ + 1 < text_.size() &&
            std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
            ++pos_;
            int v = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                v = v * 10 + (text_[pos_] - '0');
                if (v > kMaxTruthTableInputs) {
                    fail("variable index too large");
                }
                ++pos_;
            }
            return NandTree::input(v);
        }
        if (pos_ < text_.size() && text_[pos_] >= 'a' && text_[pos_] <= 'z' &&
            (pos_ + 1 == text_.size() ||
             !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
            return NandTree::input(text_[pos_++] - 'a');
        }
        fail("expected NAND(...) or a variable");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

std::vector<std::uint8_t> evaluate(const NandTree::Node *node, int num_inputs) {
    if (node == nullptr) {
        throw MalformedTreeError("NAND tree has an empty subtree");
    }
    const std::size_t rows = std::size_t{1} << num_inputs;
    std::vector<std::uint8_t> out(rows);
    if (node->variable >= 0) {
        if (node->variable >= num_inputs) {
            throw MalformedTreeError("variable x" + std::to_string(node->variable) +
                                     " out of range for " + std::to_string(num_inputs) +
                                     " inputs");
        }
        const int shift = num_inputs - 1 - node->variable;
        for (std::size_t x = 0; x < rows; ++x) {
            out[x] = static_cast<std::uint8_t>((x >> shift) & 1U);
        }
        return out;
    }
    const auto a = evaluate(node->lhs.root(), num_inputs);
    const auto b = evaluate(node->rhs.root(), num_inputs);
    for (std::size_t x = 0; x < rows; ++x) {
        out[x] = static_cast<std::uint8_t>(!(a[x] && b[x]));
    }
    return out;
}

} // namespace

NandTree NandTree::parse(std::string_view text) { return NandParser(text).parse_all(); }

std::string NandTree::to_string() const {
    if (!node_) {
        return "<empty>";
    }
    if (node_->variable >= 0) {
        return "x" + std::to_string(node_->variable);
    }
    return "NAND(" + node_->lhs.to_string() + "," + node_->rhs.to_string() + ")";
}

BooleanFunction nand_compose(const NandTree &tree, int num_inputs) {
    if (num_inputs < 0 || num_inputs > kMaxTruthTableInputs) {
        throw ArityError("NAND composition input count out of range");
    }
    const auto values = evaluate(tree.root(), num_inputs);
    std::vector<std::uint32_t> table(values.begin(), values.end());
    return {num_inputs, 1, std::move(table)};
}

QueryOracle::QueryOracle(BooleanFunction f, OracleMode mode) : fn_(std::move(f)), mode_(mode) {
    if (mode_ == OracleMode::Phase && fn_.num_outputs() != 1) {
        throw ArityError("phase oracle needs a single-output function, got " +
                         std::to_string(fn_.num_outputs()) + " outputs");
    }
}

int QueryOracle::num_qubits() const noexcept {
    return mode_ == OracleMode::Phase ? fn_.num_inputs() : fn_.num_inputs() + fn_.num_outputs();
}

std::uint32_t QueryOracle::query(std::uint64_t x) {
    if (x >= fn_.table().size()) {
        throw InvalidIndexError("oracle input " + std::to_string(x) + " out of range");
    }
    record_query();
    return fn_(x);
}

} // namespace qsim
