#pragma once

// Truth-table Boolean functions, reversible embedding, NAND composition and
// the query-counting oracle wrapper.
//
// Truth values follow the XOR algebra: 1 is true, 0 is false. Input bit
// strings are big-endian like basis indices, so variable x0 is the most
// significant bit of the table index.

#include <atomic>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qsim {

inline constexpr int kMaxTruthTableInputs = 20;
inline constexpr int kMaxTruthTableOutputs = 32;

/// f : {0,1}^n_in -> {0,1}^n_out as an explicit table of 2^n_in outputs.
class BooleanFunction {
  public:
    BooleanFunction(int num_inputs, int num_outputs, std::vector<std::uint32_t> table);

    static BooleanFunction from_callable(int num_inputs, int num_outputs,
                                         const std::function<std::uint32_t(std::uint64_t)> &f);
    static BooleanFunction constant(int num_inputs, std::uint32_t value, int num_outputs = 1);
    static BooleanFunction parity(int num_inputs);
    /// x -> popcount(x & hidden) mod 2.
    static BooleanFunction dot_product(int num_inputs, std::uint64_t hidden);

    int num_inputs() const noexcept { return n_in_; }
    int num_outputs() const noexcept { return n_out_; }
    std::span<const std::uint32_t> table() const noexcept { return table_; }
    std::uint32_t operator()(std::uint64_t x) const { return table_[x]; }

    bool operator==(const BooleanFunction &) const = default;

  private:
    int n_in_;
    int n_out_;
    std::vector<std::uint32_t> table_;
};

/// F(b, b') = (b, b' xor f(b)) on n_in + 1 bits; b' is the last (least
/// significant) bit. Throws ArityError unless f has one output bit.
BooleanFunction reversible_embed(const BooleanFunction &f);

/// True iff the table is a bijection. Throws ArityError if n_in != n_out.
bool is_permutation(const BooleanFunction &f);

/// Truth-table text format: a header line `n_in n_out` followed by 2^n_in
/// whitespace-separated integers. Lines starting with '#' are comments.
BooleanFunction parse_truth_table(std::istream &in);
BooleanFunction read_truth_table(const std::string &path);
std::string format_truth_table(const BooleanFunction &f);

/// Expression tree built only from binary NAND over input variables.
class NandTree {
  public:
    NandTree() = default;

    static NandTree input(int index);
    static NandTree nand(NandTree lhs, NandTree rhs);
    /// Parses e.g. "NAND(NAND(a,b),NAND(a,b))". Variables are `x<k>` or a
    /// single lowercase letter (a = x0, b = x1, ...).
    static NandTree parse(std::string_view text);

    bool empty() const noexcept { return node_ == nullptr; }
    std::string to_string() const;

    struct Node;
    const Node *root() const noexcept { return node_.get(); }

  private:
    explicit NandTree(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

/// Single-output truth table of `tree` over `num_inputs` variables. Throws
/// MalformedTreeError for empty subtrees or out-of-range variables.
BooleanFunction nand_compose(const NandTree &tree, int num_inputs);

enum class OracleMode { BitFlip, Phase };

/// Black-box access to a BooleanFunction with an exact invocation counter.
///
/// BitFlip acts on n_in + n_out qubits as |x>|y> -> |x>|y xor f(x)>; Phase
/// acts on n_in qubits as |x> -> (-1)^f(x) |x>. Held by shared_ptr so every
/// gate that embeds it updates the same counter.
class QueryOracle {
  public:
    QueryOracle(BooleanFunction f, OracleMode mode);

    static std::shared_ptr<QueryOracle> make(BooleanFunction f, OracleMode mode) {
        return std::make_shared<QueryOracle>(std::move(f), mode);
    }

    QueryOracle(const QueryOracle &) = delete;
    QueryOracle &operator=(const QueryOracle &) = delete;

    const BooleanFunction &function() const noexcept { return fn_; }
    OracleMode mode() const noexcept { return mode_; }
    int num_qubits() const noexcept;

    std::uint64_t count() const noexcept { return count_.load(std::memory_order_relaxed); }
    /// Called once per quantum application of the oracle gate.
    void record_query() noexcept { count_.fetch_add(1, std::memory_order_relaxed); }
    /// Classical evaluation; counts as one query.
    std::uint32_t query(std::uint64_t x);

  private:
    BooleanFunction fn_;
    OracleMode mode_;
    std::atomic<std::uint64_t> count_{0};
};

} // namespace qsim
