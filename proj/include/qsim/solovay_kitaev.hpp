#pragma once

// Single-qubit gate synthesis over {H, T, T^dagger}.
//
// Words are strings over 'H', 'T' and 't' (t = T^dagger) in circuit order:
// the first letter acts first, so the word "TH" is the matrix H T. All
// distances are spectral distances modulo global phase.

#include <cstdint>
#include <string>
#include <vector>

#include "qsim/circuit.hpp"
#include "qsim/state.hpp"

namespace qsim {

using Word = std::string;

/// Unit quaternion for the SU(2) element w I - i (x X + y Y + z Z).
struct Su2 {
    double w = 1.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Su2 operator*(const Su2 &o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z, w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x, w * o.z + x * o.y - y * o.x + z * o.w};
    }
    Su2 adjoint() const { return {w, -x, -y, -z}; }

    /// Rotation by `angle` about the unit axis (ax, ay, az).
    static Su2 rotation(double ax, double ay, double az, double angle);
    /// Projects a 2x2 unitary to SU(2) by dividing out sqrt(det).
    static Su2 from_matrix(const Matrix &u);
    Matrix matrix() const;
};

/// min over phases of ||U - e^{i phi} V||, i.e. min(|p - q|, |p + q|).
double su2_distance(const Su2 &p, const Su2 &q);

Su2 letter_su2(char letter);
/// Product of the letters as an SU(2) element.
Su2 word_su2(const Word &word);
/// Product of the actual H, T, T^dagger matrices (global phase included).
Matrix word_matrix(const Word &word);
/// Reversed word with T and t exchanged.
Word word_dagger(const Word &word);
/// Cancels HH and reduces every T/t run mod 8 (runs of 5..7 become t^3..t).
Word simplify_word(const Word &word);
/// Throws InvalidArgument for letters other than H, T, t.
void validate_word(const Word &word);
/// One-qubit circuit of H, T and TDG gates.
Circuit word_circuit(const Word &word);

/// Haar-random SU(2) element from Z-Y-Z Euler angles.
Su2 haar_su2(Rng &rng);

/// Distinct group elements reachable by words of length <= depth_cap, each
/// kept with its first word in (length, lexicographic H < T < t) order.
class BaseNet {
  public:
    static constexpr int kMaxDepth = 25;

    BaseNet() = default;

    int depth_cap() const noexcept { return depth_cap_; }
    std::size_t size() const noexcept { return elements_.size(); }
    Word word(std::size_t i) const;
    const Su2 &element(std::size_t i) const { return elements_[i]; }
    int word_length(std::size_t i) const { return lengths_[i]; }

    /// Index of the closest entry; exact ties go to the earlier entry.
    std::size_t nearest(const Su2 &target) const;

    friend BaseNet build_base_net(int depth_cap);
    friend BaseNet load_base_net(const std::string &path);

  private:
    void build_index();

    int depth_cap_ = 0;
    std::vector<Su2> elements_;
    std::vector<std::int32_t> parent_; // -1 for the empty word
    std::vector<char> last_letter_;
    std::vector<std::uint8_t> lengths_;

    // k-d tree over the points +q and -q of every entry.
    struct Node {
        std::uint32_t begin = 0;
        std::uint32_t end = 0;
        std::int32_t left = -1;
        std::int32_t right = -1;
        int axis = -1;
        double split = 0.0;
    };
    std::vector<std::uint32_t> points_; // 2 i for +q_i, 2 i + 1 for -q_i
    std::vector<Node> nodes_;
};

/// Throws CapacityError for depth_cap outside [0, 25].
BaseNet build_base_net(int depth_cap);

/// Largest nearest-entry distance over `samples` Haar-random targets.
double measure_cover_radius(const BaseNet &net, int samples = 1000, std::uint64_t seed = 2024);

/// Text cache: header `qsim-sk-net v1 depth_cap=<d> entries=<n>`, then one
/// line per entry `<word> re00 im00 re01 im01 re10 im10 re11 im11` with `.`
/// for the empty word. Matrices are the SU(2) representatives.
void save_base_net(const BaseNet &net, const std::string &path);
/// Throws ParseError on a malformed file or an entry whose matrix does not
/// match its word within 1e-12.
BaseNet load_base_net(const std::string &path);
/// Loads the cache when it is valid for `depth_cap`, else builds and rewrites it.
BaseNet load_or_build_base_net(const std::string &path, int depth_cap);

/// V, W with V W V^dagger W^dagger = delta: equal-angle rotations about
/// orthogonal axes, conjugated onto the rotation axis of delta.
struct GroupCommutator {
    Su2 v;
    Su2 w;
};
GroupCommutator balanced_commutator(const Su2 &delta);

struct GateSequence {
    Word word;
    /// Distance of the word's product from the target, modulo global phase.
    double achieved_distance = 0.0;
    Matrix target;
    int level = 0;
};

/// Level 0 is the nearest net entry; level l refines level l - 1 by one
/// group-commutator correction.
GateSequence sk_decompose(const Matrix &target, int level, const BaseNet &net);

/// Raises the level from 0 until the distance is at most eps. Throws
/// AccuracyUnreachable with the best distance if max_level is exhausted.
GateSequence compile_to_accuracy(const Matrix &target, double eps, const BaseNet &net,
                                 int max_level = 8);

} // namespace qsim
