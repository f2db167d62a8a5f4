#include "qsim/solovay_kitaev.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "qsim/errors.hpp"

namespace qsim {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr std::size_t kLeafSize = 8;
constexpr double kCacheTolerance = 1e-12;

const Su2 kH{0.0, kInvSqrt2, 0.0, kInvSqrt2};
const Su2 kT{std::cos(kPi / 8.0), 0.0, 0.0, std::sin(kPi / 8.0)};
const Su2 kTdg{std::cos(kPi / 8.0), 0.0, 0.0, -std::sin(kPi / 8.0)};

double coord(const Su2 &q, int axis) {
    switch (axis) {
    case 0:
        return q.w;
    case 1:
        return q.x;
    case 2:
        return q.y;
    default:
        return q.z;
    }
}

double squared_gap(const Su2 &a, const Su2 &b) {
    const double dw = a.w - b.w;
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return dw * dw + dx * dx + dy * dy + dz * dz;
}

Su2 negated(const Su2 &q) { return {-q.w, -q.x, -q.y, -q.z}; }

/// Sign-canonical rounded key identifying an element of SU(2) / {+1, -1}.
struct ElementKey {
    std::int64_t c[4];
    bool operator==(const ElementKey &o) const {
        return std::equal(std::begin(c), std::end(c), std::begin(o.c));
    }
};

struct ElementKeyHash {
    std::size_t operator()(const ElementKey &k) const noexcept {
        std::uint64_t h = 1469598103934665603ULL;
        for (auto v : k.c) {
            h ^= static_cast<std::uint64_t>(v);
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

ElementKey key_of(const Su2 &q) {
    const double v[4] = {q.w, q.x, q.y, q.z};
    double sign = 1.0;
    for (double c : v) {
        if (std::abs(c) > 1e-7) {
            sign = c > 0 ? 1.0 : -1.0;
            break;
        }
    }
    ElementKey k{};
    for (int i = 0; i < 4; ++i) {
        k.c[i] = std::llround(sign * v[i] * 1e9);
    }
    return k;
}

} // namespace

Su2 Su2::rotation(double ax, double ay, double az, double angle) {
    const double s = std::sin(angle / 2.0);
    return {std::cos(angle / 2.0), s * ax, s * ay, s * az};
}

Su2 Su2::from_matrix(const Matrix &u) {
    if (u.rows() != 2 || u.cols() != 2) {
        throw DimensionError("single-qubit synthesis needs a 2x2 matrix");
    }
    const Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    const Matrix v = u / std::sqrt(det);
    Su2 q{(v(0, 0) + v(1, 1)).real() / 2.0, -(v(0, 1) + v(1, 0)).imag() / 2.0,
          (v(1, 0) - v(0, 1)).real() / 2.0, (v(1, 1) - v(0, 0)).imag() / 2.0};
    const double norm = std::sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z);
    return {q.w / norm, q.x / norm, q.y / norm, q.z / norm};
}

Matrix Su2::matrix() const {
    Matrix m(2, 2);
    m(0, 0) = Complex(w, -z);
    m(0, 1) = Complex(-y, -x);
    m(1, 0) = Complex(y, -x);
    m(1, 1) = Complex(w, z);
    return m;
}

double su2_distance(const Su2 &p, const Su2 &q) {
    return std::sqrt(std::min(squared_gap(p, q), squared_gap(p, negated(q))));
}

Su2 letter_su2(char letter) {
    switch (letter) {
    case 'H':
        return kH;
    case 'T':
        return kT;
    case 't':
        return kTdg;
    default:
        throw InvalidArgument(std::string("word letter must be H, T or t, got '") + letter + "'");
    }
}

Su2 word_su2(const Word &word) {
    Su2 q;
    for (char c : word) {
        q = letter_su2(c) * q;
    }
    return q;
}

Matrix word_matrix(const Word &word) {
    Matrix h(2, 2);
    h << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
    Matrix t = Matrix::Identity(2, 2);
    t(1, 1) = std::polar(1.0, kPi / 4.0);
    const Matrix tdg = t.adjoint();
    Matrix m = Matrix::Identity(2, 2);
    for (char c : word) {
        validate_word(std::string(1, c));
        m = (c == 'H' ? h : c == 'T' ? t : tdg) * m;
    }
    return m;
}

Word word_dagger(const Word &word) {
    Word out(word.rbegin(), word.rend());
    for (char &c : out) {
        c = c == 'T' ? 't' : c == 't' ? 'T' : c;
    }
    return out;
}

Word simplify_word(const Word &word) {
    // Tokens: 0 for H, otherwise a T-run exponent in 1..7.
    std::vector<int> tokens;
    for (char c : word) {
        if (c == 'H') {
            if (!tokens.empty() && tokens.back() == 0) {
                tokens.pop_back();
            } else {
                tokens.push_back(0);
            }
            continue;
        }
        const int step = c == 'T' ? 1 : 7;
        if (!tokens.empty() && tokens.back() != 0) {
            tokens.back() = (tokens.back() + step) % 8;
            if (tokens.back() == 0) {
                tokens.pop_back();
            }
        } else {
            tokens.push_back(step);
        }
    }
    Word out;
    for (int t : tokens) {
        if (t == 0) {
            out.push_back('H');
        } else if (t <= 4) {
            out.append(static_cast<std::size_t>(t), 'T');
        } else {
            out.append(static_cast<std::size_t>(8 - t), 't');
        }
    }
    return out;
}

void validate_word(const Word &word) {
    for (char c : word) {
        if (c != 'H' && c != 'T' && c != 't') {
            throw InvalidArgument(std::string("word letter must be H, T or t, got '") + c + "'");
        }
    }
}

Circuit word_circuit(const Word &word) {
    validate_word(word);
    Circuit c(1, "sk");
    for (char l : word) {
        c.add(l == 'H' ? Gate::h(0) : l == 'T' ? Gate::t(0) : Gate::tdg(0));
    }
    return c;
}

Su2 haar_su2(Rng &rng) {
    const double alpha = 2.0 * kPi * rng.uniform();
    const double beta = std::acos(1.0 - 2.0 * rng.uniform());
    const double gamma = 2.0 * kPi * rng.uniform();
    return Su2::rotation(0, 0, 1, alpha) * Su2::rotation(0, 1, 0, beta) *
           Su2::rotation(0, 0, 1, gamma);
}

Word BaseNet::word(std::size_t i) const {
    Word w;
    for (auto j = static_cast<std::int32_t>(i); j > 0; j = parent_[static_cast<std::size_t>(j)]) {
        w.push_back(last_letter_[static_cast<std::size_t>(j)]);
    }
    std::reverse(w.begin(), w.end());
    return w;
}

void BaseNet::build_index() {
    points_.resize(2 * elements_.size());
    std::iota(points_.begin(), points_.end(), 0U);
    nodes_.clear();
    const auto point = [this](std::uint32_t p) {
        const Su2 &q = elements_[p >> 1];
        return (p & 1U) != 0 ? negated(q) : q;
    };
    // Iterative build: a stack of node indices whose ranges are still unsplit.
    nodes_.push_back({0, static_cast<std::uint32_t>(points_.size())});
    std::vector<std::int32_t> pending{0};
    while (!pending.empty()) {
        const auto id = static_cast<std::size_t>(pending.back());
        pending.pop_back();
        const auto begin = nodes_[id].begin;
        const auto end = nodes_[id].end;
        if (end - begin <= kLeafSize) {
            continue;
        }
        int axis = 0;
        double widest = -1.0;
        for (int a = 0; a < 4; ++a) {
            double lo = 2.0;
            double hi = -2.0;
            for (auto i = begin; i < end; ++i) {
                const double c = coord(point(points_[i]), a);
                lo = std::min(lo, c);
                hi = std::max(hi, c);
            }
            if (hi - lo > widest) {
                widest = hi - lo;
                axis = a;
            }
        }
        const auto mid = begin + (end - begin) / 2;
        std::nth_element(points_.begin() + begin, points_.begin() + mid, points_.begin() + end,
                         [&](std::uint32_t a, std::uint32_t b) {
                             const double ca = coord(point(a), axis);
                             const double cb = coord(point(b), axis);
                             return ca < cb || (ca == cb && a < b);
                         });
        nodes_[id].axis = axis;
        nodes_[id].split = coord(point(points_[mid]), axis);
        const auto left = static_cast<std::int32_t>(nodes_.size());
        nodes_.push_back({begin, mid});
        nodes_.push_back({mid, end});
        nodes_[id].left = left;
        nodes_[id].right = left + 1;
        pending.push_back(left);
        pending.push_back(left + 1);
    }
}

std::size_t BaseNet::nearest(const Su2 &target) const {
    if (elements_.empty()) {
        throw InvalidArgument("base net is empty");
    }
    double best_d2 = 1e300;
    std::size_t best = elements_.size();
    const auto visit = [&](const auto &self, std::int32_t id) -> void {
        const Node &n = nodes_[static_cast<std::size_t>(id)];
        if (n.left < 0) {
            for (auto i = n.begin; i < n.end; ++i) {
                const std::uint32_t p = points_[i];
                const Su2 &q = elements_[p >> 1];
                const double d2 = squared_gap(target, (p & 1U) != 0 ? negated(q) : q);
                const std::size_t entry = p >> 1;
                if (d2 < best_d2 || (d2 == best_d2 && entry < best)) {
                    best_d2 = d2;
                    best = entry;
                }
            }
            return;
        }
        const double diff = coord(target, n.axis) - n.split;
        const std::int32_t near = diff < 0 ? n.left : n.right;
        const std::int32_t far = diff < 0 ? n.right : n.left;
        self(self, near);
        if (diff * diff <= best_d2) {
            self(self, far);
        }
    };
    visit(visit, 0);
    return best;
}

BaseNet build_base_net(int depth_cap) {
    check_capacity(depth_cap, BaseNet::kMaxDepth, "base net depth");
    BaseNet net;
    net.depth_cap_ = depth_cap;
    std::unordered_map<ElementKey, std::uint32_t, ElementKeyHash> seen;
    const auto add = [&](const Su2 &q, std::int32_t parent, char letter, int length) {
        if (!seen.emplace(key_of(q), static_cast<std::uint32_t>(net.elements_.size())).second) {
            return;
        }
        net.elements_.push_back(q);
        net.parent_.push_back(parent);
        net.last_letter_.push_back(letter);
        net.lengths_.push_back(static_cast<std::uint8_t>(length));
    };
    add(Su2{}, -1, '\0', 0);
    // Breadth-first by length; parents in (length, lex) order and letters in
    // H < T < t order keep the first representative lexicographically least.
    std::size_t level_begin = 0;
    for (int length = 1; length <= depth_cap; ++length) {
        const std::size_t level_end = net.elements_.size();
        for (std::size_t i = level_begin; i < level_end; ++i) {
            for (char c : {'H', 'T', 't'}) {
                add(letter_su2(c) * net.elements_[i], static_cast<std::int32_t>(i), c, length);
            }
        }
        level_begin = level_end;
        if (level_begin == net.elements_.size()) {
            break;
        }
    }
    net.build_index();
    return net;
}

double measure_cover_radius(const BaseNet &net, int samples, std::uint64_t seed) {
    Rng rng(seed);
    double radius = 0.0;
    for (int i = 0; i < samples; ++i) {
        const Su2 target = haar_su2(rng);
        radius = std::max(radius, su2_distance(target, net.element(net.nearest(target))));
    }
    return radius;
}

void save_base_net(const BaseNet &net, const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw InvalidArgument("cannot write net cache '" + path + "'");
    }
    out << "qsim-sk-net v1 depth_cap=" << net.depth_cap() << " entries=" << net.size() << '\n';
    out << std::setprecision(17);
    for (std::size_t i = 0; i < net.size(); ++i) {
        const Word w = net.word(i);
        out << (w.empty() ? "." : w);
        const Matrix m = net.element(i).matrix();
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                out << ' ' << m(r, c).real() << ' ' << m(r, c).imag();
            }
        }
        out << '\n';
    }
    if (!out) {
        throw InvalidArgument("failed writing net cache '" + path + "'");
    }
}

BaseNet load_base_net(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open net cache '" + path + "'");
    }
    std::string header;
    std::getline(in, header);
    int depth_cap = -1;
    std::size_t entries = 0;
    if (std::sscanf(header.c_str(), "qsim-sk-net v1 depth_cap=%d entries=%zu", &depth_cap,
                    &entries) != 2 ||
        depth_cap < 0 || depth_cap > BaseNet::kMaxDepth) {
        throw ParseError("net cache '" + path + "' has an unrecognized header");
    }
    BaseNet net;
    net.depth_cap_ = depth_cap;
    std::unordered_map<Word, std::int32_t> index;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        Word w;
        ls >> w;
        if (w == ".") {
            w.clear();
        }
        Matrix m(2, 2);
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                double re = 0;
                double im = 0;
                if (!(ls >> re >> im)) {
                    throw ParseError("net cache entry " + std::to_string(net.size()) +
                                     " is truncated");
                }
                m(r, c) = Complex(re, im);
            }
        }
        validate_word(w);
        if (static_cast<int>(w.size()) > depth_cap) {
            throw ParseError("net cache word longer than its depth cap");
        }
        const Su2 q = word_su2(w);
        if ((q.matrix() - m).cwiseAbs().maxCoeff() > kCacheTolerance) {
            throw ParseError("net cache entry '" + w + "' does not match its word");
        }
        std::int32_t parent = -1;
        if (!w.empty()) {
            const auto it = index.find(w.substr(0, w.size() - 1));
            if (it == index.end()) {
                throw ParseError("net cache entry '" + w + "' has no prefix entry");
            }
            parent = it->second;
        }
        index.emplace(w, static_cast<std::int32_t>(net.elements_.size()));
        net.elements_.push_back(q);
        net.parent_.push_back(parent);
        net.last_letter_.push_back(w.empty() ? '\0' : w.back());
        net.lengths_.push_back(static_cast<std::uint8_t>(w.size()));
    }
    if (net.size() != entries || net.size() == 0 || net.word_length(0) != 0) {
        throw ParseError("net cache '" + path + "' entry count does not match its header");
    }
    net.build_index();
    return net;
}

BaseNet load_or_build_base_net(const std::string &path, int depth_cap) {
    try {
        BaseNet net = load_base_net(path);
        if (net.depth_cap() == depth_cap) {
            return net;
        }
    } catch (const ParseError &) {
    }
    BaseNet net = build_base_net(depth_cap);
    save_base_net(net, path);
    return net;
}

GroupCommutator balanced_commutator(const Su2 &delta) {
    Su2 d = delta.w < 0 ? negated(delta) : delta;
    const double s = std::sqrt(d.x * d.x + d.y * d.y + d.z * d.z);
    if (s == 0.0) {
        return {Su2{}, Su2{}};
    }
    const double theta = 2.0 * std::atan2(s, d.w);
    // sin^2(phi/2) = sqrt((1 - cos(theta/2)) / 2) = sqrt(sin(theta/4)^2).
    const double phi = 2.0 * std::asin(std::sqrt(std::sin(theta / 4.0)));
    const Su2 v = Su2::rotation(1, 0, 0, phi);
    const Su2 w = Su2::rotation(0, 1, 0, phi);
    const Su2 c = v * w * v.adjoint() * w.adjoint();
    const double cs = std::sqrt(c.x * c.x + c.y * c.y + c.z * c.z);
    const double m[3] = {c.x / cs, c.y / cs, c.z / cs};
    const double n[3] = {d.x / s, d.y / s, d.z / s};
    // Rotation S taking the commutator axis m onto n.
    double axis[3] = {m[1] * n[2] - m[2] * n[1], m[2] * n[0] - m[0] * n[2],
                      m[0] * n[1] - m[1] * n[0]};
    const double sin_a = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    const double cos_a = m[0] * n[0] + m[1] * n[1] + m[2] * n[2];
    Su2 rot;
    if (sin_a > 1e-15) {
        rot = Su2::rotation(axis[0] / sin_a, axis[1] / sin_a, axis[2] / sin_a,
                            std::atan2(sin_a, cos_a));
    } else if (cos_a < 0) {
        // Antiparallel: any axis orthogonal to m.
        const double p[3] = {std::abs(m[0]) < 0.9 ? 1.0 : 0.0, std::abs(m[0]) < 0.9 ? 0.0 : 1.0,
                             0.0};
        double o[3] = {m[1] * p[2] - m[2] * p[1], m[2] * p[0] - m[0] * p[2],
                       m[0] * p[1] - m[1] * p[0]};
        const double on = std::sqrt(o[0] * o[0] + o[1] * o[1] + o[2] * o[2]);
        rot = Su2::rotation(o[0] / on, o[1] / on, o[2] / on, kPi);
    }
    return {rot * v * rot.adjoint(), rot * w * rot.adjoint()};
}

namespace {

struct Approximation {
    Word word;
    Su2 element;
};

Approximation decompose(const Su2 &target, int level, const BaseNet &net) {
    if (level == 0) {
        const std::size_t i = net.nearest(target);
        return {net.word(i), net.element(i)};
    }
    const Approximation prev = decompose(target, level - 1, net);
    const GroupCommutator gc = balanced_commutator(target * prev.element.adjoint());
    const Approximation v = decompose(gc.v, level - 1, net);
    const Approximation w = decompose(gc.w, level - 1, net);
    // Matrix V W V^dagger W^dagger U_prev, so U_prev acts first.
    Word word = prev.word + word_dagger(w.word) + word_dagger(v.word) + w.word + v.word;
    word = simplify_word(word);
    const Su2 element = v.element * w.element * v.element.adjoint() * w.element.adjoint() *
                        prev.element;
    return {std::move(word), element};
}

} // namespace

GateSequence sk_decompose(const Matrix &target, int level, const BaseNet &net) {
    if (level < 0) {
        throw InvalidArgument("recursion level must be nonnegative");
    }
    if (unitarity_defect(target) > kUnitaryTolerance * 10) {
        throw DimensionError("synthesis target is not unitary");
    }
    const Su2 goal = Su2::from_matrix(target);
    GateSequence seq;
    seq.word = decompose(goal, level, net).word;
    seq.achieved_distance = su2_distance(word_su2(seq.word), goal);
    seq.target = target;
    seq.level = level;
    return seq;
}

GateSequence compile_to_accuracy(const Matrix &target, double eps, const BaseNet &net,
                                 int max_level) {
    if (!(eps > 0.0)) {
        throw InvalidArgument("accuracy must be positive");
    }
    double best = 1e300;
    for (int level = 0; level <= max_level; ++level) {
        GateSequence seq = sk_decompose(target, level, net);
        if (seq.achieved_distance <= eps) {
            return seq;
        }
        best = std::min(best, seq.achieved_distance);
    }
    throw AccuracyUnreachable(eps, best);
}

} // namespace qsim
