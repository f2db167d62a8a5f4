#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "qsim/errors.hpp"
#include "qsim/solovay_kitaev.hpp"

using namespace qsim;

namespace {

const BaseNet &net16() {
    static const BaseNet net = build_base_net(16);
    return net;
}

Eigen::MatrixXcd letter_matrix(char c) {
    Eigen::MatrixXcd m(2, 2);
    const double r = 1.0 / std::sqrt(2.0);
    if (c == 'H') {
        m << r, r, r, -r;
    } else {
        m << 1, 0, 0, std::polar(1.0, (c == 'T' ? 1.0 : -1.0) * oracle::kPi / 4);
    }
    return m;
}

/// Number of distinct elements, modulo global phase, among all words of
/// length <= depth.
std::size_t distinct_elements(int depth) {
    std::vector<Eigen::MatrixXcd> seen{Eigen::MatrixXcd::Identity(2, 2)};
    std::vector<Eigen::MatrixXcd> frontier = seen;
    for (int len = 1; len <= depth; ++len) {
        std::vector<Eigen::MatrixXcd> next;
        for (const auto &m : frontier) {
            for (char c : {'H', 'T', 't'}) {
                const Eigen::MatrixXcd p = letter_matrix(c) * m;
                // |tr(A^dagger B)| = 2 exactly when A and B agree up to phase.
                const bool dup = std::any_of(seen.begin(), seen.end(), [&](const auto &s) {
                    return std::abs((s.adjoint() * p).trace()) > 2.0 - 1e-9;
                });
                if (!dup) {
                    seen.push_back(p);
                    next.push_back(p);
                }
            }
        }
        frontier = std::move(next);
    }
    return seen.size();
}

Matrix haar_matrix(Rng &rng) { return haar_su2(rng).matrix(); }

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

std::string temp_path(const std::string &name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST(Su2, LettersMatchMatrices) {
    for (char c : {'H', 'T', 't'}) {
        EXPECT_LE(oracle::phase_minimized_distance(letter_su2(c).matrix(), letter_matrix(c)),
                  1e-12);
        EXPECT_LE(oracle::phase_minimized_distance(word_matrix(std::string(1, c)), letter_matrix(c)),
                  1e-12);
    }
    EXPECT_THROW(validate_word("HTx"), InvalidArgument);
}

TEST(Su2, WordOrderIsCircuitOrder) {
    const Matrix expected = letter_matrix('H') * letter_matrix('T');
    EXPECT_LE(oracle::phase_minimized_distance(word_matrix("TH"), expected), 1e-12);
    EXPECT_LE(oracle::phase_minimized_distance(word_su2("TH").matrix(), expected), 1e-12);
    EXPECT_LE(oracle::phase_minimized_distance(
                  circuit_unitary(word_circuit("TtHT")).matrix(), word_matrix("TtHT")),
              1e-12);
}

TEST(Su2, DaggerAndSimplify) {
    EXPECT_EQ(word_dagger("HTt"), "TtH");
    EXPECT_EQ(simplify_word("HH"), "");
    EXPECT_EQ(simplify_word("TTTTTTTT"), "");
    EXPECT_EQ(simplify_word("TTTTT"), "ttt");
    EXPECT_EQ(simplify_word("THHt"), "");
    Rng rng(61);
    for (int i = 0; i < 200; ++i) {
        std::string w;
        const int len = static_cast<int>(rng.below(30));
        for (int j = 0; j < len; ++j) {
            w += "HTt"[rng.below(3)];
        }
        const Word s = simplify_word(w);
        EXPECT_LE(s.size(), w.size());
        EXPECT_EQ(s.find("HH"), std::string::npos);
        EXPECT_LE(oracle::phase_minimized_distance(word_matrix(s), word_matrix(w)), 1e-12);
        EXPECT_LE(su2_distance(word_su2(w) * word_su2(word_dagger(w)), Su2{}), 1e-12);
    }
}

TEST(Su2, DistanceIsPhaseMinimized) {
    Rng rng(62);
    for (int i = 0; i < 50; ++i) {
        const Matrix a = random_unitary(2, rng);
        const Matrix b = random_unitary(2, rng);
        const double expected = oracle::phase_minimized_distance(a, b);
        EXPECT_NEAR(projective_distance(a, b), expected, 1e-9);
        EXPECT_NEAR(su2_distance(Su2::from_matrix(a), Su2::from_matrix(b)), expected, 1e-9);
    }
}

TEST(Su2, HaarMoments) {
    Rng rng(63);
    const int samples = 200000;
    double abs_w = 0.0;
    double wx = 0.0;
    double w2 = 0.0;
    double w4 = 0.0;
    double z2 = 0.0;
    for (int i = 0; i < samples; ++i) {
        const Su2 q = haar_su2(rng);
        ASSERT_NEAR(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z, 1.0, 1e-12);
        abs_w += std::abs(q.w);
        wx += q.w * q.x;
        w2 += q.w * q.w;
        w4 += std::pow(q.w, 4);
        z2 += q.z * q.z;
    }
    // The sign of q is not physical, so only even moments are checked against
    // the uniform measure on the 3-sphere: E|w| = 4 / (3 pi), E[w^2] = 1/4,
    // E[w^4] = 1/8, E[wx] = 0.
    EXPECT_NEAR(abs_w / samples, 4.0 / (3.0 * oracle::kPi), 0.005);
    EXPECT_NEAR(wx / samples, 0.0, 0.005);
    EXPECT_NEAR(w2 / samples, 0.25, 0.005);
    EXPECT_NEAR(z2 / samples, 0.25, 0.005);
    EXPECT_NEAR(w4 / samples, 0.125, 0.005);
}

TEST(BaseNet, DepthZero) {
    const auto net = build_base_net(0);
    ASSERT_EQ(net.size(), 1U);
    EXPECT_EQ(net.word(0), "");
    EXPECT_THROW(build_base_net(26), CapacityError);
    EXPECT_THROW(build_base_net(-1), CapacityError);
}

TEST(BaseNet, DepthThreeContents) {
    const auto net = build_base_net(3);
    std::vector<std::string> words;
    for (std::size_t i = 0; i < net.size(); ++i) {
        words.push_back(net.word(i));
        EXPECT_EQ(words.back().find("HH"), std::string::npos);
        EXPECT_EQ(net.word_length(i), static_cast<int>(words.back().size()));
    }
    for (const char *w : {"H", "T", "t", "HT", "TH", "TT", "tH", "Ht", "HTH", "THT"}) {
        EXPECT_NE(std::find(words.begin(), words.end(), w), words.end()) << w;
    }
}

TEST(BaseNet, SizeMatchesBruteForceEnumeration) {
    for (int depth = 0; depth <= 7; ++depth) {
        EXPECT_EQ(build_base_net(depth).size(), distinct_elements(depth)) << depth;
    }
}

TEST(BaseNet, EntriesMatchWords) {
    const auto &net = net16();
    for (std::size_t i = 0; i < net.size(); i += 7) {
        ASSERT_LE(su2_distance(net.element(i), word_su2(net.word(i))), 1e-12);
    }
}

TEST(BaseNet, NearestIsExhaustiveMinimum) {
    const auto net = build_base_net(10);
    Rng rng(64);
    for (int t = 0; t < 200; ++t) {
        const Su2 q = haar_su2(rng);
        double best = 10.0;
        for (std::size_t i = 0; i < net.size(); ++i) {
            best = std::min(best, su2_distance(q, net.element(i)));
        }
        EXPECT_NEAR(su2_distance(q, net.element(net.nearest(q))), best, 1e-15);
    }
}

TEST(BaseNet, CoverRadiusDepthSixteen) {
    const double eps0 = measure_cover_radius(net16());
    RecordProperty("cover_radius", std::to_string(eps0));
    EXPECT_LE(eps0, 0.14);
}

TEST(BaseNet, CacheRoundTrip) {
    const auto net = build_base_net(8);
    const auto path = temp_path("qsim_net_roundtrip.txt");
    save_base_net(net, path);
    const auto back = load_base_net(path);
    ASSERT_EQ(back.size(), net.size());
    EXPECT_EQ(back.depth_cap(), 8);
    for (std::size_t i = 0; i < net.size(); ++i) {
        ASSERT_EQ(back.word(i), net.word(i));
        ASSERT_LE(su2_distance(back.element(i), net.element(i)), 1e-12);
    }
    std::filesystem::remove(path);
}

TEST(BaseNet, CorruptCacheIsRejectedAndRebuilt) {
    const auto path = temp_path("qsim_net_corrupt.txt");
    save_base_net(build_base_net(4), path);
    std::string text;
    {
        std::ifstream in(path);
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    const auto pos = text.find("\nH ");
    ASSERT_NE(pos, std::string::npos);
    text[pos + 1] = 'T';
    {
        std::ofstream out(path);
        out << text;
    }
    EXPECT_THROW(load_base_net(path), ParseError);
    {
        std::ofstream out(path);
        out << "not a net\n";
    }
    EXPECT_THROW(load_base_net(path), ParseError);
    EXPECT_THROW(load_base_net(temp_path("qsim_net_missing.txt")), ParseError);

    const auto rebuilt = load_or_build_base_net(path, 4);
    EXPECT_EQ(rebuilt.size(), build_base_net(4).size());
    EXPECT_EQ(load_base_net(path).size(), rebuilt.size());
    std::filesystem::remove(path);
}

TEST(Commutator, ReproducesDelta) {
    Rng rng(65);
    for (int i = 0; i < 200; ++i) {
        const double angle = 0.3 * rng.uniform();
        const Su2 axis = haar_su2(rng);
        const double n = std::sqrt(axis.x * axis.x + axis.y * axis.y + axis.z * axis.z);
        const Su2 delta = Su2::rotation(axis.x / n, axis.y / n, axis.z / n, angle);
        const auto [v, w] = balanced_commutator(delta);
        EXPECT_LE(su2_distance(v * w * v.adjoint() * w.adjoint(), delta), 1e-12);
        // Balanced: V and W rotate by the same angle.
        EXPECT_NEAR(std::abs(v.w), std::abs(w.w), 1e-12);
    }
}

TEST(SkDecompose, Examples) {
    const auto &net = net16();
    const auto id = sk_decompose(Matrix::Identity(2, 2), 2, net);
    EXPECT_EQ(id.word, "");
    EXPECT_EQ(id.achieved_distance, 0.0);

    const auto h = sk_decompose(word_matrix("H"), 0, net);
    EXPECT_EQ(h.word, "H");
    EXPECT_LE(h.achieved_distance, 1e-15);

    const auto tht = compile_to_accuracy(word_matrix("THT"), 1e-6, net);
    EXPECT_LE(tht.achieved_distance, 1e-12);
    EXPECT_EQ(tht.level, 0);

    Matrix phase = Matrix::Identity(2, 2);
    phase(1, 1) = std::polar(1.0, 0.1);
    const auto l0 = sk_decompose(phase, 0, net);
    const auto l3 = sk_decompose(phase, 3, net);
    EXPECT_LT(l3.achieved_distance, l0.achieved_distance);
}

TEST(SkDecompose, WordsReproduceReportedDistance) {
    const auto &net = net16();
    Rng rng(66);
    for (int t = 0; t < 10; ++t) {
        const Matrix target = random_unitary(2, rng);
        for (int level = 0; level <= 3; ++level) {
            const auto seq = sk_decompose(target, level, net);
            validate_word(seq.word);
            EXPECT_EQ(seq.level, level);
            const Matrix product = word_matrix(seq.word);
            EXPECT_NEAR(projective_distance(product, target), seq.achieved_distance, 1e-12);
            EXPECT_NEAR(oracle::phase_minimized_distance(product, target), seq.achieved_distance,
                        1e-9);
        }
    }
}

TEST(SkDecompose, MedianDistanceDecreasesWithLevel) {
    const auto &net = net16();
    Rng rng(67);
    std::vector<std::vector<double>> by_level(7);
    for (int t = 0; t < 100; ++t) {
        const Matrix target = haar_matrix(rng);
        for (int level = 0; level <= 6; ++level) {
            by_level[level].push_back(sk_decompose(target, level, net).achieved_distance);
        }
    }
    for (int level = 0; level < 6; ++level) {
        EXPECT_LT(median(by_level[level + 1]), median(by_level[level])) << level;
    }
}

TEST(CompileToAccuracy, LooseToleranceNeedsNoRefinement) {
    Rng rng(68);
    for (int t = 0; t < 20; ++t) {
        const auto seq = compile_to_accuracy(haar_matrix(rng), 2.0, net16());
        EXPECT_EQ(seq.level, 0);
    }
}

TEST(CompileToAccuracy, HaarTargetsReachOnePercent) {
    Rng rng(69);
    for (int t = 0; t < 20; ++t) {
        const Matrix target = haar_matrix(rng);
        const auto seq = compile_to_accuracy(target, 0.01, net16());
        EXPECT_LE(seq.achieved_distance, 0.01);
        EXPECT_LE(projective_distance(word_matrix(seq.word), target), 0.01);
    }
}

TEST(CompileToAccuracy, UnreachableReportsBestDistance) {
    const auto net = build_base_net(2);
    Rng rng(70);
    const Matrix target = haar_matrix(rng);
    try {
        compile_to_accuracy(target, 1e-14, net, 1);
        FAIL() << "expected AccuracyUnreachable";
    } catch (const AccuracyUnreachable &e) {
        EXPECT_EQ(e.requested(), 1e-14);
        EXPECT_NEAR(e.best_distance(),
                    std::min(sk_decompose(target, 0, net).achieved_distance,
                             sk_decompose(target, 1, net).achieved_distance),
                    1e-15);
    }
    EXPECT_THROW(compile_to_accuracy(target, 0.0, net), InvalidArgument);
}
