#include <cmath>
#include <cstdint>
#include <limits>

#include "doctest.h"

#include "discordlab/channels.hpp"
#include "discordlab/rng.hpp"
#include "discordlab/state_sampling.hpp"

using namespace discordlab;

namespace {

// Feeds chosen uniform01 values; bit pattern chosen so that uniform01
// reproduces each value exactly (values must be dyadic).
struct FakeDraws {
    std::vector<double> values;
    size_t next = 0;

    using result_type = std::uint64_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() {
        const double v = values.at(next++);
        return static_cast<result_type>(v * 0x1.0p53) << 11;
    }
};

}  // namespace

TEST_CASE("uniform weights") {
    const WeightVector w2 = uniform_weights(2);
    CHECK(w2.weights() == Vec{0.5, 0.5});
    CHECK(w2.entropy_bits() == doctest::Approx(1.0).epsilon(1e-12));

    const WeightVector w3 = uniform_weights(3);
    REQUIRE(w3.size() == 6);
    for (int i = 0; i < 6; ++i) CHECK(w3[i] == doctest::Approx(1.0 / 6.0));
    CHECK(w3.entropy_bits() == doctest::Approx(std::log2(6.0)).epsilon(1e-12));

    CHECK(uniform_weights(6).entropy_bits() == doctest::Approx(std::log2(720.0)).epsilon(1e-12));
    CHECK(uniform_weights(6).entropy_bits() == doctest::Approx(9.492).epsilon(1e-4));

    CHECK_THROWS_AS(uniform_weights(9), CapacityError);
}

TEST_CASE("low-entropy weights follow the top-up recipe") {
    // Hand evaluation with draws (0.5, 0.5): w1 = 0.5/2! = 0.25, then
    // w2 drawn from [0.75, 1) lands at 0.875; normalized by 1.125.
    FakeDraws draws{{0.5, 0.5}};
    const WeightVector w = low_entropy_weights(2, draws);
    CHECK(w[0] == doctest::Approx(0.25 / 1.125).epsilon(1e-15));
    CHECK(w[1] == doctest::Approx(0.875 / 1.125).epsilon(1e-15));
    CHECK(w[1] > 0.5);  // one dominant weight

    // Degenerate first draw: the recipe still produces a valid vector.
    FakeDraws zero{{0.0, 0.0}};
    const WeightVector w0 = low_entropy_weights(2, zero);
    CHECK(w0.weights() == Vec{0.0, 1.0});
}

TEST_CASE("low-entropy weights sit far below the uniform entropy") {
    const double uniform_entropy = uniform_weights(6).entropy_bits();
    double max_seen = 0.0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        auto rng = substream(seed, 0);
        const WeightVector w = low_entropy_weights(6, rng);
        max_seen = std::max(max_seen, w.entropy_bits());
        CHECK(w.entropy_bits() < uniform_entropy);
    }
    CHECK(max_seen < 0.5 * uniform_entropy);
}

TEST_CASE("weight interpolation") {
    const WeightVector down(Vec{1.0, 0.0});
    const WeightVector up(Vec{0.5, 0.5});
    CHECK(interpolate_weights(down, up, 0.0) == up);
    CHECK(interpolate_weights(down, up, 1.0) == down);
    const WeightVector mid = interpolate_weights(down, up, 0.5);
    CHECK(mid[0] == doctest::Approx(0.75));
    CHECK(mid[1] == doctest::Approx(0.25));
    CHECK_THROWS_AS(interpolate_weights(down, up, 1.5), ContractError);
    CHECK_THROWS_AS(interpolate_weights(down, up, -0.1), ContractError);
}

TEST_CASE("channel assembly") {
    const auto table2 = enumerate_reverse_lex(2);

    // weights (mu at the swap index, 1 - mu at the identity index)
    const double mu = 0.3;
    const Channel e = assemble_channel(WeightVector(Vec{mu, 1 - mu}), table2);
    CHECK(e.matrix() == Matrix::from_rows({{1 - mu, mu}, {mu, 1 - mu}}));

    CHECK(identity_channel(table2).matrix() == Matrix::identity(2));
    CHECK(identity_channel(table2).entropy_bits() == 0.0);

    const auto table3 = enumerate_reverse_lex(3);
    const Channel flat = assemble_channel(uniform_weights(3), table3);
    // oracle: average the six dense permutation matrices
    Matrix avg(3, 3);
    for (int s = 0; s < table3.size(); ++s) {
        const Matrix pi = permutation_matrix(table3[s]);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) avg(i, j) += pi(i, j) / 6.0;
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            CHECK(flat.matrix()(i, j) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
            CHECK(flat.matrix()(i, j) == doctest::Approx(avg(i, j)).epsilon(1e-15));
        }

    CHECK_THROWS_AS(assemble_channel(WeightVector(Vec{1.0}), table2), DimensionError);
}

TEST_CASE("sampled channels are doubly stochastic with entropy in range") {
    for (int m : {2, 3, 4, 5}) {
        const auto table = enumerate_reverse_lex(m);
        const double max_entropy = std::log2(static_cast<double>(factorial(m)));
        for (std::uint64_t c = 0; c < 50; ++c) {
            auto rng = substream(31, c);
            const WeightVector w = interpolate_weights(low_entropy_weights(m, rng),
                                                       uniform_weights(m),
                                                       static_cast<double>(c) / 49.0);
            const Channel e = assemble_channel(w, table);
            for (int i = 0; i < m; ++i) {
                double row = 0.0, col = 0.0;
                for (int j = 0; j < m; ++j) {
                    row += e.matrix()(i, j);
                    col += e.matrix()(j, i);
                    CHECK(e.matrix()(i, j) >= 0.0);
                    CHECK(e.matrix()(i, j) <= 1.0 + 1e-12);
                }
                CHECK(std::abs(row - 1.0) <= 1e-12);
                CHECK(std::abs(col - 1.0) <= 1e-12);
            }
            CHECK(e.entropy_bits() >= 0.0);
            CHECK(e.entropy_bits() <= max_entropy + 1e-12);
        }
    }
}

TEST_CASE("two-bit Birkhoff weights round-trip") {
    const auto table = enumerate_reverse_lex(2);
    for (double mu : {0.0, 0.1, 0.35, 0.5, 0.9, 1.0}) {
        const Channel e = assemble_channel(WeightVector(Vec{mu, 1 - mu}), table);
        // recover the weight pair from the symmetric bistochastic matrix
        CHECK(e.matrix()(0, 1) == mu);
        CHECK(e.matrix()(0, 0) == 1 - mu);
    }
}

TEST_CASE("channel application") {
    const auto table = enumerate_reverse_lex(2);
    const JointState p = JointState::from_rows({{0.4, 0.1}, {0.1, 0.4}});
    CHECK(apply_channel(p, identity_channel(table)) == p);

    const Channel half = assemble_channel(WeightVector(Vec{0.5, 0.5}), table);
    const JointState diag = JointState::from_rows({{0.5, 0}, {0, 0.5}});
    const JointState blurred = apply_channel(diag, half);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(blurred(i, j) == doctest::Approx(0.25));

    // 0 -> 0 with probability 2/3: rows mix as (2/3 p00 + 1/3 p01, ...)
    const Channel third = assemble_channel(WeightVector(Vec{1.0 / 3.0, 2.0 / 3.0}), table);
    const JointState mixed = apply_channel(p, third);
    CHECK(mixed(0, 0) == doctest::Approx(2.0 / 3.0 * 0.4 + 1.0 / 3.0 * 0.1));
    CHECK(mixed(0, 1) == doctest::Approx(1.0 / 3.0 * 0.4 + 2.0 / 3.0 * 0.1));

    CHECK_THROWS_AS(apply_channel(p, identity_channel(enumerate_reverse_lex(3))), DimensionError);
}

TEST_CASE("channel application preserves totals, first marginal and entropy order") {
    auto rng = substream(41, 0);
    for (int m : {2, 3, 4}) {
        const auto table = enumerate_reverse_lex(m);
        for (int trial = 0; trial < 40; ++trial) {
            const JointState p = sample_random_joint(m, rng);
            const WeightVector w = interpolate_weights(low_entropy_weights(m, rng),
                                                       uniform_weights(m), uniform01(rng));
            const Channel e = assemble_channel(w, table);
            const JointState q = apply_channel(p, e);

            double total = 0.0;
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) total += q(i, j);
            CHECK(total == doctest::Approx(1.0).epsilon(1e-13));

            const ProbVector ma_p = marginal_a(p), ma_q = marginal_a(q);
            for (int i = 0; i < m; ++i) CHECK(std::abs(ma_p[i] - ma_q[i]) <= 1e-12);

            CHECK(entropy(q) >= entropy(p) - 1e-10);
        }
    }
}
