#include <doctest.h>

#include <cmath>

#include "lrdlab/errors.hpp"
#include "lrdlab/sampler.hpp"

using namespace lrdlab;

namespace {

struct LagStats {
    double mean;
    double se;
};

// Mean over paths of gamma_hat(k) = 1/(N-k) sum x_t x_{t+k}, with its standard error.
LagStats lag_stats(const std::vector<SamplePath>& paths, std::size_t k) {
    double s = 0.0;
    double s2 = 0.0;
    for (const auto& p : paths) {
        const auto& x = p.values;
        double acc = 0.0;
        for (std::size_t t = 0; t + k < x.size(); ++t) acc += x[t] * x[t + k];
        const double g = acc / double(x.size() - k);
        s += g;
        s2 += g * g;
    }
    const double n = double(paths.size());
    const double mean = s / n;
    const double var = (s2 - n * mean * mean) / (n - 1.0);
    return {mean, std::sqrt(var / n)};
}

}  // namespace

TEST_CASE("Philox4x32-10 known-answer vectors") {
    using W = std::array<std::uint32_t, 4>;
    CHECK(Philox4x32(0, 0).block(0) == W{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(Philox4x32(~0ull, ~0ull).block(~0ull) == W{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(Philox4x32(0x299f31d0a4093822ull, 0x0370734413198a2eull).block(0x85a308d3243f6a88ull) ==
          W{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("uniform and normal draws") {
    Philox4x32 rng(42, 0);
    double s = 0.0;
    double s2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
    }
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        s += z;
        s2 += z * z;
    }
    CHECK(std::abs(s / n) < 4.0 / std::sqrt(double(n)));
    CHECK(std::abs(s2 / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("reproducible paths") {
    const auto spec = ProcessSpec::fgn(0.8);
    const auto a = sample(spec, 512, 7);
    const auto b = sample(spec, 512, 7);
    CHECK(a.values == b.values);
    const auto c = sample(spec, 512, 8);
    CHECK(a.values != c.values);
    const auto many = sample_paths(spec, 512, 3, 7);
    CHECK(many[0].values == a.values);
    CHECK(many[2].values == sample(spec, 512, 7, {}, 2).values);
    CHECK(many[1].stream == 1);
}

TEST_CASE("white noise has no lag-one correlation") {
    const auto spec = ProcessSpec::fracdiff(0.5, ShortMemorySpec::white_noise(1.0));
    const auto paths = sample_paths(spec, 4096, 200, 2024);
    const auto s0 = lag_stats(paths, 0);
    const auto s1 = lag_stats(paths, 1);
    CHECK(std::abs(s0.mean - 1.0) <= 3.0 * s0.se);
    CHECK(std::abs(s1.mean) <= 3.0 * s1.se);
}

TEST_CASE("fGn lag-one covariance") {
    const auto spec = ProcessSpec::fgn(0.8);
    const auto paths = sample_paths(spec, 4096, 200, 99);
    const auto s1 = lag_stats(paths, 1);
    CHECK(std::abs(s1.mean - 0.51571656651039808235) <= 3.0 * s1.se);
}

TEST_CASE("embedding size and preconditions") {
    const auto t = acvf(ProcessSpec::fgn(0.8), 100);
    const CirculantEmbedding emb(t, 101);
    CHECK(emb.length() == 101);
    CHECK(emb.embedding_size() == 200);
    CHECK_FALSE(emb.clipped());
    CHECK_THROWS_AS((void)sample(ProcessSpec::fgn(0.8), 1, 1), DomainError);
}
