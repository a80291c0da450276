#include <doctest.h>

#include <cmath>
#include <random>

#include "lrdlab/errors.hpp"
#include "lrdlab/vtf.hpp"
#include "oracles.hpp"

using namespace lrdlab;

namespace {

ProcessSpec white() { return ProcessSpec::fracdiff(0.5, ShortMemorySpec::white_noise(1.0)); }
ProcessSpec farima(double d) { return ProcessSpec::fracdiff(0.5 + d, ShortMemorySpec::white_noise(1.0)); }

}  // namespace

TEST_CASE("double integration") {
    const std::vector<double> delta{1.0};
    const auto Id = double_integrate(delta, 6);
    for (std::size_t n = 0; n <= 6; ++n) CHECK(Id[n] == double(n));

    const std::vector<double> ones(20, 1.0);
    const auto I1 = double_integrate(ones, 15);
    for (std::size_t n = 0; n <= 15; ++n) CHECK(I1[n] == double(n * n));

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> a(8);
    for (auto& x : a) x = u(rng);
    const auto Ia = double_integrate(a, 20);
    for (std::size_t n = 0; n <= 20; ++n) {
        CAPTURE(n);
        CHECK(Ia[n] == doctest::Approx(oracle::double_integrate_nested(a, n)).epsilon(1e-14).scale(1e-14));
    }
}

TEST_CASE("VTF basics") {
    const auto w = vtf(acvf(white(), 10), 5);
    for (long n = 0; n <= 5; ++n) CHECK(w(n) == doctest::Approx(double(n)).epsilon(1e-15));
    CHECK_THROWS_AS((void)w(6), CoverageError);

    const auto f = vtf(acvf(ProcessSpec::fgn(0.8), 10), 10);
    CHECK(f(4) == doctest::Approx(9.1895868399762811859).epsilon(1e-14));

    const auto t = acvf(ProcessSpec::fracdiff(0.8, ShortMemorySpec::arma({0.3}, {0.7}, 1.0)), 10);
    const auto v = vtf(t, 10);
    CHECK(v(2) == doctest::Approx(2 * t(0) + 2 * t(1)).epsilon(1e-14));
    CHECK(v.variance() == doctest::Approx(t(0)).epsilon(1e-15));
}

TEST_CASE("prefix-sum VTF equals the literal double sum") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> g(65);
        for (auto& x : g) x = u(rng);
        const auto Ig = double_integrate(g, 64);
        for (std::size_t n = 1; n <= 64; ++n) {
            const double ref = oracle::vtf_nested(g, n);
            CHECK(std::abs(Ig[n] - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
        }
    }
}

TEST_CASE("aggregation") {
    const auto t = acvf(farima(0.3), 0);
    const auto v = vtf(t, 300);
    const auto a1 = aggregate_vtf(v, 1);
    for (long n = 0; n <= 20; ++n) CHECK(a1(n) == v(n));

    const auto f = vtf(acvf(ProcessSpec::fgn(0.8, 2.0), 0), 30);
    const auto a10 = aggregate_vtf(f, 10);
    CHECK(a10(3) == doctest::Approx(2.0 * std::pow(10.0, -0.4) * std::pow(3.0, 1.6)).epsilon(1e-13));
    CHECK(a10(3) == doctest::Approx(f(30) / 100.0).epsilon(1e-15));

    const auto w = vtf(acvf(white(), 0), 64);
    CHECK(aggregate_vtf(w, 8).variance() == doctest::Approx(1.0 / 8.0).epsilon(1e-15));

    CHECK(std::abs(aggregate_ctf(v, 100, 2) - 3.0314331330207963513) < 1e-3);
    const CtfView rho(v);
    CHECK(aggregate_ctf(v, 1, 7) == doctest::Approx(rho(7)).epsilon(1e-15));
}

TEST_CASE("fixed-point invariance of the CTF") {
    for (double H : {0.6, 0.8, 0.95}) {
        const auto v = vtf(acvf(ProcessSpec::fgn(H, 1.7), 0), 1000);
        double worst = 0.0;
        for (std::size_t m = 1; m <= 100; ++m) {
            for (std::size_t n = 1; n <= 10; ++n) {
                worst = std::max(worst, std::abs(aggregate_ctf(v, m, n) - std::pow(double(n), 2 * H)));
            }
        }
        CAPTURE(H);
        CHECK(worst <= 1e-12 * std::pow(10.0, 2 * H));
    }
}

TEST_CASE("fixed point of a spec") {
    const auto fp = fixed_point_of(unit_variance(farima(0.3)));
    CHECK(fp.H.value() == 0.8);
    CHECK(fp.V == doctest::Approx(0.90396776880151064).epsilon(1e-13));
    CHECK(fp.omega(4.0) == doctest::Approx(fp.V * 9.1895868399762811859).epsilon(1e-14));
    CHECK(fp.rho(2.0) == doctest::Approx(3.0314331330207963513).epsilon(1e-15));
    CHECK(fp.omega_aggregated(10, 3) == doctest::Approx(fp.omega(30) / 100).epsilon(1e-14));
}

TEST_CASE("symmetric convolution") {
    const std::vector<double> a{2.0, -1.0, 3.0};
    const std::vector<double> b{1.0, 4.0};
    const auto c = symmetric_convolve(a, b);
    const auto ref = oracle::convolve_brute(a, b);
    REQUIRE(c.size() == ref.size());
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == doctest::Approx(ref[i]));
}

TEST_CASE("double integration of a convolution") {
    const std::vector<double> delta{1.0};
    std::vector<double> b{1.0, -1.0, 1.0, 1.0, -1.0, 1.0, -1.0, -1.0, 1.0};
    CHECK(conv_double_int_identity_check(b, delta, 40) == 0.0);
    CHECK(conv_double_int_identity_check(delta, b, 40) == 0.0);

    std::mt19937_64 rng(3);
    std::bernoulli_distribution coin(0.5);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> a(9);
        for (auto& x : a) x = coin(rng) ? 1.0 : -1.0;
        for (auto& x : b) x = coin(rng) ? 1.0 : -1.0;
        CHECK(conv_double_int_identity_check(a, b, 40) < 1e-12);
    }
}
