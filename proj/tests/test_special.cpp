#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lrdlab/errors.hpp"
#include "lrdlab/special.hpp"
#include "oracles.hpp"

using namespace lrdlab;

TEST_CASE("log_gamma at integers and one half") {
    CHECK(std::abs(log_gamma(1.0)) <= 1e-16);
    CHECK(std::abs(log_gamma(2.0)) <= 1e-16);
    CHECK(log_gamma(0.5) == doctest::Approx(0.57236494292470008707).epsilon(1e-15));
}

TEST_CASE("log_gamma against 50-digit oracle") {
    for (double x : {1e-8, 0.01, 0.3, 0.7, 0.999, 1.001, 1.5, 1.999, 2.5, 3.7, 11.2, 170.3, 1e5}) {
        const double ref = oracle::lgamma50(x);
        CAPTURE(x);
        CHECK(std::abs(log_gamma(x) - ref) <= 4e-16 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("log_gamma rejects non-positive arguments") {
    CHECK_THROWS_AS((void)log_gamma(0.0), DomainError);
    CHECK_THROWS_AS((void)log_gamma(-1.5), DomainError);
}

TEST_CASE("c_of_H") {
    CHECK(c_of_H(0.5) == doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-15));
    CHECK(c_of_H(0.8) == doctest::Approx(0.13373984546548752074).epsilon(1e-14));
    for (double H : {0.1, 0.35, 0.6, 0.7, 0.95}) {
        CAPTURE(H);
        CHECK(c_of_H(H) == doctest::Approx(oracle::c_of_H50(H)).epsilon(1e-14));
    }
    const double near_one = c_of_H(0.999);
    CHECK(std::isfinite(near_one));
    CHECK(near_one > 0.0);
    CHECK_THROWS_AS((void)c_of_H(0.0), DomainError);
    CHECK_THROWS_AS((void)c_of_H(1.0), DomainError);
}

TEST_CASE("frac_diff_coeffs") {
    const auto id = frac_diff_coeffs(0.0, 3);
    REQUIRE(id.size() == 4);
    CHECK(id[0] == 1.0);
    CHECK(id[1] == 0.0);
    CHECK(id[2] == 0.0);
    CHECK(id[3] == 0.0);

    const auto psi = frac_diff_coeffs(-0.3, 50);
    CHECK(psi[1] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(psi[50] == doctest::Approx(0.021572911058049805461).epsilon(1e-12));
    CHECK(psi[50] == doctest::Approx(oracle::psi_gamma_ratio(-0.3, 50)).epsilon(1e-12));
    CHECK(psi[7] == doctest::Approx(oracle::psi_gamma_ratio(-0.3, 7)).epsilon(1e-13));

    CHECK_THROWS_AS((void)frac_diff_coeffs(0.5, 3), DomainError);
    CHECK_THROWS_AS((void)frac_diff_coeffs(-1.0, 3), DomainError);
}

TEST_CASE("fgn_lattice_sum") {
    const HurstParam H(0.8);
    CHECK(fgn_lattice_sum(0.17, H) == doctest::Approx(fgn_lattice_sum(-0.17, H)).epsilon(1e-12));

    double prev = 0.0;
    for (long J : {10L, 100L, 1000L}) {
        const double partial = oracle::lattice_sum_brute(0.25, 0.8, J);
        CHECK(partial > prev);
        prev = partial;
    }
    const double brute = oracle::lattice_sum_brute(0.25, 0.8, 10'000'000);
    CHECK(prev < brute);
    CHECK(fgn_lattice_sum(0.25, H) == doctest::Approx(brute).epsilon(1e-9));
    CHECK(fgn_lattice_sum(0.25, H) == doctest::Approx(0.33695839488634343918).epsilon(1e-12));

    CHECK_THROWS_AS((void)fgn_lattice_sum(0.0, H), DomainError);
}

TEST_CASE("log_sinc_pi near zero") {
    CHECK(log_sinc_pi(0.0) == 0.0);
    for (double x : {1e-9, 1e-5, 1e-3, 0.1, 0.3, 0.5}) {
        const double pix = std::numbers::pi * x;
        const double ref = x < 1e-3 ? -pix * pix / 6.0 - std::pow(pix, 4) / 180.0 : std::log(std::sin(pix) / pix);
        CAPTURE(x);
        CHECK(log_sinc_pi(x) == doctest::Approx(ref).epsilon(1e-13));
    }
}

TEST_CASE("HurstParam") {
    CHECK(HurstParam(0.8).d() == doctest::Approx(0.3));
    CHECK(HurstParam(0.8).is_lrd());
    CHECK_FALSE(HurstParam(0.5).is_lrd());
    CHECK_THROWS_AS(HurstParam(0.0), DomainError);
    CHECK_THROWS_AS(HurstParam(1.2), DomainError);
    CHECK_THROWS_AS(HurstParam(0.4).require_lrd("test"), DomainError);
}

TEST_CASE("CompensatedSum keeps cancelled mass") {
    CompensatedSum s;
    s += 1.0;
    s += 1e100;
    s += 1.0;
    s += -1e100;
    CHECK(s.value() == 2.0);
}
