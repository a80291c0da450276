#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <thread>

#include "lrdlab/covariance.hpp"
#include "lrdlab/errors.hpp"
#include "oracles.hpp"

using namespace lrdlab;

namespace {

ProcessSpec farima(double d, double v = 1.0) {
    return ProcessSpec::fracdiff(0.5 + d, ShortMemorySpec::white_noise(v));
}

}  // namespace

TEST_CASE("fgn_acvf small lags") {
    CHECK(fgn_acvf(HurstParam(0.5), 1.0, 0) == 1.0);
    CHECK(std::abs(fgn_acvf(HurstParam(0.5), 1.0, 1)) < 1e-16);
    CHECK(fgn_acvf(HurstParam(0.8), 1.0, 1) == doctest::Approx(0.51571656651039808235).epsilon(1e-15));
    CHECK(fgn_acvf(HurstParam(0.8), 3.0, 0) == 3.0);
}

TEST_CASE("fgn_acvf stable form against 200-bit differencing") {
    for (double H : {0.55, 0.8, 0.95}) {
        for (long n : {2L, 3L, 17L, 999L, 1000L, 1001L, 5000L, 1000000L}) {
            CAPTURE(H);
            CAPTURE(n);
            const double ref = oracle::fgn_acvf200(H, 1.0, n);
            CHECK(fgn_acvf(HurstParam(H), 1.0, static_cast<std::size_t>(n)) == doctest::Approx(ref).epsilon(1e-13));
        }
    }
    CHECK(fgn_acvf(HurstParam(0.8), 1.0, 1000000) == doctest::Approx(0.0019109144186568759797).epsilon(1e-10));
}

TEST_CASE("fGn Taylor coefficients") {
    const auto c = fgn_taylor_coefficients(0.8, 3);
    CHECK(c[0] == doctest::Approx(1.6 * 0.6 / 2.0).epsilon(1e-15));
    CHECK(c[1] == doctest::Approx(1.6 * 0.6 * -0.4 * -1.4 / 24.0).epsilon(1e-15));
    for (std::size_t n : {2u, 10u, 100u}) {
        CAPTURE(n);
        CHECK(fgn_acvf_taylor(0.8, 1.0, n, 30) == doctest::Approx(oracle::fgn_acvf200(0.8, 1.0, long(n))).epsilon(1e-12));
    }
}

TEST_CASE("FARIMA(0,d,0) closed form") {
    CHECK(farima00_acvf(0.3, 1.0, 1) / farima00_acvf(0.3, 1.0, 0) == doctest::Approx(3.0 / 7.0).epsilon(1e-15));
    for (long n : {0L, 1L, 5L, 100L, 2000L}) {
        CAPTURE(n);
        CHECK(farima00_acvf(0.3, 2.0, std::size_t(n)) == doctest::Approx(oracle::farima00_gamma_form(0.3, 2.0, n)).epsilon(1e-12));
    }
    CHECK(farima00_acvf(1e-9, 1.0, 1) / farima00_acvf(1e-9, 1.0, 0) < 1e-8);
    CHECK_THROWS_AS((void)farima00_acvf(0.5, 1.0, 1), DomainError);
    CHECK_THROWS_AS((void)farima00_acvf(0.0, 1.0, 1), DomainError);

    const auto seq = farima00_acvf_sequence(0.3, 1.0, 10000);
    double lo = 1e300;
    double hi = 0.0;
    for (std::size_t n = 1000; n <= 10000; ++n) {
        const double c = seq[n] * std::pow(double(n), 2.0 - 1.6);
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    CHECK(lo > 0.0);
    CHECK(hi / lo - 1.0 < 0.02);

    const auto anti = farima00_acvf_sequence(-0.2, 1.0, 5);
    CHECK(anti[1] / anti[0] == doctest::Approx(-0.2 / 1.2).epsilon(1e-14));
}

TEST_CASE("G coefficients") {
    const auto G = g_fourier_coeffs(HurstParam(0.8), ShortMemorySpec::white_noise(1.0), 2000);
    CHECK(G.sum() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(G.at(-7) == G.at(7));
    double lo = 1e300;
    double hi = 0.0;
    for (long j = 100; j <= 2000; ++j) {
        const double e = std::pow(double(j), 3) * std::abs(G.at(j));
        lo = std::min(lo, e);
        hi = std::max(hi, e);
    }
    CHECK(hi / lo <= 10.0);
    CHECK(G.tail_bound < 1e-9);

    const auto near_half = g_fourier_coeffs(HurstParam(0.5 + 1e-6), ShortMemorySpec::white_noise(1.0), 50);
    CHECK(near_half.at(0) == doctest::Approx(1.0).epsilon(1e-4));
    for (long j = 1; j <= 50; ++j) CHECK(std::abs(near_half.at(j)) < 1e-4);
}

TEST_CASE("ACVF routes") {
    CHECK(acvf(ProcessSpec::fgn(0.8), 10).route() == AcvfRoute::ClosedForm);
    CHECK(acvf(farima(0.3), 10).route() == AcvfRoute::ClosedForm);
    const auto x2 = ProcessSpec::fracdiff(0.8, ShortMemorySpec::arma({0.3}, {0.7}, 1.0));
    CHECK(acvf(x2, 10).route() == AcvfRoute::SpectralSubtraction);
    const auto w = ProcessSpec::fracdiff(0.5, ShortMemorySpec::white_noise(1.0));
    CHECK(acvf(ProcessSpec::sum({{farima(0.3), 1.0}, {w, 0.1}}), 10).route() == AcvfRoute::SumOfComponents);
    CHECK(to_string(AcvfRoute::SpectralSubtraction) == "spectral_subtraction");
}

TEST_CASE("spectral subtraction reproduces the FARIMA(0,0.3,0) closed form") {
    const auto quad = acvf_by_quadrature(farima(0.3), 200);
    CHECK(quad.route() == AcvfRoute::SpectralSubtraction);
    double worst = 0.0;
    for (std::size_t n = 0; n <= 200; ++n) worst = std::max(worst, std::abs(quad(long(n)) - farima00_acvf(0.3, 1.0, n)));
    CHECK(worst <= 1e-8);
}

TEST_CASE("convolution route agrees with quadrature for FARIMA(1,0.3,1)") {
    const auto x2 = ProcessSpec::fracdiff(0.8, ShortMemorySpec::arma({0.3}, {0.7}, 1.0));
    const auto conv = acvf_by_convolution(x2, 50);
    const auto quad = acvf(x2, 50);
    CHECK(conv.route() == AcvfRoute::Convolution);
    double worst = 0.0;
    for (long n = 0; n <= 50; ++n) worst = std::max(worst, std::abs(conv(n) - quad(n)));
    CHECK(worst <= 1e-6);
}

TEST_CASE("sum route is additive") {
    const auto x1 = farima(0.3);
    const auto w = ProcessSpec::fracdiff(0.5, ShortMemorySpec::white_noise(1.0));
    const auto z1 = acvf(ProcessSpec::sum({{x1, 1.0}, {w, 0.1}}), 20);
    const auto base = acvf(x1, 20);
    CHECK(z1(0) == doctest::Approx(base(0) + 0.1).epsilon(1e-15));
    for (long n = 1; n <= 20; ++n) CHECK(z1(n) == doctest::Approx(base(n)).epsilon(1e-15));
}

TEST_CASE("short-memory FracDiff via quadrature") {
    const auto arma = ProcessSpec::fracdiff(0.5, ShortMemorySpec::arma({0.5}, {}, 1.0));
    const auto t = acvf(arma, 10);
    // AR(1): gamma(n) = 0.5^n / (1 - 0.25)
    for (long n = 0; n <= 10; ++n) CHECK(t(n) == doctest::Approx(std::pow(0.5, double(n)) / 0.75).epsilon(1e-11).scale(1e-13));
}

TEST_CASE("unit variance") {
    const auto x2 = ProcessSpec::fracdiff(0.8, ShortMemorySpec::arma({0.3}, {0.7}, 1.0));
    CHECK(acvf(unit_variance(x2), 0).variance() == doctest::Approx(1.0).epsilon(1e-12));
    const auto x1 = unit_variance(farima(0.3));
    CHECK(acvf(x1, 1)(1) == doctest::Approx(3.0 / 7.0).epsilon(1e-14));
}

TEST_CASE("table lazily extends and is safe to share") {
    const auto t = acvf(ProcessSpec::fgn(0.8), 4);
    CHECK(t.size() >= 5);
    const double far = t(5000);
    CHECK(t.size() >= 5001);
    CHECK(far == doctest::Approx(fgn_acvf(HurstParam(0.8), 1.0, 5000)).epsilon(1e-15));
    CHECK(t(-3) == t(3));

    const auto x2 = ProcessSpec::fracdiff(0.8, ShortMemorySpec::arma({0.3}, {0.7}, 1.0));
    const auto shared = acvf(x2, 0);
    std::vector<double> got(4, 0.0);
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < got.size(); ++i) pool.emplace_back([&, i] { got[i] = shared(long(100 + 50 * i)); });
    pool.clear();
    const auto fresh = acvf(x2, 250);
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(fresh(long(100 + 50 * i))).epsilon(1e-9));
}
