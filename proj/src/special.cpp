#include "lrdlab/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace lrdlab {

HurstParam::HurstParam(double H) : H_(H) {
    if (!(H > 0.0 && H <= 1.0)) {
        throw DomainError("Hurst parameter must lie in (0, 1], got " + std::to_string(H));
    }
}

void HurstParam::require_lrd(const char* what) const {
    if (!is_lrd()) {
        throw DomainError(std::string(what) + " requires H in (1/2, 1), got " + std::to_string(H_));
    }
}

void Tolerance::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_terms == 0) {
        throw ConfigError("tolerance fields must be strictly positive");
    }
}

namespace {

// zeta(k) - 1 for k = 2..kMaxZeta, by direct summation plus an Euler-Maclaurin tail.
constexpr int kMaxZeta = 64;

std::array<double, kMaxZeta + 1> make_zeta_minus_one() {
    std::array<double, kMaxZeta + 1> z{};
    constexpr int N = 64;
    for (int k = 2; k <= kMaxZeta; ++k) {
        const double s = k;
        CompensatedSum acc;
        for (int n = N - 1; n >= 2; --n) acc += std::pow(n, -s);
        const double b = N;
        acc += std::pow(b, 1.0 - s) / (s - 1.0);
        acc += 0.5 * std::pow(b, -s);
        acc += s / 12.0 * std::pow(b, -s - 1.0);
        acc += -s * (s + 1.0) * (s + 2.0) / 720.0 * std::pow(b, -s - 3.0);
        acc += s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) / 30240.0 * std::pow(b, -s - 5.0);
        z[static_cast<std::size_t>(k)] = acc.value();
    }
    return z;
}

const std::array<double, kMaxZeta + 1>& zeta_minus_one() {
    static const auto table = make_zeta_minus_one();
    return table;
}

constexpr double kEulerGamma = 0.57721566490153286061;

// ln Gamma(1 + z), |z| <= 1/2.
double log_gamma_near_one(double z) {
    const auto& zm1 = zeta_minus_one();
    CompensatedSum acc;
    double zk = -z;
    for (int k = 2; k <= kMaxZeta; ++k) {
        zk *= -z;
        const double term = (zm1[static_cast<std::size_t>(k)] + 1.0) * zk / k;
        acc += term;
        if (std::abs(term) < 1e-18 * std::abs(z)) break;
    }
    acc += -kEulerGamma * z;
    return acc.value();
}

// ln Gamma(2 + z), |z| <= 1/2.
double log_gamma_near_two(double z) {
    const auto& zm1 = zeta_minus_one();
    CompensatedSum acc;
    double zk = -z;
    for (int k = 2; k <= kMaxZeta; ++k) {
        zk *= -z;
        const double term = zm1[static_cast<std::size_t>(k)] * zk / k;
        acc += term;
        if (std::abs(term) < 1e-18 * std::abs(z)) break;
    }
    acc += (1.0 - kEulerGamma) * z;
    return acc.value();
}

double log_gamma_stirling(double x) {
    // Bernoulli numbers B_{2k} / (2k (2k - 1)).
    static constexpr std::array<double, 8> c = {
        1.0 / 12.0,        -1.0 / 360.0,       1.0 / 1260.0,        -1.0 / 1680.0,
        1.0 / 1188.0,      -691.0 / 360360.0,  1.0 / 156.0,         -3617.0 / 122400.0};
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = 0.0;
    double p = inv;
    for (double ck : c) {
        series += ck * p;
        p *= inv2;
    }
    return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

// Euler-Maclaurin estimate of sum_{i >= 0} (b + i)^{-s}, and a bound on its remainder.
struct TailEstimate {
    double value;
    double remainder_bound;
};

TailEstimate power_tail(double b, double s) {
    const double bs = std::pow(b, -s);
    const double value = b * bs / (s - 1.0) + 0.5 * bs + s / 12.0 * bs / b;
    const double bound = 2.0 * s * (s + 1.0) * (s + 2.0) / 720.0 * bs / (b * b * b);
    return {value, bound};
}

// sum_{j=1}^{inf} [(j + a)^{-s} + (j - a)^{-s}] for 0 <= a <= 1/2.
double lattice_pair_sum(double a, double s, const Tolerance& tol, double scale) {
    std::size_t J = 8;
    while (true) {
        const auto lo = power_tail(static_cast<double>(J) + 1.0 - a, s);
        const auto hi = power_tail(static_cast<double>(J) + 1.0 + a, s);
        if (scale * (lo.remainder_bound + hi.remainder_bound) < tol.abs_tol) {
            CompensatedSum acc;
            acc += lo.value;
            acc += hi.value;
            for (std::size_t j = J; j >= 1; --j) {
                const double jd = static_cast<double>(j);
                acc += std::pow(jd + a, -s);
                acc += std::pow(jd - a, -s);
            }
            return acc.value();
        }
        if (J >= tol.max_terms) {
            throw ConvergenceError("lattice sum tail bound not reached within max_terms");
        }
        J *= 2;
    }
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("log_gamma requires x > 0");
    }
    if (x >= 10.0) return log_gamma_stirling(x);
    if (x < 0.5) {
        // Gamma(x) = Gamma(x + 1) / x
        return log_gamma_near_one(x) - std::log(x);
    }
    if (x <= 1.5) return log_gamma_near_one(x - 1.0);
    if (x <= 2.5) return log_gamma_near_two(x - 2.0);
    // Shift down into [1.5, 2.5]; every factor exceeds 1.5.
    double prod = 1.0;
    double y = x;
    while (y > 2.5) {
        y -= 1.0;
        prod *= y;
    }
    return std::log(prod) + log_gamma_near_two(y - 2.0);
}

double c_of_H(double H) {
    if (!(H > 0.0 && H < 1.0)) {
        throw DomainError("C(H) requires H in (0, 1)");
    }
    return H * std::exp(log_gamma(2.0 * H)) * std::sin(H * std::numbers::pi) / std::numbers::pi;
}

std::vector<double> frac_diff_coeffs(double d, std::size_t n_max) {
    if (!(d > -1.0 && d < 0.5)) {
        throw DomainError("fractional differencing order must lie in (-1, 1/2)");
    }
    std::vector<double> psi(n_max + 1, 0.0);
    psi[0] = 1.0;
    for (std::size_t j = 1; j <= n_max; ++j) {
        const double jd = static_cast<double>(j);
        psi[j] = psi[j - 1] * (jd - 1.0 - d) / jd;
    }
    return psi;
}

double log_sinc_pi(double x) {
    const double a = std::abs(x);
    if (!(a <= 0.5)) {
        throw DomainError("log_sinc_pi requires |x| <= 1/2");
    }
    if (a == 0.0) return 0.0;
    if (a >= 0.25) {
        const double y = std::numbers::pi * a;
        return std::log(std::sin(y) / y);
    }
    // ln(sin(pi x)/(pi x)) = -sum_n zeta(2n) x^{2n} / n
    const auto& zm1 = zeta_minus_one();
    const double x2 = a * a;
    CompensatedSum acc;
    double p = 1.0;
    for (int n = 1; 2 * n <= kMaxZeta; ++n) {
        p *= x2;
        const double term = (zm1[static_cast<std::size_t>(2 * n)] + 1.0) * p / n;
        acc += -term;
        if (term < 1e-18 * x2) break;
    }
    return acc.value();
}

double hurwitz_pair_excluding_origin(double x, double s, const Tolerance& tol) {
    if (!(std::abs(x) <= 0.5) || !(s > 1.0)) {
        throw DomainError("lattice sum requires |x| <= 1/2 and s > 1");
    }
    return lattice_pair_sum(std::abs(x), s, tol, 1.0);
}

double fgn_lattice_sum(double x, const HurstParam& H, const Tolerance& tol) {
    if (x == 0.0) {
        throw DomainError("fGn lattice sum diverges at x = 0");
    }
    if (!(std::abs(x) <= 0.5)) {
        throw DomainError("fGn lattice sum requires x in [-1/2, 1/2]");
    }
    const double s = 2.0 * H.value() + 1.0;
    const double a = std::abs(x);
    const double scale = std::pow(2.0 * std::numbers::pi, -s);
    const double pair = lattice_pair_sum(a, s, tol, scale);
    return scale * (std::pow(a, -s) + pair);
}

}  // namespace lrdlab
