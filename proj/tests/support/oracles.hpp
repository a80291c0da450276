#pragma once

// Independent reference computations for the tests: extended precision where a
// closed form exists, brute force everywhere else.

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace oracle {

using mp50 = boost::multiprecision::cpp_bin_float_50;
using mp200 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200, boost::multiprecision::digit_base_2>>;

inline double lgamma50(double x) { return static_cast<double>(boost::math::lgamma(mp50(x))); }

inline double c_of_H50(double H) {
    const mp50 h(H);
    const mp50 pi = boost::math::constants::pi<mp50>();
    return static_cast<double>(h * boost::math::tgamma(2 * h) * sin(pi * h) / pi);
}

/// gamma(n) of fGn by direct differencing at 200 bits.
inline double fgn_acvf200(double H, double V, long n) {
    if (n == 0) return V;
    const mp200 a = mp200(2) * mp200(H);
    const mp200 nn(n);
    const mp200 r = (pow(nn + 1, a) + pow(abs(nn - 1), a) - 2 * pow(nn, a)) / 2;
    return static_cast<double>(r * mp200(V));
}

/// Gamma(j - d) / (Gamma(-d) Gamma(j + 1)) at 50 digits.
inline double psi_gamma_ratio(double d, long j) {
    const mp50 dd(d);
    return static_cast<double>(boost::math::tgamma(mp50(j) - dd) /
                               (boost::math::tgamma(-dd) * boost::math::tgamma(mp50(j + 1))));
}

/// FARIMA(0,d,0) gamma(n) through the gamma-function form at 50 digits.
inline double farima00_gamma_form(double d, double sigma2, long n) {
    const mp50 dd(d);
    const mp50 g0 = boost::math::tgamma(1 - 2 * dd) / pow(boost::math::tgamma(1 - dd), 2);
    const mp50 ratio = boost::math::tgamma(mp50(n) + dd) * boost::math::tgamma(1 - dd) /
                       (boost::math::tgamma(mp50(n) - dd + 1) * boost::math::tgamma(dd));
    return static_cast<double>(mp50(sigma2) * g0 * ratio);
}

/// sum_{|j| <= J} |2 pi j + 2 pi x|^{-(2H+1)} in long double, smallest terms first.
inline double lattice_sum_brute(double x, double H, long J) {
    const long double s = 2.0L * H + 1.0L;
    const long double two_pi = 2.0L * 3.141592653589793238462643383279502884L;
    long double acc = 0.0L;
    long double comp = 0.0L;
    for (long j = J; j >= 1; --j) {
        for (long sign : {1L, -1L}) {
            const long double term = std::pow(std::fabs(two_pi * (static_cast<long double>(sign * j) + x)), -s);
            const long double y = term - comp;
            const long double t = acc + y;
            comp = (t - acc) - y;
            acc = t;
        }
    }
    acc += std::pow(std::fabs(two_pi * static_cast<long double>(x)), -s);
    return static_cast<double>(acc);
}

/// omega(n) = sum_{i,j < n} gamma(|i - j|), literal double loop.
inline double vtf_nested(std::span<const double> gamma, std::size_t n) {
    long double acc = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) acc += gamma[i > j ? i - j : j - i];
    }
    return static_cast<double>(acc);
}

/// (I a)(n) = sum_{k<n} sum_{|i|<=k} a(|i|), literal nested loop.
inline double double_integrate_nested(std::span<const double> a, std::size_t n) {
    long double acc = 0.0L;
    for (std::size_t k = 0; k < n; ++k) {
        for (long i = -static_cast<long>(k); i <= static_cast<long>(k); ++i) {
            const auto idx = static_cast<std::size_t>(i < 0 ? -i : i);
            acc += idx < a.size() ? a[idx] : 0.0;
        }
    }
    return static_cast<double>(acc);
}

/// f_alpha(x, y) = |x - y|^a + (x + y)^a - 2 x^a, written as x^a k(y / x) to avoid cancellation.
inline long double f_alpha(long double alpha, long double x, long double y) {
    if (x <= y) return std::pow(y - x, alpha) + std::pow(x + y, alpha) - 2.0L * std::pow(x, alpha);
    const long double u = y / x;
    return std::pow(x, alpha) * (std::expm1(alpha * std::log1p(-u)) + std::expm1(alpha * std::log1p(u)));
}

/// T_n^j = f_alpha(n, j).
inline long double T(long double alpha, long n, long j) {
    return f_alpha(alpha, static_cast<long double>(n), static_cast<long double>(j));
}

/// Literal symmetric convolution over the integer line.
inline std::vector<double> convolve_brute(std::span<const double> a, std::span<const double> b) {
    const long la = static_cast<long>(a.size());
    const long lb = static_cast<long>(b.size());
    std::vector<double> c(a.size() + b.size() - 1, 0.0);
    for (long i = -(la - 1); i <= la - 1; ++i) {
        for (long j = -(lb - 1); j <= lb - 1; ++j) {
            const long n = i + j;
            if (n >= 0) c[static_cast<std::size_t>(n)] += a[static_cast<std::size_t>(std::abs(i))] *
                                                          b[static_cast<std::size_t>(std::abs(j))];
        }
    }
    return c;
}

}  // namespace oracle
