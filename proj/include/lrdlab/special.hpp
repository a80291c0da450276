#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "lrdlab/errors.hpp"

namespace lrdlab {

/// Hurst parameter H in (0, 1]. The fractional differencing order is d = H - 1/2.
class HurstParam {
public:
    explicit HurstParam(double H);

    [[nodiscard]] double value() const noexcept { return H_; }
    [[nodiscard]] double d() const noexcept { return H_ - 0.5; }
    [[nodiscard]] bool is_lrd() const noexcept { return H_ > 0.5 && H_ < 1.0; }

    /// Throws DomainError unless H is in (1/2, 1).
    void require_lrd(const char* what) const;

    friend bool operator==(const HurstParam&, const HurstParam&) = default;

private:
    double H_;
};

/// Controls for every adaptive loop in the library.
struct Tolerance {
    double abs_tol = 1e-14;
    double rel_tol = 1e-12;
    std::size_t max_terms = std::size_t{1} << 22;

    void validate() const;
};

/// Neumaier compensated accumulator.
class CompensatedSum {
public:
    CompensatedSum() = default;
    explicit CompensatedSum(double init) : sum_(init) {}

    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    CompensatedSum& operator+=(double x) noexcept {
        add(x);
        return *this;
    }
    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

private:
    static double abs(double x) noexcept { return x < 0 ? -x : x; }
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// ln Gamma(x) for x > 0.
[[nodiscard]] double log_gamma(double x);

/// C(H) = H Gamma(2H) sin(pi H) / pi, for H in (0, 1).
[[nodiscard]] double c_of_H(double H);

/// Coefficients psi_0..psi_{n_max} of (1 - B)^d, d in (-1, 1/2).
[[nodiscard]] std::vector<double> frac_diff_coeffs(double d, std::size_t n_max);

/// S(x) = sum over all integers j of |2 pi j + 2 pi x|^{-(2H+1)}, x != 0.
[[nodiscard]] double fgn_lattice_sum(double x, const HurstParam& H, const Tolerance& tol = {});

/// ln(sin(pi x) / (pi x)) for |x| <= 1/2, accurate near x = 0.
[[nodiscard]] double log_sinc_pi(double x);

/// sum over j != 0 of |j + x|^{-s} for |x| <= 1/2 and s > 1; smooth near x = 0.
[[nodiscard]] double hurwitz_pair_excluding_origin(double x, double s, const Tolerance& tol = {});

}  // namespace lrdlab
