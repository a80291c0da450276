#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "lrdlab/special.hpp"

namespace lrdlab {

struct WhiteNoise {
    double variance = 1.0;
};

/// phi(z) = 1 - sum ar_k z^k, theta(z) = 1 + sum ma_k z^k.
struct Arma {
    std::vector<double> ar;
    std::vector<double> ma;
    double innovation_variance = 1.0;
};

/// log h(x) = sum_k theta_k cos(2 pi k x)
struct Fexp {
    std::vector<double> theta;
};

/// Short-memory driver of a fractionally differenced process. Validated on
/// construction: ARMA polynomials must have every root outside |z| <= 1 + 1e-9.
class ShortMemorySpec {
public:
    using Variant = std::variant<WhiteNoise, Arma, Fexp>;

    static constexpr double kRootMargin = 1e-9;

    static ShortMemorySpec white_noise(double variance = 1.0);
    static ShortMemorySpec arma(std::vector<double> ar, std::vector<double> ma,
                                double innovation_variance = 1.0);
    static ShortMemorySpec fexp(std::vector<double> theta);

    [[nodiscard]] const Variant& variant() const noexcept { return v_; }

    /// Spectral density h(x), x in [-1/2, 1/2].
    [[nodiscard]] double density(double x) const;

    /// ln(h(x) / h(0)), evaluated without cancellation for small x.
    [[nodiscard]] double log_density_ratio(double x) const;

    /// Same driver with its spectral density multiplied by factor > 0.
    [[nodiscard]] ShortMemorySpec scaled(double factor) const;

    friend bool operator==(const ShortMemorySpec& a, const ShortMemorySpec& b);

private:
    explicit ShortMemorySpec(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

[[nodiscard]] inline double driver_density(const ShortMemorySpec& s, double x) { return s.density(x); }

/// Roots of sum_k c_k z^k (ascending coefficients); trailing zeros are ignored.
[[nodiscard]] std::vector<std::complex<double>> polynomial_roots(std::span<const double> ascending);

struct Fgn {
    HurstParam H;
    double V;
};

struct FracDiff {
    HurstParam H;
    ShortMemorySpec driver;
};

struct WeightedComponent;

/// Independent sum; each weight multiplies the component's variance.
struct Sum {
    std::vector<WeightedComponent> components;
};

class ProcessSpec {
public:
    using Variant = std::variant<Fgn, FracDiff, Sum>;

    static ProcessSpec fgn(double H, double V = 1.0);
    static ProcessSpec fracdiff(double H, ShortMemorySpec driver);
    static ProcessSpec sum(std::vector<WeightedComponent> components);

    [[nodiscard]] const Variant& variant() const noexcept { return v_; }

    template <class T>
    [[nodiscard]] const T* get_if() const noexcept {
        return std::get_if<T>(&v_);
    }

    /// Largest Hurst parameter over all components.
    [[nodiscard]] double dominant_hurst() const;
    [[nodiscard]] bool is_lrd() const { return dominant_hurst() > 0.5; }

    /// The spec with its spectrum (and covariance) multiplied by factor > 0.
    [[nodiscard]] ProcessSpec scaled(double factor) const;

    friend bool operator==(const ProcessSpec& a, const ProcessSpec& b);

private:
    explicit ProcessSpec(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

struct WeightedComponent {
    ProcessSpec spec;
    double weight = 1.0;

    friend bool operator==(const WeightedComponent&, const WeightedComponent&) = default;
};

/// Spectral density at x in [-1/2, 1/2] under gamma(n) = int f(x) e^{2 pi i x n} dx.
[[nodiscard]] double spectrum(const ProcessSpec& spec, double x, const Tolerance& tol = {});

/// Evaluator bound to one spec and tolerance.
class SpectrumEval {
public:
    SpectrumEval(ProcessSpec spec, Tolerance tol = {}) : spec_(std::move(spec)), tol_(tol) {}

    [[nodiscard]] double operator()(double x) const { return spectrum(spec_, x, tol_); }
    [[nodiscard]] const ProcessSpec& spec() const noexcept { return spec_; }
    [[nodiscard]] const Tolerance& tolerance() const noexcept { return tol_; }

private:
    ProcessSpec spec_;
    Tolerance tol_;
};

/// c_f = lim_{x -> 0} |x|^{2H-1} f(x) for the dominating component(s).
[[nodiscard]] double prefactor(const ProcessSpec& spec);

/// Prefactor of fGn(H, V): V (2 pi)^{2-2H} C(H).
[[nodiscard]] double fgn_prefactor(double H, double V);

/// The fGn fixed point sharing H_dom and the power-law prefactor of spec.
[[nodiscard]] ProcessSpec matched_fgn(const ProcessSpec& spec);

/// g = f_H / f*_H and phi = f_H - f*_H for a long-memory fractionally
/// differenced process against its matched fGn. Both are computed from
/// ln g = ln(h(x)/h(0)) - (2H+1) ln sinc(pi x) - ln(1 + R(x) |x|^{2H+1}),
/// R the lattice sum without its j = 0 term, so g - 1 and phi keep full
/// relative precision as x -> 0.
class SpectralRatio {
public:
    explicit SpectralRatio(const ProcessSpec& fracdiff, Tolerance tol = {});

    [[nodiscard]] double log_g(double x) const;
    [[nodiscard]] double g(double x) const;
    [[nodiscard]] double phi(double x) const;
    [[nodiscard]] double fixed_point_spectrum(double x) const;

    [[nodiscard]] double H() const noexcept { return H_; }
    [[nodiscard]] const Fgn& fixed_point() const noexcept { return fixed_point_; }
    [[nodiscard]] const ShortMemorySpec& driver() const noexcept { return driver_; }

private:
    double H_;
    ShortMemorySpec driver_;
    Fgn fixed_point_;
    double fgn_prefactor_;
    Tolerance tol_;
};

}  // namespace lrdlab
