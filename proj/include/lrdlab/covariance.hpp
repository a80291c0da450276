#pragma once

#include <cstddef>
#include <memory>
#include <string_view>
#include <vector>

#include "lrdlab/process.hpp"
#include "lrdlab/special.hpp"

namespace lrdlab {

enum class AcvfRoute { ClosedForm, SpectralSubtraction, Convolution, SumOfComponents };

[[nodiscard]] std::string_view to_string(AcvfRoute route);

/// fGn autocovariance V/2 ((n+1)^{2H} + |n-1|^{2H} - 2 n^{2H}).
[[nodiscard]] double fgn_acvf(const HurstParam& H, double V, std::size_t n);

/// c_1..c_terms with c_j = prod_{i=0}^{2j-1} (2H - i) / (2j)!, so that for n >= 2
/// gamma(n) = V sum_j c_j n^{2H-2j}.
[[nodiscard]] std::vector<double> fgn_taylor_coefficients(double H, std::size_t terms);

/// The truncated series V sum_{j=1}^{terms} c_j n^{2H-2j}, n >= 2.
[[nodiscard]] double fgn_acvf_taylor(double H, double V, std::size_t n, std::size_t terms);

/// FARIMA(0,d,0) autocovariance, d in (0, 1/2).
[[nodiscard]] double farima00_acvf(double d, double sigma2, std::size_t n);

/// gamma(0..n_max) of FARIMA(0,d,0) by the ratio recursion, d in (-1/2, 1/2).
[[nodiscard]] std::vector<double> farima00_acvf_sequence(double d, double sigma2, std::size_t n_max);

/// Fourier coefficients of g = f_H / f*_H. G_{-j} = G_j, so only j >= 0 is stored.
struct GCoeffs {
    HurstParam H;
    ShortMemorySpec driver;
    std::vector<double> values;  // G_0..G_J
    /// Bound on sum_{|j| > J} |G_j| from the j^3 envelope over [J/2, J].
    double tail_bound;
    std::size_t grid_size;

    [[nodiscard]] std::size_t J() const noexcept { return values.size() - 1; }
    [[nodiscard]] double at(long j) const;
    /// sum over |j| <= J.
    [[nodiscard]] double sum() const;
};

[[nodiscard]] GCoeffs g_fourier_coeffs(const HurstParam& H, const ShortMemorySpec& driver, std::size_t J_max,
                                       const Tolerance& tol = {});

/// Lazily extended autocovariance table. Copies share one cache; extension is
/// serialized internally, so a table may be used from several threads.
class AcvfTable {
public:
    class Source;

    [[nodiscard]] const ProcessSpec& spec() const noexcept;
    [[nodiscard]] AcvfRoute route() const noexcept;
    [[nodiscard]] const Tolerance& tolerance() const noexcept;

    /// Number of cached lags.
    [[nodiscard]] std::size_t size() const;
    /// Makes gamma(0..n_max) available.
    void extend(std::size_t n_max) const;

    /// gamma(|n|), extending the cache when needed.
    [[nodiscard]] double operator()(long n) const;
    [[nodiscard]] double variance() const { return (*this)(0); }

    /// Copy of gamma(0..n_max).
    [[nodiscard]] std::vector<double> values(std::size_t n_max) const;

    AcvfTable(ProcessSpec spec, AcvfRoute route, Tolerance tol, std::shared_ptr<Source> source);

private:
    struct State;
    std::shared_ptr<State> state_;
};

/// Closed forms for fGn and white-driven FracDiff, spectral subtraction for other
/// FracDiff drivers, weighted sums of component tables for Sum.
[[nodiscard]] AcvfTable acvf(const ProcessSpec& spec, std::size_t n_max, const Tolerance& tol = {});

/// Spectral-subtraction quadrature for any long-memory FracDiff spec, whatever its driver.
[[nodiscard]] AcvfTable acvf_by_quadrature(const ProcessSpec& fracdiff, std::size_t n_max, const Tolerance& tol = {});

/// gamma_H = gamma*_H convolved with G, the G series truncated where tail_bound * V falls below truncation_tol.
[[nodiscard]] AcvfTable acvf_by_convolution(const ProcessSpec& fracdiff, std::size_t n_max,
                                            const Tolerance& tol = {}, double truncation_tol = 1e-10);

/// The spec rescaled to gamma(0) = 1.
[[nodiscard]] ProcessSpec unit_variance(const ProcessSpec& spec, const Tolerance& tol = {});

}  // namespace lrdlab
