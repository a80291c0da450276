#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "lrdlab/covariance.hpp"

namespace lrdlab {

/// (I a)(n) = sum_{k=0}^{n-1} sum_{i=-k}^{k} a(|i|) for n = 0..n_max, where a is the
/// one-sided half of a symmetric sequence and vanishes beyond a.size().
[[nodiscard]] std::vector<double> double_integrate(std::span<const double> a, std::size_t n_max);

/// Variance-time function omega(n) of one autocovariance table.
class VtfView {
public:
    VtfView(AcvfTable acvf, std::size_t n_max);

    /// omega(|n|); CoverageError beyond n_max.
    [[nodiscard]] double operator()(long n) const;
    [[nodiscard]] std::size_t n_max() const noexcept { return values_->size() - 1; }
    [[nodiscard]] const AcvfTable& acvf() const noexcept { return acvf_; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return *values_; }
    /// omega(1) = gamma(0).
    [[nodiscard]] double variance() const { return (*this)(1); }

private:
    AcvfTable acvf_;
    std::shared_ptr<const std::vector<double>> values_;
};

[[nodiscard]] VtfView vtf(const AcvfTable& acvf, std::size_t n_max);

/// rho(n) = omega(n) / omega(1).
class CtfView {
public:
    explicit CtfView(VtfView v) : vtf_(std::move(v)) {}

    [[nodiscard]] double operator()(long n) const { return vtf_(n) / vtf_(1); }
    [[nodiscard]] const VtfView& vtf() const noexcept { return vtf_; }

private:
    VtfView vtf_;
};

/// The fGn fixed point omega*(m) = V m^{2H}.
struct FixedPoint {
    HurstParam H;
    double V;

    [[nodiscard]] double omega(double m) const;
    [[nodiscard]] double rho(double n) const;
    /// omega*^(m)(n) = V m^{2H-2} n^{2H}.
    [[nodiscard]] double omega_aggregated(double m, double n) const;

    friend bool operator==(const FixedPoint&, const FixedPoint&) = default;
};

/// The fixed point sharing spec's dominant H and prefactor.
[[nodiscard]] FixedPoint fixed_point_of(const ProcessSpec& spec);

/// omega^(m)(n) = omega(mn) / m^2 computed on demand from the base VTF.
class AggregatedVtf {
public:
    AggregatedVtf(VtfView base, std::size_t m);

    [[nodiscard]] double operator()(long n) const;
    /// V^(m) = omega(m) / m^2.
    [[nodiscard]] double variance() const;
    [[nodiscard]] std::size_t level() const noexcept { return m_; }

private:
    VtfView base_;
    std::size_t m_;
};

[[nodiscard]] AggregatedVtf aggregate_vtf(const VtfView& v, std::size_t m);

/// rho^(m)(n) = omega(mn) / omega(m).
[[nodiscard]] double aggregate_ctf(const VtfView& v, std::size_t m, std::size_t n);

/// Symmetric convolution of two one-sided halves; result has size a.size() + b.size() - 1.
[[nodiscard]] std::vector<double> symmetric_convolve(std::span<const double> a, std::span<const double> b);

/// max over n <= n_max of |(I c)(n) - [((I a) * b)(n) - ((I a) * b)(0)]| with c = a * b.
[[nodiscard]] double conv_double_int_identity_check(std::span<const double> a, std::span<const double> b,
                                                    std::size_t n_max);

}  // namespace lrdlab
