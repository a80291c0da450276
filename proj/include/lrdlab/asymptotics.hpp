#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "lrdlab/covariance.hpp"
#include "lrdlab/vtf.hpp"

namespace lrdlab {

/// One exported series; rows are (m, n, value). Unaggregated series use m = 1,
/// frequency-domain series carry x in the n column.
struct Curve {
    struct Point {
        double m;
        double n;
        double value;
    };
    std::string label;
    std::vector<Point> points;
};

/// sum_{k >= n} k^{-s}, s > 1, by Euler-Maclaurin.
[[nodiscard]] double power_tail_sum(double n, double s);

struct VtfOffset {
    std::vector<std::size_t> probes;
    /// omega(n) - omega*(n) at every probe.
    std::vector<double> offsets;
    /// Offset at the largest probe.
    double D_hat = 0.0;
    /// Largest-probe offset plus the tail -2 sum_{k >= n}(k - n) d_k, with d_k
    /// replaced by its fitted law C k^{2H-4} beyond the table.
    double D_extrapolated = 0.0;
    double tail_coefficient = 0.0;
    /// |offset(last) - offset(second to last)|.
    double stabilisation = 0.0;
    bool inconclusive = false;
    /// -2 V sum_{j >= 1} j^{2H} G_j and the same with |G_j|; NaN when G is unavailable.
    double D_formula_signed = 0.0;
    double D_formula_abs = 0.0;
    /// "signed", "absolute", "both" or "none", judged at 1e-4 relative against D_extrapolated.
    std::string match;
};

/// Offsets of the VTF from the fixed point at each probe. G_terms sets how many
/// Fourier coefficients feed the closed-form candidates.
[[nodiscard]] VtfOffset vtf_offset(const ProcessSpec& spec, const FixedPoint& fp, std::span<const std::size_t> n_probe,
                                   const Tolerance& tol = {}, std::size_t G_terms = 2000);

struct SlopeResult {
    std::size_t n = 0;
    std::vector<std::size_t> levels;
    /// rho^(m)(n) - n^{2H} per level.
    std::vector<double> differences;
    /// Least-squares slope of log|difference| on log m over the top decade of usable levels.
    double slope_hat = 0.0;
    /// The same fit over every usable level.
    double slope_full_range = 0.0;
    bool saturated = false;
    /// difference * m^{2H} at the largest usable level.
    double fitted_coefficient = 0.0;
    /// (D / V)(1 - n^{2H}), the leading coefficient for an offset D.
    double predicted_coefficient = 0.0;
};

/// D is the VTF offset used for the predicted coefficient (NaN to skip).
[[nodiscard]] SlopeResult ctf_convergence_slope(const ProcessSpec& spec, const FixedPoint& fp, std::size_t n,
                                                std::span<const std::size_t> levels, const Tolerance& tol = {},
                                                double D = std::numeric_limits<double>::quiet_NaN());

struct SpectralGapProfile {
    std::vector<double> x;
    std::vector<double> phi;
    /// Log-log slope of |phi| over grid points in [1e-4, 1e-2] (all points if fewer than 3 fall there).
    double slope = 0.0;
    bool nonnegative = true;
};

/// phi = f_H - f*_H on the grid.
[[nodiscard]] SpectralGapProfile spectral_gap_profile(const ProcessSpec& spec, const FixedPoint& fp,
                                                      std::span<const double> x_grid, const Tolerance& tol = {});

/// 2 int_0^{1/2} phi(x) cos(2 pi n x) dx for a long-memory FracDiff spec.
[[nodiscard]] std::vector<double> spectral_gap_coefficients(const ProcessSpec& fracdiff,
                                                            std::span<const std::size_t> lags,
                                                            const Tolerance& tol = {});

struct AcvfGapProfile {
    std::vector<std::size_t> n;
    /// d_n = gamma(n) - gamma*(n).
    std::vector<double> d;
    /// n^{4-2H} |d_n|.
    std::vector<double> envelope;
    /// omega_d(n) = sum_{k<n} sum_{|j|<=k} d_j, bounded when the offset converges.
    std::vector<double> vtf_gap;
    /// (max - min) / min of the envelope over grid points in [1e3, 1e4]; NaN if none fall there.
    double envelope_variation = 0.0;
};

[[nodiscard]] AcvfGapProfile acvf_gap_profile(const ProcessSpec& spec, const FixedPoint& fp,
                                              std::span<const std::size_t> n_grid, const Tolerance& tol = {});

/// Regular-variation index of the offset: slope of log|omega_d| on log n over the
/// top decade of the grid, 0 when the offset is Cauchy-stable, clamped to [0, 2H].
[[nodiscard]] double beta_hat(std::span<const std::size_t> n_grid, std::span<const double> omega_d, double H);

struct ClosenessOptions {
    std::vector<std::size_t> offset_probes{10, 100, 1000, 10000};
    std::size_t ctf_lag = 2;
    std::vector<std::size_t> levels{1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024};
    std::vector<double> x_grid;          // default: 61 log-spaced points on [1e-6, 0.5]
    std::vector<std::size_t> n_grid;     // default: 1..10 then log-spaced to 1e4
    std::size_t G_terms = 2000;
    Tolerance tol{};
};

struct ClosenessReport {
    ProcessSpec spec;
    FixedPoint fixed_point;
    double D_hat;
    double D_extrapolated;
    double D_formula_signed;
    double D_formula_abs;
    std::string D_match;
    double offset_stabilisation;
    bool offset_inconclusive;
    double beta_hat;
    double slope_hat;
    double slope_full_range;
    bool slope_saturated;
    double predicted_coefficient;
    double fitted_coefficient;
    double phi_slope;
    bool phi_nonnegative;
    double envelope_variation;
    std::vector<Curve> curves;
};

[[nodiscard]] ClosenessReport closeness_report(const ProcessSpec& spec, const ClosenessOptions& opts = {});

[[nodiscard]] nlohmann::json to_json(const ClosenessReport& report);
[[nodiscard]] ClosenessReport closeness_report_from_json(const nlohmann::json& j);

/// CSV with header series_label,m,n,value.
[[nodiscard]] std::string curves_to_csv(const std::vector<Curve>& curves);

struct BrittlenessExperiment {
    std::string name;
    ProcessSpec base;
    ProcessSpec noise;
    double weight;
    std::vector<std::size_t> levels;
    std::vector<std::size_t> lags;

    /// base + weight * noise.
    [[nodiscard]] ProcessSpec perturbed() const;
};

/// The three built-in configurations (id 1..3): unit-variance FARIMA(0,0.3,0) plus
/// white noise; unit-variance FARIMA(1,0.3,1) plus unit-variance ARMA(1,1), both with
/// (phi, theta) = (0.3, 0.7); unit-variance FARIMA(0,0.3,0) plus unit-variance
/// FARIMA(0,0.2,0). Weight 0.1, levels {1, 10, 100}, lags 1..10.
[[nodiscard]] BrittlenessExperiment builtin_experiment(int id, const Tolerance& tol = {});

/// {"name":..., "base":<spec>, "noise":<spec>, "weight":0.1, "levels":[...], "lags":[...]}
[[nodiscard]] BrittlenessExperiment experiment_from_json(const nlohmann::json& j);

struct BrittlenessCell {
    std::size_t m;
    std::size_t n;
    /// omega^(m)(n) / omega*^(m)(n) for the base and perturbed processes.
    double base_ratio;
    double perturbed_ratio;
};

struct BrittlenessTable {
    std::string name;
    FixedPoint fixed_point;
    std::vector<BrittlenessCell> cells;

    [[nodiscard]] const BrittlenessCell& at(std::size_t m, std::size_t n) const;
    /// Two series per level: "<name>:base:m=<m>" and "<name>:perturbed:m=<m>".
    [[nodiscard]] std::vector<Curve> curves() const;
};

/// ConfigError unless base and perturbed share H and V of their matched fGn within 1e-10.
[[nodiscard]] BrittlenessTable run_brittleness(const BrittlenessExperiment& experiment, const Tolerance& tol = {});

}  // namespace lrdlab
