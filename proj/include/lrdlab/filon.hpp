#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "lrdlab/special.hpp"

namespace lrdlab {

struct GaussLegendre {
    std::vector<double> nodes;    // on [-1, 1], ascending
    std::vector<double> weights;
};

[[nodiscard]] GaussLegendre gauss_legendre(std::size_t order);

/// j_0(x), ..., j_kmax(x).
[[nodiscard]] std::vector<double> spherical_bessel_sequence(std::size_t kmax, double x);

struct FilonOptions {
    std::size_t initial_panels = 32;
    std::size_t order = 24;
    /// Panels are graded geometrically toward x = 0 down to this width.
    double min_x = 1e-15;
    std::size_t max_refinements = 6;
};

/// Filon-type rule for int_0^{1/2} f(x) cos(2 pi n x) dx.
///
/// f is expanded in Legendre polynomials on each panel; the products with the
/// cosine are integrated exactly through
///   int_{-1}^{1} P_k(t) e^{i b t} dt = 2 i^k j_k(b),
/// so the samples of f do not depend on n. The panel next to the origin is split
/// geometrically, which keeps f(x) ~ |x|^a type behaviour at 0 well resolved.
class CosineTransform {
public:
    CosineTransform(const std::function<double(double)>& f, std::size_t panels, std::size_t order,
                    double min_x = 1e-15);

    [[nodiscard]] double operator()(double n) const;
    [[nodiscard]] std::size_t panel_count() const noexcept { return panels_.size(); }
    [[nodiscard]] std::size_t uniform_panels() const noexcept { return uniform_panels_; }

private:
    struct Panel {
        double center;
        double half_width;
        std::vector<double> legendre;
    };
    std::vector<Panel> panels_;
    std::size_t uniform_panels_;
    std::size_t order_;
};

struct CosineTransformResult {
    std::vector<double> values;
    double error_estimate;
    std::size_t uniform_panels;
    /// The converged rule, reusable at further frequencies.
    std::shared_ptr<const CosineTransform> rule;
};

/// Doubles the uniform panel count until the values at every requested n change
/// by less than max(tol.abs_tol, tol.rel_tol * max value). Throws ConvergenceError when
/// opts.max_refinements is exhausted.
[[nodiscard]] CosineTransformResult cosine_transform(const std::function<double(double)>& f,
                                                     std::span<const double> frequencies, const Tolerance& tol,
                                                     const FilonOptions& opts = {});

}  // namespace lrdlab
