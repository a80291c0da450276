#include "lrdlab/filon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lrdlab/errors.hpp"

namespace lrdlab {

GaussLegendre gauss_legendre(std::size_t order) {
    if (order == 0) throw DomainError("Gauss-Legendre order must be positive");
    GaussLegendre gl;
    gl.nodes.resize(order);
    gl.weights.resize(order);
    const double n = static_cast<double>(order);
    for (std::size_t i = 0; i < (order + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = z;
            for (std::size_t k = 2; k <= order; ++k) {
                const double kd = static_cast<double>(k);
                const double p2 = ((2.0 * kd - 1.0) * z * p1 - (kd - 1.0) * p0) / kd;
                p0 = p1;
                p1 = p2;
            }
            if (order == 1) {
                p1 = z;
                p0 = 1.0;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        if (order == 1) {
            z = 0.0;
            dp = 1.0;
        }
        gl.nodes[i] = -z;
        gl.nodes[order - 1 - i] = z;
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        gl.weights[i] = w;
        gl.weights[order - 1 - i] = w;
    }
    return gl;
}

std::vector<double> spherical_bessel_sequence(std::size_t kmax, double x) {
    std::vector<double> j(kmax + 1, 0.0);
    const double ax = std::abs(x);
    if (ax == 0.0) {
        j[0] = 1.0;
        return j;
    }
    if (ax < 0.5) {
        // j_k(x) = x^k / (2k+1)!! * sum_m (-x^2/2)^m / (m! prod_{i=1..m} (2k + 2i + 1))
        double lead = 1.0;
        for (std::size_t k = 0; k <= kmax; ++k) {
            if (k > 0) lead *= ax / (2.0 * static_cast<double>(k) + 1.0);
            double term = 1.0;
            double acc = 1.0;
            for (int m = 1; m < 12; ++m) {
                term *= -0.5 * ax * ax / (m * (2.0 * static_cast<double>(k) + 2.0 * m + 1.0));
                acc += term;
            }
            j[k] = lead * acc;
        }
    } else if (ax >= static_cast<double>(kmax)) {
        j[0] = std::sin(ax) / ax;
        if (kmax >= 1) j[1] = std::sin(ax) / (ax * ax) - std::cos(ax) / ax;
        for (std::size_t k = 1; k < kmax; ++k) {
            j[k + 1] = (2.0 * static_cast<double>(k) + 1.0) / ax * j[k] - j[k - 1];
        }
    } else {
        // Miller's downward recurrence, normalised against j_0 or j_1.
        const std::size_t start = kmax + 40 + static_cast<std::size_t>(ax);
        double next = 0.0;
        double cur = 1e-280;
        std::vector<double> tmp(start + 1, 0.0);
        tmp[start] = cur;
        for (std::size_t k = start; k >= 1; --k) {
            const double prev = (2.0 * static_cast<double>(k) + 1.0) / ax * cur - next;
            next = cur;
            cur = prev;
            tmp[k - 1] = cur;
            if (std::abs(cur) > 1e250) {
                for (std::size_t i = k - 1; i <= start; ++i) tmp[i] *= 1e-250;
                cur *= 1e-250;
                next *= 1e-250;
            }
        }
        const double j0 = std::sin(ax) / ax;
        const double j1 = std::sin(ax) / (ax * ax) - std::cos(ax) / ax;
        const double scale = std::abs(j0) >= std::abs(j1) ? j0 / tmp[0] : j1 / tmp[1];
        for (std::size_t k = 0; k <= kmax; ++k) j[k] = tmp[k] * scale;
    }
    if (x < 0.0) {
        for (std::size_t k = 1; k <= kmax; k += 2) j[k] = -j[k];
    }
    return j;
}

CosineTransform::CosineTransform(const std::function<double(double)>& f, std::size_t panels, std::size_t order,
                                 double min_x)
    : uniform_panels_(panels), order_(order) {
    if (panels == 0 || order == 0) throw DomainError("Filon rule needs at least one panel and one node");
    const auto gl = gauss_legendre(order);
    const double width = 0.5 / static_cast<double>(panels);

    std::vector<std::pair<double, double>> bounds;
    double hi = width;
    while (hi > min_x) {
        bounds.emplace_back(0.5 * hi, hi);
        hi *= 0.5;
    }
    for (std::size_t p = 1; p < panels; ++p) {
        bounds.emplace_back(static_cast<double>(p) * width, static_cast<double>(p + 1) * width);
    }

    // P_k(t_i) at every node.
    std::vector<std::vector<double>> legendre_at(order, std::vector<double>(order));
    for (std::size_t i = 0; i < order; ++i) {
        const double t = gl.nodes[i];
        double p0 = 1.0;
        double p1 = t;
        legendre_at[i][0] = 1.0;
        if (order > 1) legendre_at[i][1] = t;
        for (std::size_t k = 2; k < order; ++k) {
            const double kd = static_cast<double>(k);
            const double p2 = ((2.0 * kd - 1.0) * t * p1 - (kd - 1.0) * p0) / kd;
            p0 = p1;
            p1 = p2;
            legendre_at[i][k] = p2;
        }
    }

    panels_.reserve(bounds.size());
    std::vector<double> samples(order);
    for (const auto& [a, b] : bounds) {
        const double c = 0.5 * (a + b);
        const double h = 0.5 * (b - a);
        for (std::size_t i = 0; i < order; ++i) samples[i] = f(c + h * gl.nodes[i]);
        Panel panel{c, h, std::vector<double>(order, 0.0)};
        for (std::size_t k = 0; k < order; ++k) {
            CompensatedSum acc;
            for (std::size_t i = 0; i < order; ++i) acc += gl.weights[i] * samples[i] * legendre_at[i][k];
            panel.legendre[k] = (2.0 * static_cast<double>(k) + 1.0) / 2.0 * acc.value();
        }
        panels_.push_back(std::move(panel));
    }
}

double CosineTransform::operator()(double n) const {
    const double omega = 2.0 * std::numbers::pi * n;
    CompensatedSum total;
    double cached_h = -1.0;
    std::vector<double> bessel;
    for (const auto& p : panels_) {
        if (p.half_width != cached_h) {
            bessel = spherical_bessel_sequence(order_ - 1, omega * p.half_width);
            cached_h = p.half_width;
        }
        const double phase = omega * p.center;
        const double c = std::cos(phase);
        const double s = std::sin(phase);
        // Re(i^k e^{i phase}) cycles through c, -s, -c, s.
        double acc = 0.0;
        for (std::size_t k = 0; k < order_; ++k) {
            double rot = 0.0;
            switch (k % 4) {
                case 0: rot = c; break;
                case 1: rot = -s; break;
                case 2: rot = -c; break;
                default: rot = s; break;
            }
            acc += p.legendre[k] * bessel[k] * rot;
        }
        total += 2.0 * p.half_width * acc;
    }
    return total.value();
}

CosineTransformResult cosine_transform(const std::function<double(double)>& f, std::span<const double> frequencies,
                                       const Tolerance& tol, const FilonOptions& opts) {
    std::size_t panels = opts.initial_panels;
    std::vector<double> previous;
    double last_change = 0.0;
    for (std::size_t round = 0; round <= opts.max_refinements; ++round) {
        if (panels * opts.order > tol.max_terms) break;
        auto rule = std::make_shared<const CosineTransform>(f, panels, opts.order, opts.min_x);
        std::vector<double> values(frequencies.size());
        for (std::size_t i = 0; i < frequencies.size(); ++i) values[i] = (*rule)(frequencies[i]);
        if (!previous.empty()) {
            last_change = 0.0;
            double scale = 0.0;
            for (std::size_t i = 0; i < values.size(); ++i) {
                last_change = std::max(last_change, std::abs(values[i] - previous[i]));
                scale = std::max(scale, std::abs(values[i]));
            }
            if (last_change < std::max(tol.abs_tol, tol.rel_tol * scale)) return {std::move(values), last_change, panels, std::move(rule)};
        }
        previous = std::move(values);
        panels *= 2;
    }
    std::ostringstream msg;
    msg << "Filon quadrature did not converge: last change " << last_change << " with " << panels / 2
        << " panels exceeds abs_tol " << tol.abs_tol;
    throw ConvergenceError(msg.str());
}

}  // namespace lrdlab
