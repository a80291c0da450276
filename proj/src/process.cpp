#include "lrdlab/process.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace lrdlab {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<double> trimmed(std::span<const double> c) {
    std::vector<double> out(c.begin(), c.end());
    while (!out.empty() && out.back() == 0.0) out.pop_back();
    return out;
}

// |p(e^{i w})|^2 for p with ascending coefficients.
double squared_modulus_on_circle(std::span<const double> p, double x) {
    const double w = 2.0 * kPi * x;
    double re = 0.0;
    double im = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        re += p[k] * std::cos(w * static_cast<double>(k));
        im += p[k] * std::sin(w * static_cast<double>(k));
    }
    return re * re + im * im;
}

// ln(|p(e^{2 pi i x})|^2 / |p(1)|^2) via |p|^2 - |p(1)|^2 = -4 sum_m r_m sin^2(m pi x).
double log_squared_modulus_ratio(std::span<const double> p, double x) {
    double at_one = 0.0;
    for (double c : p) at_one += c;
    double delta = 0.0;
    for (std::size_t m = 1; m < p.size(); ++m) {
        double r = 0.0;
        for (std::size_t k = 0; k + m < p.size(); ++k) r += p[k] * p[k + m];
        const double s = std::sin(kPi * static_cast<double>(m) * x);
        delta += r * s * s;
    }
    return std::log1p(-4.0 * delta / (at_one * at_one));
}

std::vector<double> ar_polynomial(const Arma& a) {
    std::vector<double> p{1.0};
    for (double c : a.ar) p.push_back(-c);
    return p;
}

std::vector<double> ma_polynomial(const Arma& a) {
    std::vector<double> p{1.0};
    for (double c : a.ma) p.push_back(c);
    return p;
}

void require_roots_outside_unit_disk(std::span<const double> p, const char* which) {
    for (const auto& z : polynomial_roots(p)) {
        if (std::abs(z) <= 1.0 + ShortMemorySpec::kRootMargin) {
            throw ConfigError(std::string("ARMA ") + which + " polynomial has a root with modulus " +
                              std::to_string(std::abs(z)) + " (must exceed 1)");
        }
    }
}

void require_finite(std::span<const double> v, const char* what) {
    for (double c : v) {
        if (!std::isfinite(c)) throw ConfigError(std::string(what) + " must be finite");
    }
}

}  // namespace

std::vector<std::complex<double>> polynomial_roots(std::span<const double> ascending) {
    const auto c = trimmed(ascending);
    if (c.size() <= 1) return {};
    const std::size_t deg = c.size() - 1;
    // Durand-Kerner on the monic polynomial.
    std::vector<std::complex<double>> monic(deg + 1);
    for (std::size_t k = 0; k <= deg; ++k) monic[k] = c[k] / c[deg];
    auto eval = [&](std::complex<double> z) {
        std::complex<double> acc = monic[deg];
        for (std::size_t k = deg; k-- > 0;) acc = acc * z + monic[k];
        return acc;
    };
    double radius = 0.0;
    for (std::size_t k = 0; k < deg; ++k) radius = std::max(radius, std::abs(monic[k]));
    radius = 1.0 + radius;
    std::vector<std::complex<double>> roots(deg);
    const std::complex<double> seed(0.4, 0.9);
    for (std::size_t k = 0; k < deg; ++k) roots[k] = radius * std::pow(seed / std::abs(seed), static_cast<double>(k)) * 0.5;
    for (int iter = 0; iter < 2000; ++iter) {
        double change = 0.0;
        for (std::size_t i = 0; i < deg; ++i) {
            std::complex<double> denom = 1.0;
            for (std::size_t j = 0; j < deg; ++j) {
                if (j != i) denom *= roots[i] - roots[j];
            }
            const auto step = eval(roots[i]) / denom;
            roots[i] -= step;
            change = std::max(change, std::abs(step) / std::max(1.0, std::abs(roots[i])));
        }
        if (change < 1e-15) break;
    }
    return roots;
}

ShortMemorySpec ShortMemorySpec::white_noise(double variance) {
    if (!(variance > 0.0) || !std::isfinite(variance)) {
        throw ConfigError("white-noise variance must be positive");
    }
    return ShortMemorySpec(WhiteNoise{variance});
}

ShortMemorySpec ShortMemorySpec::arma(std::vector<double> ar, std::vector<double> ma,
                                      double innovation_variance) {
    if (!(innovation_variance > 0.0) || !std::isfinite(innovation_variance)) {
        throw ConfigError("ARMA innovation variance must be positive");
    }
    require_finite(ar, "AR coefficients");
    require_finite(ma, "MA coefficients");
    Arma a{std::move(ar), std::move(ma), innovation_variance};
    require_roots_outside_unit_disk(ar_polynomial(a), "AR");
    require_roots_outside_unit_disk(ma_polynomial(a), "MA");
    return ShortMemorySpec(std::move(a));
}

ShortMemorySpec ShortMemorySpec::fexp(std::vector<double> theta) {
    require_finite(theta, "FEXP coefficients");
    return ShortMemorySpec(Fexp{std::move(theta)});
}

double ShortMemorySpec::density(double x) const {
    if (!(std::abs(x) <= 0.5)) throw DomainError("driver density requires x in [-1/2, 1/2]");
    const double a = std::abs(x);
    return std::visit(Overloaded{
                          [](const WhiteNoise& w) { return w.variance; },
                          [a](const Arma& m) {
                              return m.innovation_variance * squared_modulus_on_circle(ma_polynomial(m), a) /
                                     squared_modulus_on_circle(ar_polynomial(m), a);
                          },
                          [a](const Fexp& f) {
                              double s = 0.0;
                              for (std::size_t k = 0; k < f.theta.size(); ++k) {
                                  s += f.theta[k] * std::cos(2.0 * kPi * static_cast<double>(k + 1) * a);
                              }
                              return std::exp(s);
                          }},
                      v_);
}

double ShortMemorySpec::log_density_ratio(double x) const {
    if (!(std::abs(x) <= 0.5)) throw DomainError("driver density requires x in [-1/2, 1/2]");
    const double a = std::abs(x);
    return std::visit(Overloaded{
                          [](const WhiteNoise&) { return 0.0; },
                          [a](const Arma& m) {
                              return log_squared_modulus_ratio(ma_polynomial(m), a) -
                                     log_squared_modulus_ratio(ar_polynomial(m), a);
                          },
                          [a](const Fexp& f) {
                              double s = 0.0;
                              for (std::size_t k = 0; k < f.theta.size(); ++k) {
                                  const double sn = std::sin(kPi * static_cast<double>(k + 1) * a);
                                  s += -2.0 * f.theta[k] * sn * sn;
                              }
                              return s;
                          }},
                      v_);
}

ShortMemorySpec ShortMemorySpec::scaled(double factor) const {
    if (!(factor > 0.0) || !std::isfinite(factor)) throw ConfigError("scale factor must be positive");
    return std::visit(Overloaded{
                          [&](const WhiteNoise& w) { return white_noise(w.variance * factor); },
                          [&](const Arma& m) { return arma(m.ar, m.ma, m.innovation_variance * factor); },
                          [&](const Fexp&) -> ShortMemorySpec {
                              throw ConfigError("FEXP drivers carry no scale parameter");
                          }},
                      v_);
}

bool operator==(const ShortMemorySpec& a, const ShortMemorySpec& b) {
    if (a.v_.index() != b.v_.index()) return false;
    return std::visit(Overloaded{
                          [&](const WhiteNoise& w) { return w.variance == std::get<WhiteNoise>(b.v_).variance; },
                          [&](const Arma& m) {
                              const auto& o = std::get<Arma>(b.v_);
                              return m.ar == o.ar && m.ma == o.ma && m.innovation_variance == o.innovation_variance;
                          },
                          [&](const Fexp& f) { return f.theta == std::get<Fexp>(b.v_).theta; }},
                      a.v_);
}

ProcessSpec ProcessSpec::fgn(double H, double V) {
    HurstParam h(H);
    if (!(H < 1.0)) throw DomainError("fGn requires H < 1");
    if (!(V > 0.0) || !std::isfinite(V)) throw ConfigError("fGn variance V must be positive");
    return ProcessSpec(Fgn{h, V});
}

ProcessSpec ProcessSpec::fracdiff(double H, ShortMemorySpec driver) {
    HurstParam h(H);
    if (!(H < 1.0)) throw DomainError("fractionally differenced process requires H < 1");
    return ProcessSpec(FracDiff{h, std::move(driver)});
}

ProcessSpec ProcessSpec::sum(std::vector<WeightedComponent> components) {
    if (components.empty()) throw ConfigError("sum needs at least one component");
    for (const auto& c : components) {
        if (!(c.weight > 0.0) || !std::isfinite(c.weight)) {
            throw ConfigError("sum weights must be positive");
        }
    }
    return ProcessSpec(Sum{std::move(components)});
}

double ProcessSpec::dominant_hurst() const {
    return std::visit(Overloaded{[](const Fgn& f) { return f.H.value(); },
                                 [](const FracDiff& f) { return f.H.value(); },
                                 [](const Sum& s) {
                                     double h = 0.0;
                                     for (const auto& c : s.components) h = std::max(h, c.spec.dominant_hurst());
                                     return h;
                                 }},
                      v_);
}

ProcessSpec ProcessSpec::scaled(double factor) const {
    if (!(factor > 0.0) || !std::isfinite(factor)) throw ConfigError("scale factor must be positive");
    return std::visit(Overloaded{[&](const Fgn& f) { return fgn(f.H.value(), f.V * factor); },
                                 [&](const FracDiff& f) { return fracdiff(f.H.value(), f.driver.scaled(factor)); },
                                 [&](const Sum& s) {
                                     auto comps = s.components;
                                     for (auto& c : comps) c.weight *= factor;
                                     return sum(std::move(comps));
                                 }},
                      v_);
}

bool operator==(const ProcessSpec& a, const ProcessSpec& b) {
    if (a.v_.index() != b.v_.index()) return false;
    return std::visit(Overloaded{[&](const Fgn& f) {
                                     const auto& o = std::get<Fgn>(b.v_);
                                     return f.H == o.H && f.V == o.V;
                                 },
                                 [&](const FracDiff& f) {
                                     const auto& o = std::get<FracDiff>(b.v_);
                                     return f.H == o.H && f.driver == o.driver;
                                 },
                                 [&](const Sum& s) { return s.components == std::get<Sum>(b.v_).components; }},
                      a.v_);
}

double fgn_prefactor(double H, double V) {
    return V * std::pow(2.0 * kPi, 2.0 - 2.0 * H) * c_of_H(H);
}

namespace {

double fgn_spectrum(const Fgn& f, double x, const Tolerance& tol) {
    const double H = f.H.value();
    if (x == 0.0) {
        if (H < 0.5) return 0.0;
        if (H == 0.5) return f.V;
        throw DomainError("spectral density of a long-memory fGn diverges at x = 0");
    }
    const double s = std::sin(kPi * x);
    return fgn_prefactor(H, f.V) / (kPi * kPi) * std::pow(2.0 * kPi, 2.0 * H + 1.0) * s * s *
           fgn_lattice_sum(x, f.H, tol);
}

double fracdiff_spectrum(const FracDiff& f, double x) {
    const double H = f.H.value();
    const double h = f.driver.density(x);
    if (x == 0.0) {
        if (H < 0.5) return 0.0;
        if (H == 0.5) return h;
        throw DomainError("spectral density of a long-memory process diverges at x = 0");
    }
    return h * std::pow(std::abs(2.0 * std::sin(kPi * x)), 1.0 - 2.0 * H);
}

}  // namespace

double spectrum(const ProcessSpec& spec, double x, const Tolerance& tol) {
    if (!(std::abs(x) <= 0.5)) throw DomainError("spectrum requires x in [-1/2, 1/2]");
    return std::visit(Overloaded{[&](const Fgn& f) { return fgn_spectrum(f, x, tol); },
                                 [&](const FracDiff& f) { return fracdiff_spectrum(f, x); },
                                 [&](const Sum& s) {
                                     CompensatedSum acc;
                                     for (const auto& c : s.components) acc += c.weight * spectrum(c.spec, x, tol);
                                     return acc.value();
                                 }},
                      spec.variant());
}

double prefactor(const ProcessSpec& spec) {
    const double H = spec.dominant_hurst();
    if (!(H > 0.5)) throw DomainError("no long-memory prefactor: process is short-range dependent");
    return std::visit(Overloaded{[&](const Fgn& f) { return fgn_prefactor(H, f.V); },
                                 [&](const FracDiff& f) {
                                     return std::pow(2.0 * kPi, 1.0 - 2.0 * H) * f.driver.density(0.0);
                                 },
                                 [&](const Sum& s) {
                                     double c = 0.0;
                                     for (const auto& comp : s.components) {
                                         if (comp.spec.dominant_hurst() == H) c += comp.weight * prefactor(comp.spec);
                                     }
                                     return c;
                                 }},
                      spec.variant());
}

ProcessSpec matched_fgn(const ProcessSpec& spec) {
    if (spec.get_if<Fgn>() != nullptr) {
        spec.get_if<Fgn>()->H.require_lrd("matched fGn");
        return spec;
    }
    const double H = spec.dominant_hurst();
    HurstParam(H).require_lrd("matched fGn");
    const double V = prefactor(spec) / (std::pow(2.0 * kPi, 2.0 - 2.0 * H) * c_of_H(H));
    return ProcessSpec::fgn(H, V);
}

SpectralRatio::SpectralRatio(const ProcessSpec& fracdiff, Tolerance tol)
    : H_(0.0), driver_(ShortMemorySpec::white_noise()), fixed_point_{HurstParam(0.75), 1.0},
      fgn_prefactor_(0.0), tol_(tol) {
    const auto* f = fracdiff.get_if<FracDiff>();
    if (f == nullptr) throw ConfigError("spectral ratio needs a fractionally differenced process");
    f->H.require_lrd("spectral ratio");
    H_ = f->H.value();
    driver_ = f->driver;
    fixed_point_ = *matched_fgn(fracdiff).get_if<Fgn>();
    fgn_prefactor_ = fgn_prefactor(H_, fixed_point_.V);
}

double SpectralRatio::log_g(double x) const {
    if (!(std::abs(x) <= 0.5)) throw DomainError("spectral ratio requires x in [-1/2, 1/2]");
    const double a = std::abs(x);
    if (a == 0.0) return 0.0;
    const double s = 2.0 * H_ + 1.0;
    const double r = hurwitz_pair_excluding_origin(a, s, tol_);
    return driver_.log_density_ratio(a) - s * log_sinc_pi(a) - std::log1p(r * std::pow(a, s));
}

double SpectralRatio::g(double x) const { return std::exp(log_g(x)); }

double SpectralRatio::fixed_point_spectrum(double x) const {
    const double a = std::abs(x);
    if (a == 0.0) throw DomainError("fixed-point spectrum diverges at x = 0");
    const double s = 2.0 * H_ + 1.0;
    const double sn = std::sin(kPi * a);
    const double r = hurwitz_pair_excluding_origin(a, s, tol_);
    return fgn_prefactor_ / (kPi * kPi) * sn * sn * std::pow(a, -s) * (1.0 + r * std::pow(a, s));
}

double SpectralRatio::phi(double x) const {
    if (x == 0.0) return 0.0;
    return fixed_point_spectrum(x) * std::expm1(log_g(x));
}

}  // namespace lrdlab
