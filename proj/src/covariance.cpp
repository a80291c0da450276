#include "lrdlab/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <optional>
#include <sstream>

#include "fft.hpp"
#include "lrdlab/errors.hpp"
#include "lrdlab/filon.hpp"
#include "lrdlab/parallel.hpp"

namespace lrdlab {

std::string_view to_string(AcvfRoute route) {
    switch (route) {
        case AcvfRoute::ClosedForm: return "closed_form";
        case AcvfRoute::SpectralSubtraction: return "spectral_subtraction";
        case AcvfRoute::Convolution: return "convolution";
        case AcvfRoute::SumOfComponents: return "sum_of_components";
    }
    return "unknown";
}

namespace {

constexpr std::size_t kSeriesThreshold = 1000;
constexpr std::size_t kSeriesTerms = 6;

// k(u) = (1+u)^{2H} + (1-u)^{2H} - 2
double k_direct(double H, double u) {
    const double a = 2.0 * H;
    return std::expm1(a * std::log1p(u)) + std::expm1(a * std::log1p(-u));
}

double k_series(const std::vector<double>& c, double u) {
    const double u2 = u * u;
    double acc = 0.0;
    for (std::size_t j = c.size(); j-- > 0;) acc = (acc + c[j]) * u2;
    return 2.0 * acc;
}

}  // namespace

std::vector<double> fgn_taylor_coefficients(double H, std::size_t terms) {
    std::vector<double> c(terms);
    const double a = 2.0 * H;
    double coeff = 1.0;  // binomial(a, i) built incrementally
    for (std::size_t i = 0; i < 2 * terms; ++i) {
        coeff *= (a - static_cast<double>(i)) / static_cast<double>(i + 1);
        if (i % 2 == 1) c[i / 2] = coeff;
    }
    return c;
}

double fgn_acvf_taylor(double H, double V, std::size_t n, std::size_t terms) {
    if (n < 2) throw DomainError("the fGn series representation needs n >= 2");
    const auto c = fgn_taylor_coefficients(H, terms);
    const double nd = static_cast<double>(n);
    CompensatedSum acc;
    for (std::size_t j = 0; j < terms; ++j) acc += c[j] * std::pow(nd, 2.0 * H - 2.0 * static_cast<double>(j + 1));
    return V * acc.value();
}

double fgn_acvf(const HurstParam& H, double V, std::size_t n) {
    const double h = H.value();
    if (n == 0) return V;
    if (n == 1) return 0.5 * V * (std::exp2(2.0 * h) - 2.0);
    const double nd = static_cast<double>(n);
    const double u = 1.0 / nd;
    if (n <= kSeriesThreshold) return 0.5 * V * std::pow(nd, 2.0 * h) * k_direct(h, u);
    thread_local double cached_H = -1.0;
    thread_local std::vector<double> cached_c;
    if (cached_H != h) {
        cached_c = fgn_taylor_coefficients(h, kSeriesTerms);
        cached_H = h;
    }
    return 0.5 * V * std::pow(nd, 2.0 * h) * k_series(cached_c, u);
}

std::vector<double> farima00_acvf_sequence(double d, double sigma2, std::size_t n_max) {
    if (!(d > -0.5 && d < 0.5)) throw DomainError("FARIMA(0,d,0) autocovariance needs d in (-1/2, 1/2)");
    if (!(sigma2 > 0.0)) throw DomainError("innovation variance must be positive");
    std::vector<double> g(n_max + 1);
    g[0] = sigma2 * std::exp(log_gamma(1.0 - 2.0 * d) - 2.0 * log_gamma(1.0 - d));
    for (std::size_t n = 1; n <= n_max; ++n) {
        const double nd = static_cast<double>(n);
        g[n] = g[n - 1] * (nd - 1.0 + d) / (nd - d);
    }
    return g;
}

double farima00_acvf(double d, double sigma2, std::size_t n) {
    if (!(d > 0.0 && d < 0.5)) throw DomainError("farima00_acvf needs d in (0, 1/2)");
    return farima00_acvf_sequence(d, sigma2, n)[n];
}

double GCoeffs::at(long j) const {
    const auto a = static_cast<std::size_t>(j < 0 ? -j : j);
    return a < values.size() ? values[a] : 0.0;
}

double GCoeffs::sum() const {
    CompensatedSum acc(values.empty() ? 0.0 : values[0]);
    for (std::size_t j = 1; j < values.size(); ++j) acc += 2.0 * values[j];
    return acc.value();
}

GCoeffs g_fourier_coeffs(const HurstParam& H, const ShortMemorySpec& driver, std::size_t J_max,
                         const Tolerance& tol) {
    tol.validate();
    H.require_lrd("g_fourier_coeffs");
    if (J_max < 2) throw DomainError("g_fourier_coeffs needs J_max >= 2");
    const SpectralRatio ratio(ProcessSpec::fracdiff(H.value(), driver), tol);

    std::size_t N = 4096;
    while (N < 8 * (J_max + 1)) N *= 2;

    // samples[k] = g(k / N), k = 0..N/2; g(0) is the limit value 1.
    std::vector<double> samples(N / 2 + 1);
    auto fill = [&](std::size_t first, std::size_t step) {
        const std::size_t count = (samples.size() - first + step - 1) / step;
        parallel_for(count, [&](std::size_t i) {
            const std::size_t k = first + i * step;
            samples[k] = k == 0 ? 1.0 : ratio.g(static_cast<double>(k) / static_cast<double>(N));
        });
    };
    fill(0, 1);

    auto coefficients = [&] {
        auto y = detail::dct1(samples);
        y.resize(J_max + 1);
        for (auto& v : y) v /= static_cast<double>(N);
        return y;
    };

    std::vector<double> G = coefficients();
    double change = 0.0;
    while (true) {
        if (2 * N > tol.max_terms) {
            std::ostringstream msg;
            msg << "G coefficients did not converge: grid " << N << " reached max_terms " << tol.max_terms
                << " with last change " << change << " (abs_tol " << tol.abs_tol << ")";
            throw ConvergenceError(msg.str());
        }
        std::vector<double> coarse = std::move(samples);
        N *= 2;
        samples.assign(N / 2 + 1, 0.0);
        for (std::size_t k = 0; k < coarse.size(); ++k) samples[2 * k] = coarse[k];
        fill(1, 2);
        std::vector<double> refined = coefficients();
        change = 0.0;
        for (std::size_t j = 0; j <= J_max; ++j) change = std::max(change, std::abs(refined[j] - G[j]));
        G = std::move(refined);
        if (change < tol.abs_tol) break;
    }

    double envelope = 0.0;
    for (std::size_t j = J_max / 2; j <= J_max; ++j) {
        const double jd = static_cast<double>(j);
        envelope = std::max(envelope, jd * jd * jd * std::abs(G[j]));
    }
    const double Jd = static_cast<double>(J_max);
    return GCoeffs{H, driver, std::move(G), envelope / (Jd * Jd), N};
}

// ---------------------------------------------------------------------------

class AcvfTable::Source {
public:
    virtual ~Source() = default;
    /// Writes gamma(from..to) into out[from..to]; out already has size to + 1.
    virtual void fill(std::size_t from, std::size_t to, std::vector<double>& out) = 0;
};

struct AcvfTable::State {
    State(ProcessSpec s, AcvfRoute r, Tolerance t, std::shared_ptr<Source> src)
        : spec(std::move(s)), route(r), tol(t), source(std::move(src)) {}

    ProcessSpec spec;
    AcvfRoute route;
    Tolerance tol;
    std::shared_ptr<Source> source;
    mutable std::mutex mutex;
    std::vector<double> cache;
};

AcvfTable::AcvfTable(ProcessSpec spec, AcvfRoute route, Tolerance tol, std::shared_ptr<Source> source)
    : state_(std::make_shared<State>(std::move(spec), route, tol, std::move(source))) {}

const ProcessSpec& AcvfTable::spec() const noexcept { return state_->spec; }
AcvfRoute AcvfTable::route() const noexcept { return state_->route; }
const Tolerance& AcvfTable::tolerance() const noexcept { return state_->tol; }

std::size_t AcvfTable::size() const {
    std::lock_guard lock(state_->mutex);
    return state_->cache.size();
}

void AcvfTable::extend(std::size_t n_max) const {
    std::lock_guard lock(state_->mutex);
    auto& cache = state_->cache;
    if (n_max < cache.size()) return;
    const std::size_t from = cache.size();
    // Grow geometrically so element-wise access stays amortised O(1).
    const std::size_t to = std::max(n_max, from == 0 ? n_max : 2 * from - 1);
    std::vector<double> grown = cache;
    grown.resize(to + 1);
    state_->source->fill(from, to, grown);
    cache = std::move(grown);
}

double AcvfTable::operator()(long n) const {
    const auto a = static_cast<std::size_t>(n < 0 ? -n : n);
    {
        std::lock_guard lock(state_->mutex);
        if (a < state_->cache.size()) return state_->cache[a];
    }
    extend(a);
    std::lock_guard lock(state_->mutex);
    return state_->cache[a];
}

std::vector<double> AcvfTable::values(std::size_t n_max) const {
    extend(n_max);
    std::lock_guard lock(state_->mutex);
    return {state_->cache.begin(), state_->cache.begin() + static_cast<std::ptrdiff_t>(n_max + 1)};
}

namespace {

class FgnSource final : public AcvfTable::Source {
public:
    explicit FgnSource(Fgn f) : f_(f) {}
    void fill(std::size_t from, std::size_t to, std::vector<double>& out) override {
        for (std::size_t n = from; n <= to; ++n) out[n] = fgn_acvf(f_.H, f_.V, n);
    }

private:
    Fgn f_;
};

class Farima00Source final : public AcvfTable::Source {
public:
    Farima00Source(double d, double sigma2) : d_(d), sigma2_(sigma2) {}
    void fill(std::size_t, std::size_t to, std::vector<double>& out) override {
        // The recursion restarts from lag 0 so values never depend on extension order.
        const auto g = farima00_acvf_sequence(d_, sigma2_, to);
        std::copy(g.begin(), g.end(), out.begin());
    }

private:
    double d_;
    double sigma2_;
};

class QuadratureSource final : public AcvfTable::Source {
public:
    QuadratureSource(const ProcessSpec& spec, const Tolerance& tol) : tol_(tol) {
        const auto* f = spec.get_if<FracDiff>();
        if (f->H.is_lrd()) {
            ratio_ = std::make_shared<SpectralRatio>(spec, tol);
            const auto r = ratio_;
            integrand_ = [r](double x) { return r->phi(x); };
        } else {
            if (f->H.value() >= 1.0) throw DomainError("FracDiff with H = 1 has no autocovariance");
            integrand_ = [spec, tol](double x) { return spectrum(spec, x, tol); };
        }
    }

    void fill(std::size_t from, std::size_t to, std::vector<double>& out) override {
        if (!rule_ || to > validated_) {
            std::vector<double> probes;
            const std::size_t span = to - from;
            const std::size_t count = std::min<std::size_t>(span, 32);
            for (std::size_t i = 0; i <= count; ++i) {
                probes.push_back(static_cast<double>(from + (count == 0 ? 0 : span * i / count)));
            }
            FilonOptions opts;
            opts.max_refinements = 8;
            try {
                rule_ = cosine_transform(integrand_, probes, tol_, opts).rule;
            } catch (const ConvergenceError& e) {
                std::ostringstream msg;
                msg << e.what() << "; achievable lag range is 0.." << (from == 0 ? 0 : from - 1);
                throw CoverageError(msg.str(), to);
            }
            validated_ = to;
        }
        const auto rule = rule_;
        parallel_for(to - from + 1, [&](std::size_t i) {
            const std::size_t n = from + i;
            const double integral = 2.0 * (*rule)(static_cast<double>(n));
            out[n] = ratio_ ? fgn_acvf(ratio_->fixed_point().H, ratio_->fixed_point().V, n) + integral : integral;
        });
    }

private:
    Tolerance tol_;
    std::shared_ptr<SpectralRatio> ratio_;
    std::function<double(double)> integrand_;
    std::shared_ptr<const CosineTransform> rule_;
    std::size_t validated_ = 0;
};

class SumSource final : public AcvfTable::Source {
public:
    SumSource(std::vector<AcvfTable> tables, std::vector<double> weights)
        : tables_(std::move(tables)), weights_(std::move(weights)) {}
    void fill(std::size_t from, std::size_t to, std::vector<double>& out) override {
        std::vector<std::vector<double>> parts;
        parts.reserve(tables_.size());
        for (const auto& t : tables_) parts.push_back(t.values(to));
        for (std::size_t n = from; n <= to; ++n) {
            CompensatedSum acc;
            for (std::size_t c = 0; c < parts.size(); ++c) acc += weights_[c] * parts[c][n];
            out[n] = acc.value();
        }
    }

private:
    std::vector<AcvfTable> tables_;
    std::vector<double> weights_;
};

class ConvolutionSource final : public AcvfTable::Source {
public:
    ConvolutionSource(GCoeffs G, Fgn fixed_point) : G_(std::move(G)), fp_(fixed_point) {}
    void fill(std::size_t from, std::size_t to, std::vector<double>& out) override {
        const long J = static_cast<long>(G_.J());
        parallel_for(to - from + 1, [&](std::size_t i) {
            const long n = static_cast<long>(from + i);
            CompensatedSum acc;
            for (long j = -J; j <= J; ++j) {
                const long lag = n - j;
                acc += G_.at(j) * fgn_acvf(fp_.H, fp_.V, static_cast<std::size_t>(lag < 0 ? -lag : lag));
            }
            out[static_cast<std::size_t>(n)] = acc.value();
        });
    }

private:
    GCoeffs G_;
    Fgn fp_;
};

}  // namespace

AcvfTable acvf(const ProcessSpec& spec, std::size_t n_max, const Tolerance& tol) {
    tol.validate();
    std::optional<AcvfTable> table;
    if (const auto* f = spec.get_if<Fgn>()) {
        table.emplace(spec, AcvfRoute::ClosedForm, tol, std::make_shared<FgnSource>(*f));
    } else if (const auto* f = spec.get_if<FracDiff>()) {
        if (const auto* w = std::get_if<WhiteNoise>(&f->driver.variant())) {
            table.emplace(spec, AcvfRoute::ClosedForm, tol, std::make_shared<Farima00Source>(f->H.d(), w->variance));
        } else {
            table.emplace(spec, AcvfRoute::SpectralSubtraction, tol, std::make_shared<QuadratureSource>(spec, tol));
        }
    } else {
        const auto& s = *spec.get_if<Sum>();
        std::vector<AcvfTable> parts;
        std::vector<double> weights;
        for (const auto& c : s.components) {
            parts.push_back(acvf(c.spec, 0, tol));
            weights.push_back(c.weight);
        }
        table.emplace(spec, AcvfRoute::SumOfComponents, tol,
                      std::make_shared<SumSource>(std::move(parts), std::move(weights)));
    }
    table->extend(n_max);
    return *table;
}

AcvfTable acvf_by_quadrature(const ProcessSpec& fracdiff, std::size_t n_max, const Tolerance& tol) {
    tol.validate();
    if (fracdiff.get_if<FracDiff>() == nullptr) {
        throw ConfigError("the quadrature route needs a fractionally differenced process");
    }
    AcvfTable table(fracdiff, AcvfRoute::SpectralSubtraction, tol, std::make_shared<QuadratureSource>(fracdiff, tol));
    table.extend(n_max);
    return table;
}

AcvfTable acvf_by_convolution(const ProcessSpec& fracdiff, std::size_t n_max, const Tolerance& tol,
                              double truncation_tol) {
    tol.validate();
    const auto* f = fracdiff.get_if<FracDiff>();
    if (f == nullptr) throw ConfigError("the convolution route needs a fractionally differenced process");
    f->H.require_lrd("convolution route");
    const Fgn fp = *matched_fgn(fracdiff).get_if<Fgn>();
    std::size_t J = 256;
    while (true) {
        GCoeffs G = g_fourier_coeffs(f->H, f->driver, J, tol);
        if (G.tail_bound * fp.V < truncation_tol) {
            AcvfTable table(fracdiff, AcvfRoute::Convolution, tol,
                            std::make_shared<ConvolutionSource>(std::move(G), fp));
            table.extend(n_max);
            return table;
        }
        if (8 * 2 * J > tol.max_terms) {
            std::ostringstream msg;
            msg << "G truncation tail " << G.tail_bound * fp.V << " at J = " << J << " exceeds " << truncation_tol;
            throw ConvergenceError(msg.str());
        }
        J *= 2;
    }
}

ProcessSpec unit_variance(const ProcessSpec& spec, const Tolerance& tol) {
    const double g0 = acvf(spec, 0, tol).variance();
    if (!(g0 > 0.0)) throw DomainError("process has non-positive variance");
    return spec.scaled(1.0 / g0);
}

}  // namespace lrdlab
