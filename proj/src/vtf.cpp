#include "lrdlab/vtf.hpp"

#include <cmath>
#include <sstream>

#include "lrdlab/errors.hpp"

namespace lrdlab {

std::vector<double> double_integrate(std::span<const double> a, std::size_t n_max) {
    // (I a)(n+1) - (I a)(n) = a(0) + 2 sum_{k=1}^{n} a(k)
    std::vector<double> out(n_max + 1, 0.0);
    CompensatedSum band;
    CompensatedSum total;
    for (std::size_t n = 0; n < n_max; ++n) {
        const double an = n < a.size() ? a[n] : 0.0;
        band += n == 0 ? an : 2.0 * an;
        total += band.value();
        out[n + 1] = total.value();
    }
    return out;
}

VtfView::VtfView(AcvfTable acvf, std::size_t n_max) : acvf_(std::move(acvf)) {
    const auto gamma = n_max == 0 ? std::vector<double>{} : acvf_.values(n_max - 1);
    values_ = std::make_shared<const std::vector<double>>(double_integrate(gamma, n_max));
}

double VtfView::operator()(long n) const {
    const auto a = static_cast<std::size_t>(n < 0 ? -n : n);
    if (a >= values_->size()) {
        std::ostringstream msg;
        msg << "VTF covers lags 0.." << n_max() << " but lag " << a << " was requested";
        throw CoverageError(msg.str(), a);
    }
    return (*values_)[a];
}

VtfView vtf(const AcvfTable& acvf, std::size_t n_max) { return VtfView(acvf, n_max); }

double FixedPoint::omega(double m) const { return V * std::pow(std::abs(m), 2.0 * H.value()); }

double FixedPoint::rho(double n) const { return std::pow(std::abs(n), 2.0 * H.value()); }

double FixedPoint::omega_aggregated(double m, double n) const {
    const double h2 = 2.0 * H.value();
    return V * std::pow(m, h2 - 2.0) * std::pow(std::abs(n), h2);
}

FixedPoint fixed_point_of(const ProcessSpec& spec) {
    const auto fp = matched_fgn(spec);
    const auto& f = *fp.get_if<Fgn>();
    return FixedPoint{f.H, f.V};
}

AggregatedVtf::AggregatedVtf(VtfView base, std::size_t m) : base_(std::move(base)), m_(m) {
    if (m == 0) throw DomainError("aggregation level must be at least 1");
}

double AggregatedVtf::operator()(long n) const {
    const double m = static_cast<double>(m_);
    return base_(n * static_cast<long>(m_)) / (m * m);
}

double AggregatedVtf::variance() const { return (*this)(1); }

AggregatedVtf aggregate_vtf(const VtfView& v, std::size_t m) { return AggregatedVtf(v, m); }

double aggregate_ctf(const VtfView& v, std::size_t m, std::size_t n) {
    if (m == 0) throw DomainError("aggregation level must be at least 1");
    return v(static_cast<long>(m * n)) / v(static_cast<long>(m));
}

std::vector<double> symmetric_convolve(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) return {};
    const long la = static_cast<long>(a.size());
    const long lb = static_cast<long>(b.size());
    std::vector<double> c(a.size() + b.size() - 1);
    for (long n = 0; n < static_cast<long>(c.size()); ++n) {
        CompensatedSum acc;
        for (long j = -(lb - 1); j <= lb - 1; ++j) {
            const long i = std::abs(n - j);
            if (i < la) acc += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(std::abs(j))];
        }
        c[static_cast<std::size_t>(n)] = acc.value();
    }
    return c;
}

double conv_double_int_identity_check(std::span<const double> a, std::span<const double> b, std::size_t n_max) {
    if (a.empty() || b.empty()) return 0.0;
    const auto c = symmetric_convolve(a, b);
    const auto Ic = double_integrate(c, n_max);
    const long lb = static_cast<long>(b.size());
    const auto Ia = double_integrate(a, n_max + b.size());

    auto Ia_conv_b = [&](long n) {
        CompensatedSum acc;
        for (long j = -(lb - 1); j <= lb - 1; ++j) {
            acc += Ia[static_cast<std::size_t>(std::abs(n - j))] * b[static_cast<std::size_t>(std::abs(j))];
        }
        return acc.value();
    };
    const double at0 = Ia_conv_b(0);
    double residual = 0.0;
    for (std::size_t n = 0; n <= n_max; ++n) {
        residual = std::max(residual, std::abs(Ic[n] - (Ia_conv_b(static_cast<long>(n)) - at0)));
    }
    return residual;
}

}  // namespace lrdlab
