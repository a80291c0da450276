#include "lrdlab/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "lrdlab/errors.hpp"
#include "lrdlab/filon.hpp"
#include "lrdlab/parallel.hpp"
#include "lrdlab/spec_json.hpp"

namespace lrdlab {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kEps = std::numeric_limits<double>::epsilon();

struct LineFit {
    double slope;
    double intercept;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

bool same_fixed_point(const FixedPoint& a, const FixedPoint& b, double rel = 1e-10) {
    return std::abs(a.H.value() - b.H.value()) <= rel &&
           std::abs(a.V - b.V) <= rel * std::max(std::abs(a.V), std::abs(b.V));
}

std::vector<double> acvf_gap_sequence(const ProcessSpec& spec, const FixedPoint& fp, std::size_t n_max,
                                      const Tolerance& tol) {
    const auto gamma = acvf(spec, n_max, tol).values(n_max);
    std::vector<double> d(n_max + 1);
    for (std::size_t k = 0; k <= n_max; ++k) d[k] = gamma[k] - fgn_acvf(fp.H, fp.V, k);
    return d;
}

// -2 V sum_{j>=1} j^{2H} w(G_j) with a fitted power-law tail beyond J.
double G_moment(const GCoeffs& G, double V, bool absolute) {
    const double h2 = 2.0 * G.H.value();
    const std::size_t J = G.J();
    CompensatedSum acc;
    for (std::size_t j = 1; j <= J; ++j) {
        const double g = absolute ? std::abs(G.values[j]) : G.values[j];
        acc += std::pow(static_cast<double>(j), h2) * g;
    }
    std::vector<double> lx;
    std::vector<double> ly;
    const double sign = G.values[J] < 0.0 ? -1.0 : 1.0;
    bool same_sign = true;
    for (std::size_t j = J / 2; j <= J; ++j) {
        if (G.values[j] * sign <= 0.0) {
            same_sign = false;
            break;
        }
        lx.push_back(std::log(static_cast<double>(j)));
        ly.push_back(std::log(std::abs(G.values[j])));
    }
    if (same_sign && lx.size() >= 3) {
        const auto fit = least_squares(lx, ly);
        const double decay = -fit.slope;
        if (decay - h2 > 1.0) {
            const double K = std::exp(fit.intercept) * (absolute ? 1.0 : sign);
            acc += K * power_tail_sum(static_cast<double>(J + 1), decay - h2);
        }
    }
    return -2.0 * V * acc.value();
}

std::vector<double> log_space(double lo, double hi, std::size_t count) {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        out[i] = std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
    }
    return out;
}

std::vector<std::size_t> default_n_grid() {
    std::vector<std::size_t> n;
    for (std::size_t k = 1; k <= 10; ++k) n.push_back(k);
    for (double v : log_space(10.0, 1e4, 31)) {
        const auto k = static_cast<std::size_t>(std::llround(v));
        if (k > n.back()) n.push_back(k);
    }
    return n;
}

double number_or_nan(const json& j, const char* key) {
    const auto& v = j.at(key);
    return v.is_null() ? kNaN : v.get<double>();
}

}  // namespace

double power_tail_sum(double n, double s) {
    if (!(s > 1.0) || !(n >= 1.0)) throw DomainError("power_tail_sum needs s > 1 and n >= 1");
    // Sum the first terms directly so the Euler-Maclaurin remainder is negligible.
    CompensatedSum acc;
    double k = n;
    for (; k < 64.0; k += 1.0) acc += std::pow(k, -s);
    const double s5 = s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0);
    acc += std::pow(k, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(k, -s) + s * std::pow(k, -s - 1.0) / 12.0 -
           s * (s + 1.0) * (s + 2.0) * std::pow(k, -s - 3.0) / 720.0 + s5 * std::pow(k, -s - 5.0) / 30240.0;
    return acc.value();
}

VtfOffset vtf_offset(const ProcessSpec& spec, const FixedPoint& fp, std::span<const std::size_t> n_probe,
                     const Tolerance& tol, std::size_t G_terms) {
    if (n_probe.empty()) throw ConfigError("vtf_offset needs at least one probe");
    VtfOffset out;
    out.probes.assign(n_probe.begin(), n_probe.end());
    std::sort(out.probes.begin(), out.probes.end());
    const std::size_t n_star = out.probes.back();
    if (n_star == 0) throw ConfigError("vtf_offset probes must be positive");

    const auto d = acvf_gap_sequence(spec, fp, n_star - 1, tol);
    const auto omega_d = double_integrate(d, n_star);
    for (std::size_t p : out.probes) out.offsets.push_back(omega_d[p]);
    out.D_hat = out.offsets.back();

    const double a = 4.0 - 2.0 * fp.H.value();
    out.D_extrapolated = out.D_hat;
    if (n_star >= 20) {
        CompensatedSum c;
        std::size_t count = 0;
        for (std::size_t k = n_star / 2; k < n_star; ++k, ++count) c += d[k] * std::pow(static_cast<double>(k), a);
        out.tail_coefficient = c.value() / static_cast<double>(count);
        const double ns = static_cast<double>(n_star);
        const double tail = power_tail_sum(ns, a - 1.0) - ns * power_tail_sum(ns, a);
        out.D_extrapolated = out.D_hat - 2.0 * out.tail_coefficient * tail;
    }

    if (out.probes.size() >= 2) {
        out.stabilisation = std::abs(out.offsets.back() - out.offsets[out.offsets.size() - 2]);
        out.inconclusive = !(out.stabilisation < 1e-3 * std::abs(out.D_hat)) && out.stabilisation != 0.0;
    } else {
        out.inconclusive = true;
    }

    if (const auto* f = spec.get_if<Fgn>(); f != nullptr && same_fixed_point({f->H, f->V}, fp)) {
        out.D_formula_signed = 0.0;
        out.D_formula_abs = 0.0;
    } else if (const auto* f = spec.get_if<FracDiff>(); f != nullptr && f->H.is_lrd()) {
        const auto G = g_fourier_coeffs(f->H, f->driver, G_terms, tol);
        out.D_formula_signed = G_moment(G, fp.V, false);
        out.D_formula_abs = G_moment(G, fp.V, true);
    } else {
        out.D_formula_signed = kNaN;
        out.D_formula_abs = kNaN;
    }

    auto close = [&](double candidate) {
        if (std::isnan(candidate)) return false;
        const double ref = out.D_extrapolated;
        if (ref == 0.0) return candidate == 0.0;
        return std::abs(candidate - ref) <= 1e-4 * std::abs(ref);
    };
    const bool s = close(out.D_formula_signed);
    const bool b = close(out.D_formula_abs);
    out.match = s && b ? "both" : s ? "signed" : b ? "absolute" : "none";
    return out;
}

SlopeResult ctf_convergence_slope(const ProcessSpec& spec, const FixedPoint& fp, std::size_t n,
                                  std::span<const std::size_t> levels, const Tolerance& tol, double D) {
    if (n < 1) throw ConfigError("CTF lag must be at least 1");
    if (levels.size() < 2) throw ConfigError("slope regression needs at least two levels");
    std::vector<std::size_t> ms(levels.begin(), levels.end());
    std::sort(ms.begin(), ms.end());
    if (ms.front() == 0) throw ConfigError("aggregation levels must be positive");
    if (static_cast<double>(ms.back()) < 100.0 * static_cast<double>(ms.front())) {
        throw ConfigError("slope regression levels must span at least two decades");
    }

    SlopeResult out;
    out.n = n;
    out.levels = ms;
    const VtfView v = vtf(acvf(spec, ms.back() * n, tol), ms.back() * n);
    const double target = fp.rho(static_cast<double>(n));
    const double h2 = 2.0 * fp.H.value();

    std::vector<double> lx;
    std::vector<double> ly;
    std::vector<std::size_t> used;
    for (std::size_t m : ms) {
        const double rho = aggregate_ctf(v, m, n);
        const double diff = rho - target;
        out.differences.push_back(diff);
        if (std::abs(diff) > 10.0 * kEps * std::max(std::abs(rho), target)) {
            lx.push_back(std::log(static_cast<double>(m)));
            ly.push_back(std::log(std::abs(diff)));
            used.push_back(m);
        }
    }
    if (used.size() < 2) {
        out.saturated = true;
        out.slope_hat = 0.0;
        out.slope_full_range = 0.0;
    } else {
        out.slope_full_range = least_squares(lx, ly).slope;
        const double top = static_cast<double>(ms.back()) / 10.0;
        std::vector<double> tx;
        std::vector<double> ty;
        for (std::size_t i = 0; i < used.size(); ++i) {
            if (static_cast<double>(used[i]) >= top) {
                tx.push_back(lx[i]);
                ty.push_back(ly[i]);
            }
        }
        if (tx.size() < 2) {
            tx.assign(lx.end() - 2, lx.end());
            ty.assign(ly.end() - 2, ly.end());
        }
        out.slope_hat = least_squares(tx, ty).slope;
        const double m_top = static_cast<double>(used.back());
        out.fitted_coefficient = std::copysign(std::exp(ly.back()), out.differences.back()) * std::pow(m_top, h2);
    }
    out.predicted_coefficient = std::isnan(D) ? kNaN : D / fp.V * (1.0 - target);
    return out;
}

SpectralGapProfile spectral_gap_profile(const ProcessSpec& spec, const FixedPoint& fp,
                                        std::span<const double> x_grid, const Tolerance& tol) {
    SpectralGapProfile out;
    out.x.assign(x_grid.begin(), x_grid.end());
    for (double x : out.x) {
        if (!(x > 0.0 && x <= 0.5)) throw DomainError("spectral gap grid must lie in (0, 1/2]");
    }

    std::function<double(double)> phi;
    const auto* f = spec.get_if<Fgn>();
    const auto* fd = spec.get_if<FracDiff>();
    if (f != nullptr && same_fixed_point({f->H, f->V}, fp)) {
        phi = [](double) { return 0.0; };
    } else if (fd != nullptr && fd->H.is_lrd() && same_fixed_point(fixed_point_of(spec), fp)) {
        auto ratio = std::make_shared<SpectralRatio>(spec, tol);
        phi = [ratio](double x) { return ratio->phi(x); };
    } else {
        const auto star = ProcessSpec::fgn(fp.H.value(), fp.V);
        phi = [spec, star, tol](double x) { return spectrum(spec, x, tol) - spectrum(star, x, tol); };
    }
    out.phi.resize(out.x.size());
    parallel_for(out.x.size(), [&](std::size_t i) { out.phi[i] = phi(out.x[i]); });

    std::vector<double> lx;
    std::vector<double> ly;
    auto collect = [&](double lo, double hi) {
        lx.clear();
        ly.clear();
        for (std::size_t i = 0; i < out.x.size(); ++i) {
            if (out.x[i] >= lo && out.x[i] <= hi && out.phi[i] != 0.0) {
                lx.push_back(std::log(out.x[i]));
                ly.push_back(std::log(std::abs(out.phi[i])));
            }
        }
    };
    collect(1e-4, 1e-2);
    if (lx.size() < 3) collect(0.0, 0.5);
    out.slope = lx.size() >= 2 ? least_squares(lx, ly).slope : kNaN;
    out.nonnegative = std::all_of(out.phi.begin(), out.phi.end(), [](double p) { return p >= 0.0; });
    return out;
}

std::vector<double> spectral_gap_coefficients(const ProcessSpec& fracdiff, std::span<const std::size_t> lags,
                                              const Tolerance& tol) {
    const auto ratio = std::make_shared<SpectralRatio>(fracdiff, tol);
    std::vector<double> freq(lags.begin(), lags.end());
    FilonOptions opts;
    opts.max_refinements = 8;
    auto result = cosine_transform([ratio](double x) { return ratio->phi(x); }, freq, tol, opts);
    for (auto& v : result.values) v *= 2.0;
    return result.values;
}

AcvfGapProfile acvf_gap_profile(const ProcessSpec& spec, const FixedPoint& fp, std::span<const std::size_t> n_grid,
                                const Tolerance& tol) {
    AcvfGapProfile out;
    if (n_grid.empty()) return out;
    out.n.assign(n_grid.begin(), n_grid.end());
    const std::size_t n_max = *std::max_element(out.n.begin(), out.n.end());
    const auto d = acvf_gap_sequence(spec, fp, n_max, tol);
    const auto omega_d = double_integrate(d, n_max);
    const double a = 4.0 - 2.0 * fp.H.value();
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t n : out.n) {
        out.d.push_back(d[n]);
        const double env = std::pow(static_cast<double>(n), a) * std::abs(d[n]);
        out.envelope.push_back(env);
        out.vtf_gap.push_back(omega_d[n]);
        if (n >= 1000 && n <= 10000) {
            lo = std::min(lo, env);
            hi = std::max(hi, env);
        }
    }
    out.envelope_variation = hi >= lo ? (lo > 0.0 ? (hi - lo) / lo : (hi == 0.0 ? 0.0 : kNaN)) : kNaN;
    return out;
}

double beta_hat(std::span<const std::size_t> n_grid, std::span<const double> omega_d, double H) {
    if (n_grid.size() != omega_d.size() || n_grid.empty()) throw ConfigError("beta_hat needs matching grids");
    const std::size_t top = *std::max_element(n_grid.begin(), n_grid.end());
    std::vector<double> lx;
    std::vector<double> ly;
    double first = kNaN;
    double last = kNaN;
    std::size_t first_n = top + 1;
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        if (static_cast<double>(n_grid[i]) * 10.0 < static_cast<double>(top)) continue;
        if (n_grid[i] < first_n) {
            first_n = n_grid[i];
            first = omega_d[i];
        }
        if (n_grid[i] == top) last = omega_d[i];
        if (omega_d[i] != 0.0) {
            lx.push_back(std::log(static_cast<double>(n_grid[i])));
            ly.push_back(std::log(std::abs(omega_d[i])));
        }
    }
    if (last == 0.0 || std::abs(last - first) <= 1e-3 * std::abs(last) || lx.size() < 2) return 0.0;
    return std::clamp(least_squares(lx, ly).slope, 0.0, 2.0 * H);
}

ClosenessReport closeness_report(const ProcessSpec& spec, const ClosenessOptions& opts) {
    const FixedPoint fp = fixed_point_of(spec);
    const auto x_grid = opts.x_grid.empty() ? log_space(1e-6, 0.5, 61) : opts.x_grid;
    const auto n_grid = opts.n_grid.empty() ? default_n_grid() : opts.n_grid;

    const auto offset = vtf_offset(spec, fp, opts.offset_probes, opts.tol, opts.G_terms);
    const auto slope = ctf_convergence_slope(spec, fp, opts.ctf_lag, opts.levels, opts.tol, offset.D_extrapolated);
    const auto sgap = spectral_gap_profile(spec, fp, x_grid, opts.tol);
    const auto agap = acvf_gap_profile(spec, fp, n_grid, opts.tol);

    ClosenessReport r{spec,
                      fp,
                      offset.D_hat,
                      offset.D_extrapolated,
                      offset.D_formula_signed,
                      offset.D_formula_abs,
                      offset.match,
                      offset.stabilisation,
                      offset.inconclusive,
                      beta_hat(agap.n, agap.vtf_gap, fp.H.value()),
                      slope.slope_hat,
                      slope.slope_full_range,
                      slope.saturated,
                      slope.predicted_coefficient,
                      slope.fitted_coefficient,
                      sgap.slope,
                      sgap.nonnegative,
                      agap.envelope_variation,
                      {}};

    Curve off{"vtf_offset", {}};
    for (std::size_t i = 0; i < offset.probes.size(); ++i) {
        off.points.push_back({1.0, static_cast<double>(offset.probes[i]), offset.offsets[i]});
    }
    Curve ctf{"ctf_gap", {}};
    for (std::size_t i = 0; i < slope.levels.size(); ++i) {
        ctf.points.push_back(
            {static_cast<double>(slope.levels[i]), static_cast<double>(slope.n), slope.differences[i]});
    }
    Curve phi{"spectral_gap", {}};
    for (std::size_t i = 0; i < sgap.x.size(); ++i) phi.points.push_back({1.0, sgap.x[i], sgap.phi[i]});
    Curve dn{"acvf_gap", {}};
    Curve env{"acvf_gap_envelope", {}};
    Curve wd{"vtf_gap", {}};
    for (std::size_t i = 0; i < agap.n.size(); ++i) {
        const double n = static_cast<double>(agap.n[i]);
        dn.points.push_back({1.0, n, agap.d[i]});
        env.points.push_back({1.0, n, agap.envelope[i]});
        wd.points.push_back({1.0, n, agap.vtf_gap[i]});
    }
    r.curves = {off, ctf, phi, dn, env, wd};
    return r;
}

json to_json(const ClosenessReport& r) {
    json curves = json::array();
    for (const auto& c : r.curves) {
        json pts = json::array();
        for (const auto& p : c.points) pts.push_back({p.m, p.n, p.value});
        curves.push_back({{"label", c.label}, {"points", pts}});
    }
    auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    return {{"spec", to_json(r.spec)},
            {"fixed_point", {{"H", r.fixed_point.H.value()}, {"V", r.fixed_point.V}}},
            {"D_hat", num(r.D_hat)},
            {"D_extrapolated", num(r.D_extrapolated)},
            {"D_formula_signed", num(r.D_formula_signed)},
            {"D_formula_abs", num(r.D_formula_abs)},
            {"D_match", r.D_match},
            {"offset_stabilisation", num(r.offset_stabilisation)},
            {"offset_inconclusive", r.offset_inconclusive},
            {"beta_hat", num(r.beta_hat)},
            {"slope_hat", num(r.slope_hat)},
            {"slope_full_range", num(r.slope_full_range)},
            {"slope_saturated", r.slope_saturated},
            {"predicted_coefficient", num(r.predicted_coefficient)},
            {"fitted_coefficient", num(r.fitted_coefficient)},
            {"phi_slope", num(r.phi_slope)},
            {"phi_nonnegative", r.phi_nonnegative},
            {"envelope_variation", num(r.envelope_variation)},
            {"curves", curves}};
}

ClosenessReport closeness_report_from_json(const json& j) {
    try {
        const auto& fpj = j.at("fixed_point");
        ClosenessReport r{process_spec_from_json(j.at("spec")),
                          FixedPoint{HurstParam(fpj.at("H").get<double>()), fpj.at("V").get<double>()},
                          number_or_nan(j, "D_hat"),
                          number_or_nan(j, "D_extrapolated"),
                          number_or_nan(j, "D_formula_signed"),
                          number_or_nan(j, "D_formula_abs"),
                          j.at("D_match").get<std::string>(),
                          number_or_nan(j, "offset_stabilisation"),
                          j.at("offset_inconclusive").get<bool>(),
                          number_or_nan(j, "beta_hat"),
                          number_or_nan(j, "slope_hat"),
                          number_or_nan(j, "slope_full_range"),
                          j.at("slope_saturated").get<bool>(),
                          number_or_nan(j, "predicted_coefficient"),
                          number_or_nan(j, "fitted_coefficient"),
                          number_or_nan(j, "phi_slope"),
                          j.at("phi_nonnegative").get<bool>(),
                          number_or_nan(j, "envelope_variation"),
                          {}};
        for (const auto& c : j.at("curves")) {
            Curve curve{c.at("label").get<std::string>(), {}};
            for (const auto& p : c.at("points")) {
                auto at = [&](std::size_t i) { return p.at(i).is_null() ? kNaN : p.at(i).get<double>(); };
                curve.points.push_back({at(0), at(1), at(2)});
            }
            r.curves.push_back(std::move(curve));
        }
        return r;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed closeness report: ") + e.what());
    }
}

std::string curves_to_csv(const std::vector<Curve>& curves) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "series_label,m,n,value\n";
    for (const auto& c : curves) {
        for (const auto& p : c.points) os << c.label << ',' << p.m << ',' << p.n << ',' << p.value << '\n';
    }
    return os.str();
}

ProcessSpec BrittlenessExperiment::perturbed() const { return ProcessSpec::sum({{base, 1.0}, {noise, weight}}); }

BrittlenessExperiment builtin_experiment(int id, const Tolerance& tol) {
    auto unit_farima = [](double d) {
        return ProcessSpec::fracdiff(0.5 + d, ShortMemorySpec::white_noise(
                                                  std::exp(2.0 * log_gamma(1.0 - d) - log_gamma(1.0 - 2.0 * d))));
    };
    std::vector<std::size_t> lags;
    for (std::size_t n = 1; n <= 10; ++n) lags.push_back(n);
    const std::vector<std::size_t> levels{1, 10, 100};
    switch (id) {
        case 1:
            return {"experiment1", unit_farima(0.3), ProcessSpec::fracdiff(0.5, ShortMemorySpec::white_noise(1.0)),
                    0.1, levels, lags};
        case 2: {
            const double phi = 0.3;
            const double theta = 0.7;
            const double arma_var = (1.0 + 2.0 * phi * theta + theta * theta) / (1.0 - phi * phi);
            auto base = unit_variance(
                ProcessSpec::fracdiff(0.8, ShortMemorySpec::arma({phi}, {theta}, 1.0)), tol);
            auto noise = ProcessSpec::fracdiff(0.5, ShortMemorySpec::arma({phi}, {theta}, 1.0 / arma_var));
            return {"experiment2", std::move(base), std::move(noise), 0.1, levels, lags};
        }
        case 3:
            return {"experiment3", unit_farima(0.3), unit_farima(0.2), 0.1, levels, lags};
        default:
            throw ConfigError("built-in experiment id must be 1, 2 or 3");
    }
}

BrittlenessExperiment experiment_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
    for (const auto& [key, _] : j.items()) {
        static const char* allowed[] = {"name", "base", "noise", "weight", "levels", "lags"};
        if (std::find_if(std::begin(allowed), std::end(allowed), [&](const char* a) { return key == a; }) ==
            std::end(allowed)) {
            throw ConfigError("unknown field '" + key + "' in experiment config");
        }
    }
    try {
        BrittlenessExperiment e{j.value("name", std::string("custom")),
                                process_spec_from_json(j.at("base")),
                                process_spec_from_json(j.at("noise")),
                                j.value("weight", 0.1),
                                j.value("levels", std::vector<std::size_t>{1, 10, 100}),
                                j.value("lags", std::vector<std::size_t>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10})};
        return e;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed experiment config: ") + e.what());
    }
}

const BrittlenessCell& BrittlenessTable::at(std::size_t m, std::size_t n) const {
    for (const auto& c : cells) {
        if (c.m == m && c.n == n) return c;
    }
    throw CoverageError("brittleness table has no cell at the requested (m, n)", m * n);
}

std::vector<Curve> BrittlenessTable::curves() const {
    std::vector<Curve> out;
    std::vector<std::size_t> levels;
    for (const auto& c : cells) {
        if (std::find(levels.begin(), levels.end(), c.m) == levels.end()) levels.push_back(c.m);
    }
    for (std::size_t m : levels) {
        Curve base{name + ":base:m=" + std::to_string(m), {}};
        Curve pert{name + ":perturbed:m=" + std::to_string(m), {}};
        for (const auto& c : cells) {
            if (c.m != m) continue;
            base.points.push_back({static_cast<double>(m), static_cast<double>(c.n), c.base_ratio});
            pert.points.push_back({static_cast<double>(m), static_cast<double>(c.n), c.perturbed_ratio});
        }
        out.push_back(std::move(base));
        out.push_back(std::move(pert));
    }
    return out;
}

BrittlenessTable run_brittleness(const BrittlenessExperiment& e, const Tolerance& tol) {
    if (!(e.weight > 0.0)) throw ConfigError("brittleness weight must be positive");
    if (e.levels.empty() || e.lags.empty()) throw ConfigError("brittleness experiment needs levels and lags");
    for (std::size_t v : e.levels) {
        if (v == 0) throw ConfigError("aggregation levels must be positive");
    }
    for (std::size_t v : e.lags) {
        if (v == 0) throw ConfigError("lags must be positive");
    }
    const auto perturbed = e.perturbed();
    const FixedPoint fp = fixed_point_of(e.base);
    const FixedPoint fpz = fixed_point_of(perturbed);
    if (!same_fixed_point(fp, fpz)) {
        std::ostringstream msg;
        msg << std::setprecision(17) << "base and perturbed processes have different fixed points: (H, V) = ("
            << fp.H.value() << ", " << fp.V << ") vs (" << fpz.H.value() << ", " << fpz.V << ")";
        throw ConfigError(msg.str());
    }
    const std::size_t reach = *std::max_element(e.levels.begin(), e.levels.end()) *
                              *std::max_element(e.lags.begin(), e.lags.end());
    const VtfView vx = vtf(acvf(e.base, reach, tol), reach);
    const VtfView vz = vtf(acvf(perturbed, reach, tol), reach);

    BrittlenessTable table{e.name, fp, {}};
    for (std::size_t m : e.levels) {
        const auto ax = aggregate_vtf(vx, m);
        const auto az = aggregate_vtf(vz, m);
        for (std::size_t n : e.lags) {
            const double star = fp.omega_aggregated(static_cast<double>(m), static_cast<double>(n));
            const auto ln = static_cast<long>(n);
            table.cells.push_back({m, n, ax(ln) / star, az(ln) / star});
        }
    }
    return table;
}

}  // namespace lrdlab
