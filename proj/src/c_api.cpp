#include "lrdlab/lrdlab.h"

#include <cstdlib>
#include <cstring>
#include <iomanip>
#include <sstream>
#include <string>

#include "lrdlab/asymptotics.hpp"
#include "lrdlab/parallel.hpp"
#include "lrdlab/sampler.hpp"
#include "lrdlab/spec_json.hpp"

struct lrd_process {
    lrdlab::ProcessSpec spec;
};

struct lrd_acvf {
    lrdlab::AcvfTable table;
};

namespace {

thread_local std::string last_error;

lrdlab::Tolerance tolerance_from(const lrd_tolerance* t) {
    lrdlab::Tolerance tol;
    if (t != nullptr) {
        tol.abs_tol = t->abs_tol;
        tol.rel_tol = t->rel_tol;
        tol.max_terms = static_cast<std::size_t>(t->max_terms);
    }
    tol.validate();
    return tol;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class F>
lrd_status guarded(F&& body) {
    try {
        body();
        last_error.clear();
        return LRD_OK;
    } catch (const lrdlab::ConfigError& e) {
        last_error = e.what();
        return LRD_ERR_CONFIG;
    } catch (const lrdlab::DomainError& e) {
        last_error = e.what();
        return LRD_ERR_DOMAIN;
    } catch (const lrdlab::ConvergenceError& e) {
        last_error = e.what();
        return LRD_ERR_CONVERGENCE;
    } catch (const lrdlab::CoverageError& e) {
        last_error = e.what();
        return LRD_ERR_COVERAGE;
    } catch (const std::invalid_argument& e) {
        last_error = e.what();
        return LRD_ERR_ARGUMENT;
    } catch (const std::exception& e) {
        last_error = e.what();
        return LRD_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return LRD_ERR_INTERNAL;
    }
}

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

extern "C" {

const char* lrd_last_error(void) { return last_error.c_str(); }

const char* lrd_status_name(lrd_status status) {
    switch (status) {
        case LRD_OK: return "ok";
        case LRD_ERR_ARGUMENT: return "invalid argument";
        case LRD_ERR_CONFIG: return "configuration error";
        case LRD_ERR_DOMAIN: return "domain error";
        case LRD_ERR_CONVERGENCE: return "convergence error";
        case LRD_ERR_COVERAGE: return "coverage error";
        case LRD_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

lrd_tolerance lrd_tolerance_default(void) {
    const lrdlab::Tolerance t;
    return {t.abs_tol, t.rel_tol, static_cast<uint64_t>(t.max_terms)};
}

size_t lrd_thread_budget(void) { return lrdlab::thread_budget(); }

void lrd_string_free(char* s) { std::free(s); }

lrd_status lrd_process_from_json(const char* json, lrd_process** out) {
    return guarded([&] {
        require(json != nullptr && out != nullptr, "null argument");
        *out = new lrd_process{lrdlab::parse_process_spec(json)};
    });
}

void lrd_process_free(lrd_process* p) { delete p; }

lrd_status lrd_process_to_json(const lrd_process* p, char** out) {
    return guarded([&] {
        require(p != nullptr && out != nullptr, "null argument");
        *out = dup_string(lrdlab::to_json(p->spec).dump());
    });
}

lrd_status lrd_process_unit_variance(const lrd_process* p, const lrd_tolerance* tol, lrd_process** out) {
    return guarded([&] {
        require(p != nullptr && out != nullptr, "null argument");
        *out = new lrd_process{lrdlab::unit_variance(p->spec, tolerance_from(tol))};
    });
}

lrd_status lrd_process_dominant_hurst(const lrd_process* p, double* H) {
    return guarded([&] {
        require(p != nullptr && H != nullptr, "null argument");
        *H = p->spec.dominant_hurst();
    });
}

lrd_status lrd_fixed_point(const lrd_process* p, double* H, double* V) {
    return guarded([&] {
        require(p != nullptr && H != nullptr && V != nullptr, "null argument");
        const auto fp = lrdlab::fixed_point_of(p->spec);
        *H = fp.H.value();
        *V = fp.V;
    });
}

lrd_status lrd_spectrum(const lrd_process* p, const double* x, size_t count, const lrd_tolerance* tol, double* out) {
    return guarded([&] {
        require(p != nullptr && (count == 0 || (x != nullptr && out != nullptr)), "null argument");
        const auto t = tolerance_from(tol);
        for (size_t i = 0; i < count; ++i) out[i] = lrdlab::spectrum(p->spec, x[i], t);
    });
}

lrd_status lrd_acvf_create(const lrd_process* p, size_t n_max, const lrd_tolerance* tol, lrd_acvf** out) {
    return guarded([&] {
        require(p != nullptr && out != nullptr, "null argument");
        *out = new lrd_acvf{lrdlab::acvf(p->spec, n_max, tolerance_from(tol))};
    });
}

void lrd_acvf_free(lrd_acvf* a) { delete a; }

lrd_status lrd_acvf_values(const lrd_acvf* a, size_t n_max, double* out) {
    return guarded([&] {
        require(a != nullptr && out != nullptr, "null argument");
        const auto v = a->table.values(n_max);
        std::copy(v.begin(), v.end(), out);
    });
}

const char* lrd_acvf_route(const lrd_acvf* a) {
    if (a == nullptr) return "";
    return lrdlab::to_string(a->table.route()).data();
}

lrd_status lrd_vtf(const lrd_acvf* a, size_t m, size_t n_max, double* out) {
    return guarded([&] {
        require(a != nullptr && out != nullptr, "null argument");
        require(m >= 1, "aggregation level must be at least 1");
        const auto v = lrdlab::vtf(a->table, m * n_max);
        const auto agg = lrdlab::aggregate_vtf(v, m);
        for (size_t n = 0; n <= n_max; ++n) out[n] = agg(static_cast<long>(n));
    });
}

lrd_status lrd_ctf(const lrd_acvf* a, size_t m, size_t n_max, double* out) {
    return guarded([&] {
        require(a != nullptr && out != nullptr, "null argument");
        require(m >= 1, "aggregation level must be at least 1");
        const auto v = lrdlab::vtf(a->table, m * std::max<size_t>(n_max, 1));
        for (size_t n = 0; n <= n_max; ++n) out[n] = lrdlab::aggregate_ctf(v, m, n);
    });
}

lrd_status lrd_closeness(const lrd_process* p, const lrd_closeness_options* opts, const lrd_tolerance* tol,
                         char** json_out, char** csv_out) {
    return guarded([&] {
        require(p != nullptr, "null argument");
        lrdlab::ClosenessOptions o;
        o.tol = tolerance_from(tol);
        if (opts != nullptr) {
            if (opts->offset_probes != nullptr) {
                o.offset_probes.assign(opts->offset_probes, opts->offset_probes + opts->offset_probe_count);
            }
            if (opts->levels != nullptr) o.levels.assign(opts->levels, opts->levels + opts->level_count);
            if (opts->ctf_lag != 0) o.ctf_lag = opts->ctf_lag;
        }
        const auto report = lrdlab::closeness_report(p->spec, o);
        char* j = json_out != nullptr ? dup_string(lrdlab::to_json(report).dump()) : nullptr;
        char* c = csv_out != nullptr ? dup_string(lrdlab::curves_to_csv(report.curves)) : nullptr;
        if (json_out != nullptr) *json_out = j;
        if (csv_out != nullptr) *csv_out = c;
    });
}

lrd_status lrd_brittleness(int id, const char* config_json, const size_t* levels, size_t level_count,
                           const size_t* lags, size_t lag_count, const lrd_tolerance* tol, char** json_out,
                           char** csv_out) {
    return guarded([&] {
        const auto t = tolerance_from(tol);
        lrdlab::BrittlenessExperiment e = [&] {
            if (config_json != nullptr) {
                nlohmann::json j;
                try {
                    j = nlohmann::json::parse(config_json);
                } catch (const nlohmann::json::parse_error& err) {
                    throw lrdlab::ConfigError(std::string("malformed experiment JSON: ") + err.what());
                }
                return lrdlab::experiment_from_json(j);
            }
            return lrdlab::builtin_experiment(id, t);
        }();
        if (levels != nullptr) e.levels.assign(levels, levels + level_count);
        if (lags != nullptr) e.lags.assign(lags, lags + lag_count);
        const auto table = lrdlab::run_brittleness(e, t);
        if (json_out != nullptr) {
            nlohmann::json cells = nlohmann::json::array();
            for (const auto& c : table.cells) {
                cells.push_back({{"m", c.m}, {"n", c.n}, {"base", c.base_ratio}, {"perturbed", c.perturbed_ratio}});
            }
            nlohmann::json j{{"experiment", table.name},
                             {"base", lrdlab::to_json(e.base)},
                             {"noise", lrdlab::to_json(e.noise)},
                             {"weight", e.weight},
                             {"fixed_point", {{"H", table.fixed_point.H.value()}, {"V", table.fixed_point.V}}},
                             {"cells", cells}};
            *json_out = dup_string(j.dump(2));
        }
        if (csv_out != nullptr) *csv_out = dup_string(lrdlab::curves_to_csv(table.curves()));
    });
}

lrd_status lrd_sample(const lrd_process* p, size_t N, size_t count, uint64_t seed, const lrd_tolerance* tol,
                      double* out) {
    return guarded([&] {
        require(p != nullptr && (count == 0 || out != nullptr), "null argument");
        const auto paths = lrdlab::sample_paths(p->spec, N, count, seed, tolerance_from(tol));
        for (size_t i = 0; i < paths.size(); ++i) std::copy(paths[i].values.begin(), paths[i].values.end(), out + i * N);
    });
}

}  // extern "C"
