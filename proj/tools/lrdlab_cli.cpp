// Command-line front end over the lrdlab C API.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "lrdlab/lrdlab.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Failure {
    int code;
    std::string message;
};

int exit_code_for(lrd_status s) {
    switch (s) {
        case LRD_OK: return 0;
        case LRD_ERR_CONVERGENCE:
        case LRD_ERR_COVERAGE: return kExitNumeric;
        case LRD_ERR_INTERNAL: return 1;
        default: return kExitConfig;
    }
}

void check(lrd_status s) {
    if (s != LRD_OK) throw Failure{exit_code_for(s), std::string(lrd_status_name(s)) + ": " + lrd_last_error()};
}

struct ProcessDeleter {
    void operator()(lrd_process* p) const { lrd_process_free(p); }
};
struct AcvfDeleter {
    void operator()(lrd_acvf* a) const { lrd_acvf_free(a); }
};
struct StringDeleter {
    void operator()(char* s) const { lrd_string_free(s); }
};
using ProcessPtr = std::unique_ptr<lrd_process, ProcessDeleter>;
using AcvfPtr = std::unique_ptr<lrd_acvf, AcvfDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{kExitConfig, "cannot read " + path};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ProcessPtr load_process(const std::string& path, bool unit_variance, const lrd_tolerance& tol) {
    const std::string text = read_file(path);
    lrd_process* raw = nullptr;
    check(lrd_process_from_json(text.c_str(), &raw));
    ProcessPtr p(raw);
    if (unit_variance) {
        lrd_process* scaled = nullptr;
        check(lrd_process_unit_variance(p.get(), &tol, &scaled));
        p.reset(scaled);
    }
    return p;
}

std::uint64_t parse_seed(const std::string& text) {
    const bool hex = text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X');
    const std::string digits = hex ? text.substr(2) : text;
    if (digits.empty() || digits[0] == '-' || digits[0] == '+') throw Failure{kExitConfig, "invalid seed: " + text};
    std::size_t used = 0;
    std::uint64_t value = 0;
    try {
        value = std::stoull(digits, &used, hex ? 16 : 10);
    } catch (const std::exception&) {
        throw Failure{kExitConfig, "invalid seed: " + text};
    }
    if (used != digits.size()) throw Failure{kExitConfig, "invalid seed: " + text};
    return value;
}

std::string format_number(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::string json_number(double v) { return std::isfinite(v) ? format_number(v) : "null"; }

// Two-column table as CSV or as {"columns":[...],"<col>":[...],...}.
std::string render_table(const std::string& format, const std::string& key_name, const std::vector<double>& keys,
                         const std::string& value_name, const std::vector<double>& values,
                         const std::string& extra = "") {
    std::ostringstream os;
    if (format == "json") {
        os << "{" << extra << "\"" << key_name << "\":[";
        for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << json_number(keys[i]);
        os << "],\"" << value_name << "\":[";
        for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << json_number(values[i]);
        os << "]}\n";
    } else {
        os << key_name << ',' << value_name << '\n';
        for (std::size_t i = 0; i < keys.size(); ++i) {
            os << format_number(keys[i]) << ',' << format_number(values[i]) << '\n';
        }
    }
    return os.str();
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Failure{kExitConfig, "cannot write " + out_path};
    out << text;
}

std::vector<double> index_keys(std::size_t first, std::size_t last) {
    std::vector<double> k;
    for (std::size_t n = first; n <= last; ++n) k.push_back(static_cast<double>(n));
    return k;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lrdlab: long-range dependence analysis (spectra, ACVF, VTF/CTF, closeness to fGn, sampling).\n"
                 "Exit codes: 0 success, 2 configuration or parse error, 3 numerical non-convergence or coverage."};
    app.require_subcommand(1);

    std::string spec_path;
    std::string out_path;
    std::string format;
    double abs_tol = lrd_tolerance_default().abs_tol;

    auto common = [&](CLI::App* cmd, bool needs_spec, const std::string& default_format) {
        if (needs_spec) cmd->add_option("--spec", spec_path, "Process-spec JSON file")->required();
        cmd->add_option("--out", out_path, "Output file (default: stdout)");
        cmd->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->default_str(default_format);
        cmd->add_option("--tol", abs_tol, "Absolute tolerance of adaptive loops")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    };

    auto* spectrum = app.add_subcommand("spectrum", "Spectral density on a grid avoiding x = 0");
    double x_min = 1e-4;
    double x_max = 0.5;
    std::size_t points = 100;
    std::string grid = "log";
    common(spectrum, true, "csv");
    spectrum->add_option("--xmin", x_min, "Smallest x, in (0, 1/2]")->capture_default_str();
    spectrum->add_option("--xmax", x_max, "Largest x, in (0, 1/2]")->capture_default_str();
    spectrum->add_option("--points", points, "Grid size")->check(CLI::PositiveNumber)->capture_default_str();
    spectrum->add_option("--grid", grid, "Grid spacing")->check(CLI::IsMember({"log", "linear"}))->capture_default_str();

    std::size_t n_max = 100;
    std::size_t m = 1;
    bool unit_variance = false;
    auto table_cmd = [&](const char* name, const char* help) {
        auto* cmd = app.add_subcommand(name, help);
        common(cmd, true, "csv");
        cmd->add_option("--nmax", n_max, "Largest lag")->capture_default_str();
        cmd->add_option("--m", m, "Aggregation level")->check(CLI::PositiveNumber)->capture_default_str();
        cmd->add_flag("--unit-variance", unit_variance, "Rescale the process to unit variance first");
        return cmd;
    };
    auto* acvf_cmd = table_cmd("acvf", "Autocovariance gamma^(m)(n), n = 0..nmax");
    auto* vtf_cmd = table_cmd("vtf", "Variance-time function omega^(m)(n) = omega(mn)/m^2, n = 0..nmax");
    auto* ctf_cmd = table_cmd("ctf", "Correlation-time function rho^(m)(n) = omega(mn)/omega(m), n = 0..nmax");

    auto* closeness = app.add_subcommand("closeness", "Closeness report against the matched fGn fixed point");
    std::vector<std::size_t> levels;
    std::vector<std::size_t> lags;
    std::size_t ctf_lag = 2;
    common(closeness, true, "json");
    closeness->add_option("--levels", levels, "Aggregation levels for the CTF slope (default 1,2,4,...,1024)")
        ->delimiter(',');
    closeness->add_option("--lags", lags, "VTF offset probes (default 10,100,1000,10000)")->delimiter(',');
    closeness->add_option("--ctf-lag", ctf_lag, "Lag n of the CTF slope regression")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* brittle = app.add_subcommand("brittle", "Normalized VTF ratios of a base and a perturbed process");
    int experiment = 0;
    std::string config_path;
    common(brittle, false, "csv");
    auto* exp_opt = brittle->add_option("--experiment", experiment, "Built-in experiment 1, 2 or 3")
                        ->check(CLI::Range(1, 3));
    auto* cfg_opt = brittle->add_option("--config", config_path, "Custom experiment JSON");
    exp_opt->excludes(cfg_opt);
    brittle->add_option("--levels", levels, "Aggregation levels (default 1,10,100)")->delimiter(',');
    brittle->add_option("--lags", lags, "Lags (default 1..10)")->delimiter(',');

    auto* sample_cmd = app.add_subcommand("sample", "Gaussian sample paths by circulant embedding");
    std::size_t length = 1024;
    std::size_t paths = 1;
    std::string seed_text = "0";
    common(sample_cmd, true, "csv");
    sample_cmd->add_option("--length", length, "Path length N >= 2")->capture_default_str();
    sample_cmd->add_option("--paths", paths, "Number of paths")->check(CLI::PositiveNumber)->capture_default_str();
    sample_cmd->add_option("--seed", seed_text, "Seed (UINT64, decimal or 0x-hex)")->capture_default_str();
    sample_cmd->add_flag("--unit-variance", unit_variance, "Rescale the process to unit variance first");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    if (format.empty()) format = closeness->parsed() ? "json" : "csv";

    try {
        lrd_tolerance tol = lrd_tolerance_default();
        tol.abs_tol = abs_tol;

        if (spectrum->parsed()) {
            if (!(x_min > 0.0 && x_max <= 0.5 && x_min <= x_max)) {
                throw Failure{kExitConfig, "grid must satisfy 0 < xmin <= xmax <= 0.5"};
            }
            auto p = load_process(spec_path, false, tol);
            std::vector<double> x(points);
            for (std::size_t i = 0; i < points; ++i) {
                const double t = points == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(points - 1);
                x[i] = grid == "log" ? std::exp(std::log(x_min) + t * (std::log(x_max) - std::log(x_min)))
                                     : x_min + t * (x_max - x_min);
            }
            std::vector<double> f(points);
            check(lrd_spectrum(p.get(), x.data(), x.size(), &tol, f.data()));
            emit(out_path, render_table(format, "x", x, "value", f));
        } else if (acvf_cmd->parsed() || vtf_cmd->parsed() || ctf_cmd->parsed()) {
            auto p = load_process(spec_path, unit_variance, tol);
            lrd_acvf* raw = nullptr;
            check(lrd_acvf_create(p.get(), 0, &tol, &raw));
            AcvfPtr a(raw);
            std::vector<double> values(n_max + 1);
            if (acvf_cmd->parsed()) {
                if (m == 1) {
                    check(lrd_acvf_values(a.get(), n_max, values.data()));
                } else {
                    // gamma^(m)(n) as the second difference of omega^(m).
                    std::vector<double> w(n_max + 2);
                    check(lrd_vtf(a.get(), m, n_max + 1, w.data()));
                    for (std::size_t n = 0; n <= n_max; ++n) {
                        const double prev = n == 0 ? w[1] : w[n - 1];
                        values[n] = 0.5 * (w[n + 1] + prev - 2.0 * w[n]);
                    }
                }
            } else if (vtf_cmd->parsed()) {
                check(lrd_vtf(a.get(), m, n_max, values.data()));
            } else {
                check(lrd_ctf(a.get(), m, n_max, values.data()));
            }
            const std::string extra = "\"m\":" + std::to_string(m) + ",\"route\":\"" + lrd_acvf_route(a.get()) + "\",";
            emit(out_path, render_table(format, "n", index_keys(0, n_max), "value", values, extra));
        } else if (closeness->parsed()) {
            auto p = load_process(spec_path, false, tol);
            lrd_closeness_options o{lags.empty() ? nullptr : lags.data(), lags.size(),
                                    levels.empty() ? nullptr : levels.data(), levels.size(), ctf_lag};
            char* text = nullptr;
            if (format == "json") {
                check(lrd_closeness(p.get(), &o, &tol, &text, nullptr));
            } else {
                check(lrd_closeness(p.get(), &o, &tol, nullptr, &text));
            }
            StringPtr s(text);
            emit(out_path, std::string(s.get()) + (format == "json" ? "\n" : ""));
        } else if (brittle->parsed()) {
            if (experiment == 0 && config_path.empty()) {
                throw Failure{kExitConfig, "brittle needs --experiment or --config"};
            }
            const std::string config = config_path.empty() ? std::string() : read_file(config_path);
            char* text = nullptr;
            check(lrd_brittleness(experiment, config_path.empty() ? nullptr : config.c_str(),
                                  levels.empty() ? nullptr : levels.data(), levels.size(),
                                  lags.empty() ? nullptr : lags.data(), lags.size(), &tol,
                                  format == "json" ? &text : nullptr, format == "json" ? nullptr : &text));
            StringPtr s(text);
            emit(out_path, std::string(s.get()) + (format == "json" ? "\n" : ""));
        } else if (sample_cmd->parsed()) {
            const std::uint64_t seed = parse_seed(seed_text);
            if (length < 2) throw Failure{kExitConfig, "sample needs --length >= 2"};
            auto p = load_process(spec_path, unit_variance, tol);
            std::vector<double> values(length * paths);
            check(lrd_sample(p.get(), length, paths, seed, &tol, values.data()));
            std::ostringstream os;
            if (format == "json") {
                os << "{\"seed\":" << seed << ",\"paths\":[";
                for (std::size_t i = 0; i < paths; ++i) {
                    os << (i ? "," : "") << '[';
                    for (std::size_t t = 0; t < length; ++t) os << (t ? "," : "") << json_number(values[i * length + t]);
                    os << ']';
                }
                os << "]}\n";
            } else {
                os << "path,t,value\n";
                for (std::size_t i = 0; i < paths; ++i) {
                    for (std::size_t t = 0; t < length; ++t) {
                        os << i << ',' << t << ',' << format_number(values[i * length + t]) << '\n';
                    }
                }
            }
            emit(out_path, os.str());
        }
    } catch (const Failure& f) {
        std::cerr << "lrdlab: " << f.message << '\n';
        return f.code;
    }
    return 0;
}
