#include "lrdlab/spec_json.hpp"

#include <initializer_list>
#include <set>

namespace lrdlab {

namespace {

using nlohmann::json;

void require_object(const json& j, const char* where) {
    if (!j.is_object()) throw ConfigError(std::string(where) + ": expected a JSON object");
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items()) {
        if (ok.count(key) == 0) throw ConfigError(where + ": unknown field '" + key + "'");
    }
}

double number_field(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw ConfigError(where + ": missing field '" + key + "'");
    const auto& v = j.at(key);
    if (!v.is_number()) throw ConfigError(where + ": field '" + key + "' must be a number");
    return v.get<double>();
}

double number_field_or(const json& j, const char* key, double fallback, const std::string& where) {
    return j.contains(key) ? number_field(j, key, where) : fallback;
}

std::vector<double> vector_field_or_empty(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) return {};
    const auto& v = j.at(key);
    if (!v.is_array()) throw ConfigError(where + ": field '" + key + "' must be an array");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) throw ConfigError(where + ": field '" + key + "' must hold numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

std::string type_of(const json& j, const std::string& where) {
    if (!j.contains("type") || !j.at("type").is_string()) {
        throw ConfigError(where + ": missing string field 'type'");
    }
    return j.at("type").get<std::string>();
}

bool is_driver_type(const std::string& t) { return t == "white" || t == "arma" || t == "fexp"; }

}  // namespace

ShortMemorySpec driver_from_json(const json& j) {
    require_object(j, "driver");
    const auto t = type_of(j, "driver");
    if (t == "white") {
        reject_unknown(j, {"type", "variance"}, "white driver");
        return ShortMemorySpec::white_noise(number_field_or(j, "variance", 1.0, "white driver"));
    }
    if (t == "arma") {
        reject_unknown(j, {"type", "ar", "ma", "sigma2"}, "arma driver");
        return ShortMemorySpec::arma(vector_field_or_empty(j, "ar", "arma driver"),
                                     vector_field_or_empty(j, "ma", "arma driver"),
                                     number_field_or(j, "sigma2", 1.0, "arma driver"));
    }
    if (t == "fexp") {
        reject_unknown(j, {"type", "theta"}, "fexp driver");
        return ShortMemorySpec::fexp(vector_field_or_empty(j, "theta", "fexp driver"));
    }
    throw ConfigError("unknown driver type '" + t + "'");
}

ProcessSpec process_spec_from_json(const json& j) {
    require_object(j, "process spec");
    const auto t = type_of(j, "process spec");
    if (t == "fgn") {
        reject_unknown(j, {"type", "H", "V"}, "fgn spec");
        return ProcessSpec::fgn(number_field(j, "H", "fgn spec"), number_field_or(j, "V", 1.0, "fgn spec"));
    }
    if (t == "fracdiff") {
        reject_unknown(j, {"type", "H", "driver"}, "fracdiff spec");
        if (!j.contains("driver")) throw ConfigError("fracdiff spec: missing field 'driver'");
        return ProcessSpec::fracdiff(number_field(j, "H", "fracdiff spec"), driver_from_json(j.at("driver")));
    }
    if (t == "sum") {
        reject_unknown(j, {"type", "components"}, "sum spec");
        if (!j.contains("components") || !j.at("components").is_array()) {
            throw ConfigError("sum spec: 'components' must be an array");
        }
        std::vector<WeightedComponent> comps;
        for (const auto& c : j.at("components")) {
            require_object(c, "sum component");
            reject_unknown(c, {"spec", "weight"}, "sum component");
            if (!c.contains("spec")) throw ConfigError("sum component: missing field 'spec'");
            comps.push_back({process_spec_from_json(c.at("spec")), number_field_or(c, "weight", 1.0, "sum component")});
        }
        return ProcessSpec::sum(std::move(comps));
    }
    if (is_driver_type(t)) {
        return ProcessSpec::fracdiff(0.5, driver_from_json(j));
    }
    throw ConfigError("unknown process type '" + t + "'");
}

ProcessSpec parse_process_spec(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed process spec JSON: ") + e.what());
    }
    return process_spec_from_json(j);
}

json to_json(const ShortMemorySpec& driver) {
    const auto& v = driver.variant();
    if (const auto* w = std::get_if<WhiteNoise>(&v)) return {{"type", "white"}, {"variance", w->variance}};
    if (const auto* a = std::get_if<Arma>(&v)) {
        return {{"type", "arma"}, {"ar", a->ar}, {"ma", a->ma}, {"sigma2", a->innovation_variance}};
    }
    return {{"type", "fexp"}, {"theta", std::get<Fexp>(v).theta}};
}

json to_json(const ProcessSpec& spec) {
    if (const auto* f = spec.get_if<Fgn>()) return {{"type", "fgn"}, {"H", f->H.value()}, {"V", f->V}};
    if (const auto* f = spec.get_if<FracDiff>()) {
        return {{"type", "fracdiff"}, {"H", f->H.value()}, {"driver", to_json(f->driver)}};
    }
    json comps = json::array();
    for (const auto& c : spec.get_if<Sum>()->components) {
        comps.push_back({{"spec", to_json(c.spec)}, {"weight", c.weight}});
    }
    return {{"type", "sum"}, {"components", comps}};
}

}  // namespace lrdlab
