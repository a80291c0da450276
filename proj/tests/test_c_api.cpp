#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "lrdlab/lrdlab.h"

namespace {

lrd_process* parse(const char* json) {
    lrd_process* p = nullptr;
    REQUIRE(lrd_process_from_json(json, &p) == LRD_OK);
    return p;
}

}  // namespace

TEST_CASE("status codes and messages") {
    lrd_process* p = nullptr;
    CHECK(lrd_process_from_json("{oops", &p) == LRD_ERR_CONFIG);
    CHECK(p == nullptr);
    CHECK(std::string(lrd_last_error()).find("malformed") != std::string::npos);
    CHECK(lrd_process_from_json(R"({"type":"fgn","H":1.5})", &p) == LRD_ERR_DOMAIN);
    CHECK(lrd_process_from_json(nullptr, &p) == LRD_ERR_ARGUMENT);
    CHECK(std::string(lrd_status_name(LRD_ERR_COVERAGE)) == "coverage error");

    p = parse(R"({"type":"fgn","H":0.8})");
    CHECK(std::string(lrd_last_error()).empty());
    lrd_process_free(p);
}

TEST_CASE("spec round trip and fixed point") {
    lrd_process* p = parse(R"({"type":"fracdiff","H":0.8,"driver":{"type":"white"}})");
    char* text = nullptr;
    REQUIRE(lrd_process_to_json(p, &text) == LRD_OK);
    lrd_process* q = parse(text);
    lrd_string_free(text);

    lrd_process* u = nullptr;
    REQUIRE(lrd_process_unit_variance(q, nullptr, &u) == LRD_OK);
    double H = 0.0;
    double V = 0.0;
    REQUIRE(lrd_fixed_point(u, &H, &V) == LRD_OK);
    lrd_process_free(u);
    CHECK(H == 0.8);
    CHECK(V == doctest::Approx(0.90396776880151064).epsilon(1e-13));

    lrd_process* w = parse(R"({"type":"white"})");
    CHECK(lrd_fixed_point(w, &H, &V) == LRD_ERR_DOMAIN);
    lrd_process_free(w);
    lrd_process_free(q);
    lrd_process_free(p);
}

TEST_CASE("acvf, vtf and ctf tables") {
    lrd_process* p = parse(R"({"type":"fracdiff","H":0.8,"driver":{"type":"white"}})");
    lrd_process* u = nullptr;
    REQUIRE(lrd_process_unit_variance(p, nullptr, &u) == LRD_OK);
    lrd_acvf* a = nullptr;
    REQUIRE(lrd_acvf_create(u, 10, nullptr, &a) == LRD_OK);
    CHECK(std::string(lrd_acvf_route(a)) == "closed_form");
    std::vector<double> g(11);
    REQUIRE(lrd_acvf_values(a, 10, g.data()) == LRD_OK);
    CHECK(g[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g[1] == doctest::Approx(3.0 / 7.0).epsilon(1e-14));
    lrd_acvf_free(a);

    lrd_process* f = parse(R"({"type":"fgn","H":0.8})");
    REQUIRE(lrd_acvf_create(f, 0, nullptr, &a) == LRD_OK);
    std::vector<double> r(3);
    REQUIRE(lrd_ctf(a, 7, 2, r.data()) == LRD_OK);
    CHECK(r[2] == doctest::Approx(3.0314331330207963513).epsilon(1e-14));
    CHECK(lrd_ctf(a, 0, 2, r.data()) == LRD_ERR_ARGUMENT);
    lrd_acvf_free(a);

    lrd_process* w = parse(R"({"type":"white"})");
    REQUIRE(lrd_acvf_create(w, 0, nullptr, &a) == LRD_OK);
    std::vector<double> v(6);
    REQUIRE(lrd_vtf(a, 1, 5, v.data()) == LRD_OK);
    for (int n = 0; n <= 5; ++n) CHECK(v[std::size_t(n)] == doctest::Approx(double(n)));
    lrd_acvf_free(a);

    lrd_process_free(w);
    lrd_process_free(f);
    lrd_process_free(u);
    lrd_process_free(p);
}

TEST_CASE("closeness, brittleness and sampling") {
    lrd_process* p = parse(R"({"type":"fgn","H":0.8})");
    const size_t probes[] = {10, 100};
    lrd_closeness_options opts{probes, 2, nullptr, 0, 0};
    char* json = nullptr;
    char* csv = nullptr;
    REQUIRE(lrd_closeness(p, &opts, nullptr, &json, &csv) == LRD_OK);
    CHECK(std::string(json).find("\"slope_saturated\":true") != std::string::npos);
    CHECK(std::string(csv).rfind("series_label,m,n,value", 0) == 0);
    lrd_string_free(json);
    lrd_string_free(csv);

    const size_t levels[] = {1, 10};
    const size_t lags[] = {1, 2};
    REQUIRE(lrd_brittleness(2, nullptr, levels, 2, lags, 2, nullptr, &json, nullptr) == LRD_OK);
    CHECK(std::string(json).find("\"cells\"") != std::string::npos);
    lrd_string_free(json);
    CHECK(lrd_brittleness(9, nullptr, nullptr, 0, nullptr, 0, nullptr, &json, nullptr) == LRD_ERR_CONFIG);
    CHECK(lrd_brittleness(0, "{bad", nullptr, 0, nullptr, 0, nullptr, &json, nullptr) == LRD_ERR_CONFIG);

    std::vector<double> x(2 * 64);
    std::vector<double> y(2 * 64);
    REQUIRE(lrd_sample(p, 64, 2, 5, nullptr, x.data()) == LRD_OK);
    REQUIRE(lrd_sample(p, 64, 2, 5, nullptr, y.data()) == LRD_OK);
    CHECK(x == y);
    CHECK(lrd_sample(p, 1, 1, 5, nullptr, x.data()) == LRD_ERR_DOMAIN);

    lrd_tolerance bad = lrd_tolerance_default();
    bad.abs_tol = -1.0;
    lrd_acvf* a = nullptr;
    CHECK(lrd_acvf_create(p, 3, &bad, &a) != LRD_OK);
    CHECK(lrd_thread_budget() >= 1);
    lrd_process_free(p);
}
