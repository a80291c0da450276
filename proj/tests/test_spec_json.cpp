#include <doctest.h>

#include "lrdlab/errors.hpp"
#include "lrdlab/spec_json.hpp"

using namespace lrdlab;

TEST_CASE("parse each spec type") {
    const auto fgn = parse_process_spec(R"({"type":"fgn","H":0.8,"V":1.0})");
    CHECK(fgn == ProcessSpec::fgn(0.8, 1.0));

    const auto fd = parse_process_spec(
        R"({"type":"fracdiff","H":0.8,"driver":{"type":"arma","ar":[0.3],"ma":[0.7],"sigma2":1.0}})");
    CHECK(fd == ProcessSpec::fracdiff(0.8, ShortMemorySpec::arma({0.3}, {0.7}, 1.0)));

    const auto fexp = parse_process_spec(R"({"type":"fexp","theta":[0.1,-0.2]})");
    CHECK(fexp == ProcessSpec::fracdiff(0.5, ShortMemorySpec::fexp({0.1, -0.2})));

    const auto sum = parse_process_spec(R"({"type":"sum","components":[
        {"spec":{"type":"fracdiff","H":0.8,"driver":{"type":"white"}},"weight":1.0},
        {"spec":{"type":"white","variance":1.0},"weight":0.1}]})");
    const auto* s = sum.get_if<Sum>();
    REQUIRE(s != nullptr);
    CHECK(s->components.size() == 2);
    CHECK(s->components[1].weight == 0.1);
    CHECK(sum.dominant_hurst() == 0.8);
}

TEST_CASE("round trip through to_json") {
    const char* texts[] = {
        R"({"type":"fgn","H":0.7,"V":2.0})",
        R"({"type":"fracdiff","H":0.9,"driver":{"type":"fexp","theta":[0.5]}})",
        R"({"type":"sum","components":[{"spec":{"type":"fgn","H":0.8,"V":1.0},"weight":0.5},
            {"spec":{"type":"fracdiff","H":0.6,"driver":{"type":"arma","ar":[],"ma":[0.2],"sigma2":3.0}},"weight":1.0}]})",
    };
    for (const char* t : texts) {
        const auto spec = parse_process_spec(t);
        CHECK(process_spec_from_json(to_json(spec)) == spec);
    }
}

TEST_CASE("rejections") {
    CHECK_THROWS_AS((void)parse_process_spec("{not json"), ConfigError);
    CHECK_THROWS_AS((void)parse_process_spec(R"({"type":"fgn","H":0.8,"V":1.0,"extra":1})"), ConfigError);
    CHECK_THROWS_AS((void)parse_process_spec(R"({"type":"fgn"})"), ConfigError);
    CHECK_THROWS_AS((void)parse_process_spec(R"({"type":"garch"})"), ConfigError);
    CHECK_THROWS_AS((void)parse_process_spec(R"({"type":"fgn","H":"high"})"), ConfigError);
    CHECK_THROWS_AS((void)parse_process_spec(R"({"type":"fracdiff","H":0.8,"driver":{"type":"arma","ar":[1.2]}})"),
                    ConfigError);
    CHECK_THROWS_AS((void)parse_process_spec(R"({"type":"sum","components":[]})"), ConfigError);
    CHECK_THROWS_AS((void)parse_process_spec(R"([1,2])"), ConfigError);
    CHECK_THROWS_AS((void)parse_process_spec(R"({"type":"fgn","H":1.5})"), DomainError);
}
