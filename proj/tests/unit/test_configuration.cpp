#include <doctest.h>

#include "ellperc/configuration.hpp"
#include "ellperc/errors.hpp"
#include "ellperc/sampling.hpp"

using namespace ellperc;

TEST_SUITE("sampling") {

TEST_CASE("configuration JSON round-trips exactly") {
    for (const auto& law : {AxisLaw::pareto(2), AxisLaw::pareto(1.37), AxisLaw::point_mass(2.5),
                            AxisLaw::piecewise({{1.0, 1.5}, {10.0, 3.0}})}) {
        for (auto kind : {GrainKind::ellipse, GrainKind::disk}) {
            if (kind == GrainKind::disk && law.tail_exponent() <= 2.0) continue;
            const auto c = sample_hitting_process(make_box(12.0, 0.7, {1.5, -2.0}), 0.2, law, kind, 5);
            const auto back = parse_configuration(serialize(c));
            CHECK(back == c);
            CHECK(serialize(back) == serialize(c));
        }
    }
    auto [t, rep] = sample_truncated_process(make_box(4, 1), 0.5, AxisLaw::pareto(0.9), GrainKind::ellipse, 40.0, 3);
    CHECK(parse_configuration(serialize(t)) == t);
    CHECK(parse_configuration(serialize(t)).truncation.mode == TruncationMode::truncated);
}

TEST_CASE("configuration JSON schema") {
    const Configuration c = make_scene(make_box(2.0, 3.0), {make_ellipse({0.5, 0.25}, 2.0, 0.5)});
    const auto j = to_json(c);
    CHECK(j.at("window").at("l") == 2.0);
    CHECK(j.at("window").at("k") == 3.0);
    CHECK(j.at("window").contains("cx"));
    CHECK(j.at("law").at("kind") == "pareto");
    CHECK(j.at("law").at("alpha") == 2.0);
    CHECK(j.at("grain_kind") == "ellipse");
    CHECK(j.at("truncation").at("mode") == "exact");
    CHECK(j.at("grains").size() == 1);
    CHECK(j.at("grains")[0].at("R") == 2.0);
    for (const char* key : {"u", "seed", "truncation"}) CHECK(j.contains(key));
}

TEST_CASE("malformed configurations are rejected") {
    CHECK_THROWS_AS(parse_configuration("{"), DomainError);
    CHECK_THROWS_AS(parse_configuration("{}"), DomainError);
    CHECK_THROWS_AS(parse_configuration(R"({"window":{"l":1,"k":1},"u":-1,"law":{"kind":"pareto","alpha":2},"grains":[]})"),
                    DomainError);
    CHECK_THROWS_AS(parse_configuration(R"({"window":{"l":1,"k":1},"u":1,"law":{"kind":"pareto","alpha":2},"grains":[{"x":0,"y":0,"R":0.5}]})"),
                    DomainError);
    CHECK_THROWS_AS(parse_configuration(R"({"window":{"l":1,"k":1},"u":1,"law":{"kind":"zipf"},"grains":[]})"),
                    DomainError);
}

}  // TEST_SUITE
