#include <doctest.h>

#include <numbers>

#include "spintangle/config.hpp"
#include "spintangle/errors.hpp"

using namespace spintangle;
using std::numbers::pi;

namespace {

std::string error_key(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.key();
    }
    return "<no error>";
}

}  // namespace

TEST_CASE("minimal evolve config gets the default kick parameters") {
    const ScenarioConfig cfg = parse_config("scenario: evolve\nj: 4\npoint: P1\nkicks: 100\n");
    CHECK(cfg.scenario == Scenario::evolve);
    CHECK(cfg.params.j.value() == 4.0);
    CHECK(cfg.params.kappa == 3.0);
    CHECK(cfg.params.p == doctest::Approx(pi / 2));
    REQUIRE(cfg.initial);
    CHECK(cfg.initial->theta == 2.1);
    CHECK(cfg.initial->phi == 0.9);
    CHECK(cfg.kicks == 100);
    CHECK(cfg.partitions == std::vector<int>{1, 2});
    CHECK(cfg.output == "evolve.csv");
}

TEST_CASE("document syntax") {
    const auto doc = parse_document("# comment\n  j = 3/2  \n\nkappa: 2.5 # trailing\n");
    CHECK(doc.at("j") == "3/2");
    CHECK(doc.at("kappa") == "2.5");
    CHECK_THROWS_AS(parse_document("j 4\n"), ConfigError);
    CHECK(error_key("scenario: evolve\nj: 4\nj: 5\n") == "j");
    CHECK(error_key("scenario: evolve\ncolour: blue\n") == "colour");
}

TEST_CASE("validation errors name the key") {
    CHECK(error_key("scenario: evolve\nj: 4\npoint: P9\nkicks: 10\n") == "point");
    CHECK(error_key("scenario: evolve\nj: 4\npoint: P1\nkicks: 0\n") == "kicks");
    CHECK(error_key("scenario: evolve\npoint: P1\nkicks: 10\n") == "j");
    CHECK(error_key("scenario: evolve\nj: 4\nkicks: 10\n") == "point");
    CHECK(error_key("scenario: evolve\nj: 4\npoint: P1\n") == "kicks");
    CHECK(error_key("scenario: evolve\nj: 1.25\npoint: P1\nkicks: 3\n") == "j");
    CHECK(error_key("scenario: evolve\nj: 4\npoint: P1\nkicks: 3\npartitions: 1,8\n") == "partitions");
    CHECK(error_key("scenario: evolve\nj: 4\ntheta: 4\nphi: 0\nkicks: 3\n") == "theta");
    CHECK(error_key("scenario: evolve\nj: 4\npoint: P1\ntheta: 1\nkicks: 3\n") == "point");
    CHECK(error_key("scenario: dance\nj: 4\n") == "scenario");
    CHECK(error_key("scenario: evolve\nj: 4\npoint: P1\nkicks: 3\nscan_min: 1\n") == "scan_min");
    CHECK(error_key("scenario: scan-kappa\nj: 4\npoint: FP1\npartitions: 1,2\n") == "partitions");
    CHECK(error_key("scenario: scan-kappa\nj: 4\npoint: FP1\nscan_min: 3\nscan_max: 2\n") == "scan_max");
    CHECK(error_key("scenario: scan-kappa\nj: 4\npoint: FP1\nscan_step: 0\n") == "scan_step");
    CHECK(error_key("scenario: scan-kappa\nj: 4\npoint: FP1\nscan: phi\n") == "scan");
    CHECK(error_key("scenario: scan-kappa\nj: 500\npoint: FP1\n") == "j");
    CHECK(error_key("scenario: overlap-criterion\nj: 40\npoint: P1\n") == "period");
    CHECK(error_key("scenario: phase-portrait\nkicks: 10\nlyapunov_kicks: 50\n") == "lyapunov_kicks");
    CHECK(error_key("scenario: evolve\nj: 4\npoint: P1\nkicks: 3\nworkers: 0\n") == "workers");
}

TEST_CASE("angles accept pi expressions and decimals") {
    CHECK(parse_angle("pi/2") == doctest::Approx(pi / 2));
    CHECK(parse_angle("-pi") == doctest::Approx(-pi));
    CHECK(parse_angle("3pi/4") == doctest::Approx(3 * pi / 4));
    CHECK(parse_angle("0.5*pi") == doctest::Approx(pi / 2));
    CHECK(parse_angle("1.5707963") == 1.5707963);
    CHECK_THROWS_AS(parse_angle("half"), InvalidParameter);
    CHECK(parse_config("scenario: evolve\nj: 4\npoint: P2\nkicks: 2\np: pi/4\n").params.p == doctest::Approx(pi / 4));
}

TEST_CASE("named points") {
    CHECK(named_point("P2")->theta == 1.5);
    CHECK(named_point("P3")->phi == 0.75);
    CHECK((SpherePoint::from_angles(*named_point("FP1")).vec() - Vec3(0, 1, 0)).norm() < 1e-15);
    CHECK((SpherePoint::from_angles(*named_point("P4")).vec() - Vec3(1, 0, 0)).norm() < 1e-15);
    CHECK_FALSE(named_point("P5"));
}

TEST_CASE("scenario defaults") {
    const auto kappa = parse_config("scenario: scan-kappa\nj: 50\npoint: FP1\n");
    CHECK(kappa.scan_axis == ScanAxis::kappa);
    CHECK(kappa.kicks == 5000);
    CHECK(kappa.partitions == std::vector<int>{2});
    CHECK(kappa.scan.values().size() == 71);
    CHECK(kappa.scan.values().back() == doctest::Approx(4.0));

    const auto phi = parse_config("scenario: scan-phi\nj: 50\n");
    CHECK(phi.initial->theta == 2.25);
    CHECK(phi.scan.step == 0.01);

    const auto big = parse_config("scenario: scan-phi\nj: 500\nallow_large_j: true\n");
    CHECK(big.allow_large_j);

    const auto overlap = parse_config("scenario: overlap-criterion\nj: 40\n");
    CHECK(overlap.point == "P4");
    CHECK(overlap.period == 4);
    CHECK(overlap.overlap_threshold == 1e-10);

    const auto portrait = parse_config("scenario: phase-portrait\nkicks: 200\n");
    CHECK_FALSE(portrait.initial);
    CHECK(portrait.grid_theta == 32);

    CHECK(parse_config("scenario: evolve\nj: 3/2\npoint: P1\nkicks: 1\npartitions: 2\n").params.j.twice() == 3);
}

TEST_CASE("config echo") {
    const auto json = to_json(parse_config("scenario: scan-phi\nj: 8\nscan_min: 0\nscan_max: pi\n"));
    CHECK(json["scenario"] == "scan-phi");
    CHECK(json["scan"] == "phi");
    CHECK(json["scan_max"].get<double>() == doctest::Approx(pi));
    CHECK(json["tau"] == 1.0);
}
