#include "vlmult/vlmult.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>

using namespace vlm;
using Catch::Approx;

namespace {

Json parse(const char* text) { return Json::parse(text); }

}  // namespace

TEST_CASE("defaults load and match the schema") {
  const auto rc = load_config(Json::object());
  CHECK(rc.experiments.size() == 9);
  CHECK(rc.grid.samples() == 128);
  CHECK(rc.grid.half_width() == 8.0);
  const auto& e1 = rc.experiment("e1");
  CHECK(e1.exponents.size() == 3);
  CHECK(e1.lambda.values().front() == Approx(2.0));
  CHECK(e1.lambda.values().back() == Approx(64.0));
  CHECK(rc.experiment("e8").tol("spread_identity") == 3.0);
  CHECK(rc.experiment("e9").cases.size() == 4);
}

TEST_CASE("overrides and merging") {
  Overrides ov;
  ov.seed = 5;
  ov.grid_samples = 64;
  const auto rc = load_config(parse(R"({"seed": 1, "experiments": {"e5": {"samples": 7},
      "e4": {"tolerances": {"spread": 20}}, "e1": {"exponents": {"c3": {"type": "constant", "value": 3}}}}})"),
                              ov);
  CHECK(rc.seed == 5);
  CHECK(rc.experiment("e5").grid.samples() == 64);
  CHECK(rc.experiment("e5").samples == 7);
  CHECK(rc.experiment("e4").tol("spread") == 20.0);
  CHECK(rc.experiment("e4").tol("full_box") == 1e-6);
  REQUIRE(rc.experiment("e1").exponents.size() == 1);
  CHECK(rc.experiment("e1").exponents[0].first == "c3");

  const auto e8 = load_config(parse(R"({"experiments": {"e8": {"symbols":
      {"tensor": {"type": "tensor", "factors": [{"type": "gaussian", "scale": 1}, {"type": "hilbert"}]}}}}})"));
  CHECK(e8.experiment("e8").tol("spread_tensor") == 10.0);
}

TEST_CASE("unknown or malformed keys are config errors") {
  const char* bad[] = {
      R"({"sead": 1})",
      R"({"grid": {"n": 1, "L": 8}})",
      R"({"experiments": {"e10": {}}})",
      R"({"experiments": {"e5": {"tolerance": {}}}})",
      R"({"experiments": {"e5": {"tolerances": {"identiti": 1e-10}}}})",
      R"({"experiments": {"e5": {"params": {}}}})",
      R"({"experiments": {"e4": {"exponents": {"p4": {"type": "constant", "value": 2}}}}})",
      R"({"experiments": {"e1": {"exponents": {"x": {"type": "cubic"}}}}})",
      R"({"experiments": {"e1": {"exponents": {"x": {"type": "constant", "value": 2, "extra": 1}}}}})",
      R"({"experiments": {"e2": {"symbols": {"x": {"type": "gaussian", "scale": -1}}}}})",
      R"({"experiments": {"e4": {"symbols": {"m": {"type": "gaussian", "scale": 1}}}}})",
      R"({"experiments": {"e9": {"cases": {"c": {"weights": [{"beta": 1}]}}}}})",
      R"({"experiments": {"e4": {"params": {"rectangles": 2.5}}}})",
      R"({"experiments": {"e5": {"samples": 0}}})",
      R"({"experiments": {"e1": {"lambda": {"min": 4, "max": 2}}}})",
      R"({"seed": -3})",
  };
  for (const char* text : bad) {
    INFO(text);
    CHECK_THROWS_AS(load_config(parse(text)), ConfigError);
  }
  CHECK_THROWS_AS(load_config_file("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("one-dimensional experiments refuse a planar grid when run") {
  const auto rc = load_config(parse(R"({"grid": {"n": 2, "l": 8, "N": 32}})"));
  CHECK_THROWS_AS(run_experiment(rc.experiment("e5")), ConfigError);
  CHECK(rc.experiment("e1").grid.dim() == 2);
}

TEST_CASE("log-log fit") {
  std::vector<double> x, y;
  for (int i = 0; i < 9; ++i) {
    x.push_back(std::exp2(i));
    y.push_back(3.0 * std::pow(x.back(), -0.75) * (i < 4 ? 5.0 : 1.0));
  }
  const auto fit = fit_loglog_upper_half("t", x, y);
  CHECK(fit.slope == Approx(-0.75).margin(1e-12));
  CHECK(fit.residual < 1e-12);
  CHECK_THROWS(fit_loglog_upper_half("t", {1.0, 2.0}, {1.0, 2.0}));
}

TEST_CASE("estimate_bilinear_norm") {
  GridSpec g(1, 8.0, 64);
  const auto one = Symbol::constant(1.0, 2);
  const auto p4 = ExponentField::constant(4.0), p2 = ExponentField::constant(2.0);
  CHECK_THROWS_AS(estimate_bilinear_norm(one, p4, p4, p2, {}), std::invalid_argument);

  std::mt19937_64 rng(3);
  std::vector<FunctionPair> corpus;
  double prev = 0.0;
  for (int t = 0; t < 6; ++t) {
    corpus.emplace_back(random_function(g, rng), random_function(g, rng));
    const double est = estimate_bilinear_norm(Symbol::coifman_meyer(0.5, 2), p4, p4, p2, corpus);
    CHECK(est >= prev);
    prev = est;
  }
  // Holder equality for f = g with p1 = p2 = 2 p3
  corpus.emplace_back(gaussian_G(1.5, g), gaussian_G(1.5, g));
  const double est = estimate_bilinear_norm(one, p4, p4, p2, corpus);
  CHECK(est >= 1.0 - 1e-6);
  CHECK(est <= 1.0 + 1e-8);
}

TEST_CASE("number and csv formatting") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(format_number(-INFINITY) == "-inf");
  CHECK(csv_field("gaussian,y=0") == "\"gaussian,y=0\"");

  ExperimentReport rep;
  rep.experiment = "e0";
  rep.info("a", "x", 2.5);
  rep.at_most("a", "err", 1e-3, 1e-2);
  rep.at_least("b", "ratio", 0.5, 1.0);
  CHECK_FALSE(rep.passed());
  CHECK(rep.failures().size() == 1);
  std::ostringstream csv;
  write_csv(csv, {rep}, true);
  CHECK(csv.str() ==
        "experiment,param_id,quantity,value,tolerance,pass\n"
        "e0,a,x,2.5,,\n"
        "e0,a,err,0.001,0.01,true\n"
        "e0,b,ratio,0.5,1,false\n");
  std::ostringstream stamped;
  write_csv(stamped, {rep}, false);
  CHECK(stamped.str().rfind("# generated ", 0) == 0);

  const Json js = report_json({rep}, 9, true);
  CHECK(js["passed"] == false);
  CHECK_FALSE(js.contains("generated"));
  for (const auto& r : js["experiments"][0]["rows"]) CHECK(r["weighted_norm_interpretation"] == kWeightedNormInterpretation);
}

TEST_CASE("small experiment runs pass and are deterministic") {
  const auto rc = load_config(parse(R"({"experiments": {
      "e5": {"samples": 5}, "e6": {"samples": 5}, "e4": {"samples": 3, "params": {"rectangles": 4, "identity_pairs": 5}},
      "e7": {"samples": 1}, "e3": {"samples": 3}}})"));
  for (const char* id : {"e1", "e2", "e3", "e4", "e5", "e6", "e7"}) {
    INFO(id);
    const auto a = run_experiment(rc.experiment(id));
    const auto b = run_experiment(rc.experiment(id));
    CHECK(a.passed());
    std::ostringstream sa, sb;
    write_csv(sa, {a}, true);
    write_csv(sb, {b}, true);
    CHECK(sa.str() == sb.str());
  }
  Overrides ov;
  ov.seed = 99;
  const auto other = load_config(parse(R"({"experiments": {"e5": {"samples": 5}}})"), ov);
  const auto a = run_experiment(rc.experiment("e5")), b = run_experiment(other.experiment("e5"));
  CHECK(a.rows[0].value != b.rows[0].value);
}

TEST_CASE("experiment failures surface as failing rows") {
  const auto rc = load_config(parse(R"({"experiments": {"e6": {"samples": 3, "tolerances": {"holder_variable": 1e-3}}}})"));
  const auto rep = run_experiment(rc.experiment("e6"));
  REQUIRE(rep.failures().size() == 1);
  CHECK(rep.failures()[0].param_id == "holder_variable");
}

TEST_CASE("e9 gate and weighted cases") {
  const auto rc = load_config(parse(R"({"experiments": {"e9": {"samples": 4}}})"));
  const auto rep = run_experiment(rc.experiment("e9"));
  CHECK(rep.passed());
  CHECK(rep.details["hypotheses"]["boundary"]["member"] == false);
  CHECK(rep.details["hypotheses"]["admissible"]["member"] == true);
  const auto bad = load_config(parse(R"({"experiments": {"e9": {"samples": 2, "params": {"s": 2.5}}}})"));
  CHECK_THROWS_AS(run_experiment(bad.experiment("e9")), ConfigError);
  const auto e8 = load_config(parse(R"({"experiments": {"e8": {"samples": 2, "params": {"delta": 5}}}})"));
  CHECK_THROWS_AS(run_experiment(e8.experiment("e8")), ConfigError);
}
