#include <gtest/gtest.h>

#include <cmath>

#include "spheredpp/errors.hpp"
#include "spheredpp/json_io.hpp"

using namespace spheredpp;

TEST(ModelJson, ParseAndRoundTrip) {
  const auto j = json::parse(R"({"schema": 1, "family": "multiquadric",
    "params": {"tau": 1, "delta": 0.5}, "mode": "kernel", "eta": 3, "dim": 2})");
  const auto m = model_from_json(j);
  EXPECT_EQ(family_name(m.family), "multiquadric");
  EXPECT_EQ(m.scale, 3.0);
  const auto back = model_from_json(model_to_json(m));
  EXPECT_EQ(model_to_json(back), model_to_json(m));
}

TEST(ModelJson, RhoConvertsToEta) {
  const auto m = model_from_json(json::parse(
      R"({"family": "askey", "params": {"c": 1.0}, "rho": 0.1, "dim": 1})"));
  EXPECT_NEAR(m.scale, 0.1 * 2 * 3.141592653589793, 1e-15);
  EXPECT_EQ(m.dim, Dimension(1));
}

TEST(ModelJson, Errors) {
  EXPECT_THROW(model_from_json(json::parse(R"({"schema": 2, "family": "askey"})")), DomainError);
  EXPECT_THROW(model_from_json(json::parse(R"({"family": "nope", "params": {}})")), DomainError);
  EXPECT_THROW(model_from_json(json::parse(R"({"family": "askey", "params": {"c": 1}})")),
               DomainError);
  EXPECT_THROW(model_from_json(json::parse(
                   R"({"family": "multiquadric", "params": {"tau": 1, "delta": 1.5}, "eta": 1})")),
               DomainError);
  EXPECT_THROW(model_from_json(json::parse(
                   R"({"family": "askey", "params": {"c": 1}, "mode": "density"})")),
               DomainError);
}

TEST(ModelJson, ParamOverride) {
  auto m = model_from_json(json::parse(
      R"({"family": "multiquadric", "params": {"tau": 1, "delta": 0.5}, "eta": 2})"));
  set_model_param(m, "delta", 0.25);
  EXPECT_EQ(std::get<Multiquadric>(m.family).delta, 0.25);
  set_model_param(m, "eta", 1.5);
  EXPECT_EQ(m.scale, 1.5);
  EXPECT_THROW(set_model_param(m, "nu", 0.5), DomainError);
}

TEST(ReportJson, NonFiniteBecomesNull) {
  LocalRepulsiveness r;
  r.slope = std::numeric_limits<double>::infinity();
  r.slope_infinite = true;
  const auto j = to_json(r);
  EXPECT_TRUE(j.at("slope").is_null());
  EXPECT_TRUE(j.at("curvature").is_null());
}
