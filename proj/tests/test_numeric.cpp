#include <doctest.h>

#include "qg/numeric.hpp"

using namespace qg;

TEST_CASE("numeric backend agrees with the exact one") {
  for (auto [s, M] : std::vector<std::pair<char, int>>{{'B', 3}, {'C', 4}}) {
    auto d = build_rmatrix_data(make_params(build_series(s, M)));
    auto cd = build_calculus(d, false);
    NumericOptions o;
    o.trials = 20;
    auto rep = numeric_crosscheck(d, &cd, o);
    CHECK(rep.checks.size() == 6u);
    for (auto& c : rep.checks) {
      INFO(c.name << " " << c.witness);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("numeric cross-check sees a wrong exact R") {
  auto d = build_rmatrix_data(make_params(build_series('D', 4)));
  // exact side from the uniparametric point, numeric side from the generic one
  auto u = build_rmatrix_data(uniparametric_params(d.params.spec));
  RMatrixData mixed = d;
  mixed.R = u.R;
  NumericOptions o;
  o.trials = 5;
  auto rep = numeric_crosscheck(mixed, nullptr, o);
  REQUIRE(rep.find("R entries, numeric vs exact"));
  CHECK_FALSE(rep.find("R entries, numeric vs exact")->pass);
  CHECK(rep.find("Yang-Baxter residual, numeric")->pass);
}

TEST_CASE("random points are reproducible and on the unit circle") {
  std::mt19937_64 a(5), b(5);
  auto p = random_unit_point(a), q = random_unit_point(b);
  CHECK(p == q);
  for (auto& z : p) CHECK(std::abs(std::abs(z) - 1) < 1e-14);
}
