#include <doctest.h>

#include "qg/rmatrix.hpp"

using namespace qg;

namespace {

Scalar s_pow(int k) { return Scalar::s_pow(k); }

void require_pass(const Report& rep) {
  for (auto& c : rep.checks) {
    INFO(rep.suite << ": " << c.name << " " << c.witness);
    CHECK(c.pass);
  }
}

}  // namespace

TEST_CASE("series data") {
  auto b3 = build_series('B', 3);
  CHECK(b3.n2 == 2);
  CHECK(b3.rho2 == std::vector<int>{0, 1, 0, -1});
  auto b5 = build_series('B', 5);
  CHECK(b5.rho2 == std::vector<int>{0, 3, 1, 0, -1, -3});
  auto c4 = build_series('C', 4);
  CHECK(c4.eps == -1);
  CHECK(c4.rho2 == std::vector<int>{0, 4, 2, -2, -4});
  CHECK(c4.eps_a == std::vector<int>{1, 1, 1, -1, -1});
  auto d4 = build_series('D', 4);
  CHECK(d4.rho2 == std::vector<int>{0, 2, 0, 0, -2});
  CHECK(d4.eps_a == std::vector<int>{1, 1, 1, 1, 1});

  CHECK_THROWS_AS(build_series('B', 4), BadDimension);
  CHECK_THROWS_AS(build_series('B', 1), BadDimension);
  CHECK_THROWS_AS(build_series('C', 5), BadDimension);
  CHECK_THROWS_AS(build_series('D', 3), BadDimension);
}

TEST_CASE("q table relations") {
  for (auto [ser, N] : {std::pair{'B', 5}, {'B', 7}, {'C', 6}, {'D', 6}, {'D', 8}}) {
    auto p = make_params(build_series(ser, N));
    Scalar r = Scalar::r(), r2 = r * r;
    for (int a = 1; a <= N; ++a)
      for (int b = 1; b <= N; ++b) {
        int ap = N + 1 - a, bp = N + 1 - b;
        CHECK(p.q(a, b) * p.q(b, a) == r2);
        CHECK(p.q(a, b) == p.q(ap, bp));
        CHECK(p.q(a, b) * p.q(a, bp) == r2);
        if (a == b || a == bp) CHECK(p.q(a, b) == r);
      }
    int h = N / 2;
    CHECK(p.independent.size() == static_cast<std::size_t>(h * (h - 1) / 2));
  }
  auto b5 = make_params(build_series('B', 5));
  CHECK(b5.q(1, 3) == Scalar::r());
  CHECK(b5.q(1, 2) == Scalar::var("q12"));
  CHECK(b5.q(2, 1) == Scalar::r() * Scalar::r() / Scalar::var("q12"));
  CHECK(b5.q(1, 4) == Scalar::r() * Scalar::r() / Scalar::var("q12"));

  ParamOptions bad;
  bad.fixed["q13"] = Scalar(2);
  CHECK_THROWS_AS(make_params(build_series('B', 5), bad), ConfigError);
}

TEST_CASE("metric on B3") {
  auto p = make_params(build_series('B', 3));
  auto m = build_metric(p);
  CHECK(m.lo[1][3] == s_pow(-1));
  CHECK(m.lo[2][2] == Scalar(1));
  CHECK(m.lo[3][1] == s_pow(1));
  CHECK(m.lo[1][1].is_zero());
  CHECK(m.d[1] == s_pow(-2));
  CHECK(m.d[2] == Scalar(1));
  CHECK(m.d[3] == s_pow(2));
}

TEST_CASE("metric on C4 and D4") {
  auto c = build_metric(make_params(build_series('C', 4)));
  // C_ab = eps_a r^{-rho_a} delta_{ab'}
  CHECK(c.lo[1][4] == s_pow(-4));
  CHECK(c.lo[4][1] == -s_pow(4));
  CHECK(c.up[1][4] == -s_pow(-4));
  for (int a = 1; a <= 4; ++a) CHECK(c.d[a] == -s_pow(-2 * build_series('C', 4).rho2[a]));
  auto d = build_metric(make_params(build_series('D', 4)));
  CHECK(d.lo[2][3] == Scalar(1));
  CHECK(d.lo[1][4] == s_pow(-2));
  CHECK(d.d[1] == s_pow(-4));
}

TEST_CASE("R entries on B3") {
  auto p = make_params(build_series('B', 3));
  auto R = build_R(p);
  Scalar r = Scalar::r(), lam = Scalar::lambda();
  CHECK(R.get({1, 1, 1, 1}) == r);
  CHECK(R.get({2, 2, 2, 2}) == Scalar(1));
  CHECK(R.get({1, 3, 1, 3}) == r.inverse());
  CHECK(R.get({1, 2, 1, 2}) == Scalar(1));
  CHECK(R.get({2, 1, 1, 2}) == lam);
  CHECK(R.get({3, 1, 1, 3}) == lam * (1 - r.inverse()));
  CHECK(R.get({3, 1, 2, 2}) == -(lam * s_pow(-1)));
  CHECK(R.get({2, 2, 1, 3}) == -(lam * s_pow(-1)));
  CHECK(R.get({1, 2, 2, 1}).is_zero());
  // 9 diagonal, 2 exchange, 1 for (3,1,1,3), 2 metric-type
  CHECK(R.nnz() == 14);
}

TEST_CASE("R is the identity at the classical point") {
  for (auto [ser, N] : {std::pair{'B', 5}, {'C', 4}, {'D', 6}}) {
    ParamOptions opt;
    opt.r_one = true;
    auto spec = build_series(ser, N);
    for (int i = 1; i <= N / 2; ++i)
      for (int j = i + 1; j <= N / 2; ++j) opt.fixed[q_name(i, j)] = Scalar(1);
    auto R = build_R(make_params(spec, opt));
    CHECK(R.nnz() == static_cast<std::size_t>(N * N));
    for (int a = 1; a <= N; ++a)
      for (int b = 1; b <= N; ++b) CHECK(R.get({a, b, a, b}) == Scalar(1));
  }
}

TEST_CASE("Q_N closed form") {
  auto p = make_params(build_series('B', 3));
  Scalar r = Scalar::r();
  CHECK(QN_closed(p) == r / (1 + r + r * r));
  auto d = build_rmatrix_data(p);
  CHECK(d.proj.QN == r / (1 + r + r * r));
}

TEST_CASE("R-matrix suite") {
  for (auto [ser, N] : {std::pair{'B', 3}, {'B', 5}, {'C', 2}, {'C', 4}, {'D', 2}, {'D', 4}}) {
    require_pass(verify_rmatrix_suite(build_rmatrix_data(make_params(build_series(ser, N)))));
  }
}

TEST_CASE("R-matrix suite at N = 6") {
  for (char ser : {'C', 'D'}) require_pass(verify_rmatrix_suite(build_rmatrix_data(make_params(build_series(ser, 6)))));
}

TEST_CASE("YBE fails for a corrupted R") {
  auto p = make_params(build_series('D', 4));
  auto R = build_R(p);
  R.set({2, 1, 1, 2}, Scalar::lambda() * 2);
  auto res = ybe_residual(R);
  CHECK(res.nnz() > 0);
  CHECK(!first_witness(res).empty());
}

TEST_CASE("twist from the uniparametric R-matrix") {
  for (auto [ser, N] : {std::pair{'B', 5}, {'C', 6}, {'D', 6}}) require_pass(twist_check(build_series(ser, N)));
}

TEST_CASE("block decomposition") {
  for (auto [ser, N] : {std::pair{'B', 5}, {'C', 6}, {'D', 6}, {'D', 4}, {'C', 4}})
    require_pass(verify_block_decomposition(make_params(build_series(ser, N))));
}

TEST_CASE("compact formula") {
  for (auto [ser, N] : {std::pair{'C', 4}, {'D', 6}}) require_pass(compare_compact_formula(make_params(build_series(ser, N))));
  auto rep = compare_compact_formula(make_params(build_series('B', 5)));
  REQUIRE(rep.checks.size() == 1);
  CHECK(!rep.checks[0].pass);
  CHECK(rep.checks[0].expected_failure);
}

TEST_CASE("tensor JSON round trip") {
  auto R = build_R(make_params(build_series('B', 5)));
  auto j = tensor_to_json(R);
  CHECK(j["rank"] == 4);
  CHECK(j["dim"] == 5);
  auto back = tensor_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.nnz() == R.nnz());
  for (auto& [idx, v] : R.sorted()) CHECK(back.get(idx) == v);
  auto& e = j["entries"];
  for (std::size_t i = 1; i < e.size(); ++i) CHECK(e[i - 1]["idx"].get<Index>() < e[i]["idx"].get<Index>());
}

TEST_CASE("numeric parameters agree with exact evaluation") {
  auto p = make_params(build_series('D', 4));
  std::vector<Complex> pt(var_count(), Complex(0));
  pt[0] = std::polar(1.0, 0.3);
  pt[var_id("q12")] = std::polar(1.0, 1.1);
  auto n = numeric_params(p, pt);
  auto Rn = build_R(n);
  auto R = build_R(p);
  for (auto& [idx, v] : R.sorted()) CHECK(std::abs(Rn.get(idx) - v.evaluate(pt)) < 1e-12);
  CHECK(ybe_residual(Rn).nnz() > 0);  // round-off leaves tiny entries
  double worst = 0;
  for (auto& [k, v] : ybe_residual(Rn).raw()) worst = std::max(worst, std::abs(v));
  CHECK(worst < 1e-12);
}
