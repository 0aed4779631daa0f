#include <doctest.h>

#include "qg/pairing.hpp"

using namespace qg;

namespace {

PairingData pairing_for(char ser, int N) { return build_pairing(build_rmatrix_data(make_params(build_series(ser, N)))); }

void require_pass(const Report& rep) {
  for (auto& c : rep.checks) {
    INFO(rep.suite << ": " << c.name << " " << c.witness);
    CHECK(c.pass);
  }
}

}  // namespace

TEST_CASE("L+ and L- on generators") {
  auto p = pairing_for('B', 5);
  int M = p.M;
  Scalar r = Scalar::r(), q12 = Scalar::var("q12");
  // L+^1_1(T^2_2) = R^{21}_{21} = r / q21 = q12 / r
  CHECK(p.Lplus(1, 1, {{2, 2}}) == q12 / r);
  for (int c = 1; c <= M; ++c)
    for (int d = 1; d <= M; ++d)
      for (int a = 1; a <= M; ++a)
        for (int b = 1; b <= M; ++b) {
          CHECK(p.Lplus(a, b, {{c, d}}) == p.R.get({c, a, d, b}));
          CHECK(p.Lminus(a, b, {{c, d}}) == p.Rinv.get({a, c, b, d}));
          if (a > b) CHECK(p.Lplus(a, b, {{c, d}}).is_zero());
          if (a < b) CHECK(p.Lminus(a, b, {{c, d}}).is_zero());
        }
}

TEST_CASE("L on length-two words is a matrix product of R entries") {
  auto p = pairing_for('D', 4);
  int M = p.M;
  for (int a = 1; a <= M; ++a)
    for (int b = 1; b <= M; ++b)
      for (int c : {1, 2, 4})
        for (int d : {1, 3})
          for (int e : {2, 4})
            for (int f = 1; f <= M; ++f) {
              Scalar plus(0), minus(0);
              for (int g = 1; g <= M; ++g) {
                plus += p.R.get({c, a, d, g}) * p.R.get({e, g, f, b});
                minus += p.Rinv.get({a, c, g, d}) * p.Rinv.get({g, e, b, f});
              }
              CHECK(p.Lplus(a, b, {{c, d}, {e, f}}) == plus);
              CHECK(p.Lminus(a, b, {{c, d}, {e, f}}) == minus);
            }
}

TEST_CASE("classical point") {
  ParamOptions opt;
  opt.r_one = true;
  opt.fixed["q12"] = Scalar(1);
  auto p = build_pairing(build_rmatrix_data(make_params(build_series('D', 4), opt)));
  for (int c = 1; c <= 4; ++c)
    for (int d = 1; d <= 4; ++d) {
      auto L = p.Lp.on_letter(c, d);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) CHECK(L.get(a, b) == Scalar(a == b && c == d ? 1 : 0));
      auto f = p.f.on_letter(c, d);
      for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) CHECK(f.get(i, j) == Scalar(i == j && c == d ? 1 : 0));
    }
}

TEST_CASE("counit and antipode on generators") {
  CHECK(counit(Word{{1, 1}, {2, 2}}) == Scalar(1));
  CHECK(counit(Word{{1, 1}, {2, 3}}).is_zero());
  CHECK(counit(Word{}) == Scalar(1));
  for (auto [ser, N] : {std::pair{'B', 5}, {'C', 4}}) {
    auto spec = build_series(ser, N);
    auto p = pairing_for(ser, N);
    for (int a = 1; a <= N; ++a)
      for (int b = 1; b <= N; ++b) {
        // kappa(T^a_b) = eps_a eps_b r^{-rho_a + rho_b} T^{b'}_{a'}
        GroupWord expect{{Word{{spec.prime(b), spec.prime(a)}},
                          Scalar(spec.eps_a[a] * spec.eps_a[b]) * Scalar::s_pow(-spec.rho2[a] + spec.rho2[b])}};
        CHECK(antipode(gw_letter(a, b), p.metric) == expect);
      }
  }
}

TEST_CASE("coproduct sums over all internal indices") {
  auto d = coproduct(gw_letter(1, 2), 3);
  CHECK(d.size() == 3);
  auto d2 = coproduct(GroupWord{{Word{{1, 1}, {2, 3}}, Scalar(2)}}, 3);
  CHECK(d2.size() == 9);
  for (auto& [pair, v] : d2) CHECK(v == Scalar(2));
}

TEST_CASE("f and chi") {
  auto p = pairing_for('B', 3);
  int M = p.M;
  auto chiI = p.chi_on_word({});
  for (auto& c : chiI) CHECK(c.is_zero());
  // chi^A_B(T^C_D) equals lambda^{-1}[sum_E f^E_{EA}^B(T^C_D) - delta delta]
  for (int a = 1; a <= M; ++a)
    for (int b = 1; b <= M; ++b)
      for (int c = 1; c <= M; ++c)
        for (int d = 1; d <= M; ++d) {
          Scalar acc(0);
          for (int e = 1; e <= M; ++e) acc += p.f.eval(p.adj(e, e), p.adj(a, b), Word{{c, d}});
          if (a == b && c == d) acc -= 1;
          CHECK(p.chi(a, b, Word{{c, d}}) == acc / Scalar::lambda());
        }
}

TEST_CASE("Hopf axioms") {
  for (auto [ser, N] : {std::pair{'B', 3}, {'C', 4}, {'D', 4}}) require_pass(verify_hopf_axioms(pairing_for(ser, N)));
}

TEST_CASE("RLL and CLL") {
  for (auto [ser, N] : {std::pair{'B', 3}, {'C', 4}, {'D', 4}}) require_pass(verify_RLL_CLL(pairing_for(ser, N), 2));
  require_pass(verify_RLL_CLL(pairing_for('B', 5), 1));
}

TEST_CASE("RLL detects a wrong R") {
  auto d = build_rmatrix_data(make_params(build_series('D', 4)));
  d.R.set({2, 1, 1, 2}, Scalar(3));
  auto rep = verify_RLL_CLL(build_pairing(d), 1);
  CHECK(!rep.ok());
}
