#include <doctest.h>

#include <random>

#include "qg/errors.hpp"
#include "qg/qplane.hpp"

using namespace qg;

namespace {

ISOWord X(const ISOParams& iso, std::vector<int> l, const Scalar& c = Scalar(1)) { return plane_monomial(iso, l, c); }

ISOWord T(int a, int c, const Scalar& k) { return ISOWord{{{iso_T(a, c)}, k}}; }

ISOParams all_one(int N) {
  ISOOptions o;
  ISOParams probe = make_iso_params(N);
  for (auto& n : probe.names) o.fixed[n] = Scalar(1);
  return make_iso_params(N, o);
}

}  // namespace

TEST_CASE("plane normal form") {
  auto iso = make_iso_params(4);
  CHECK(X(iso, {3, 1}) == X(iso, {1, 3}, iso.q(1, 3).inverse()));
  CHECK(X(iso, {2, 1}) == X(iso, {1, 2}, iso.q(1, 2).inverse()));
  CHECK(X(iso, {1, 1}) == ISOWord{{{iso_x(1), iso_x(1)}, Scalar(1)}});
  auto one = all_one(4);
  CHECK(X(one, {4, 2, 3, 1}) == X(one, {1, 2, 3, 4}));
  CHECK_THROWS_AS(plane_normal_form(ISOWord{{{iso_T(1, 1)}, Scalar(1)}}, iso), ConfigError);
  CHECK_THROWS_AS(X(iso, {5}), ConfigError);
}

TEST_CASE("chi on coordinates") {
  for (int N : {3, 4}) {
    auto iso = make_iso_params(N);
    for (int c = 1; c <= N; ++c) {
      for (int a = 1; a <= N; ++a) {
        CHECK(chi_value(iso, c, X(iso, {a})) == (a == c ? -iso.qb(c) : Scalar(0)));
        CHECK(chi_on_plane(iso, c, X(iso, {a})) == T(a, c, -iso.qb(c)));
      }
      CHECK(chi_on_plane(iso, c, ISOWord{{{}, Scalar(1)}}).empty());
    }
    // chi_c(x^a x^b) = eps of the Leibniz expansion: vanishes (two x's, one T)
    CHECK(chi_value(iso, 1, X(iso, {1, 2})).is_zero());
  }
  auto iso = make_iso_params(4);
  // Leibniz: chi_1 * (x^1 x^2) = -q_{1*} T^1_1 q_{1*} x^2 + x^1 (-q_{1*} T^2_1)
  ISOWord want = normal_form(iso_mul(T(1, 1, -iso.qb(1) * iso.qb(1)), X(iso, {2})), iso);
  iso_add(want, normal_form(iso_mul(X(iso, {1}), T(2, 1, -iso.qb(1))), iso));
  CHECK(chi_on_plane(iso, 1, X(iso, {1, 2})) == want);
}

TEST_CASE("exterior derivative") {
  auto iso = make_iso_params(4);
  for (int a = 1; a <= 4; ++a) {
    VForm d = exterior_d_plane(iso, X(iso, {a}));
    REQUIRE(d.size() == 4u);
    for (int c = 1; c <= 4; ++c) CHECK(d[c] == T(a, c, -iso.qb(c)));
    DxForm f = to_dx(iso, d);
    CHECK(f == DxForm{{a, ISOWord{{{}, Scalar(1)}}}});
  }
  CHECK(exterior_d_plane(iso, ISOWord{{{}, Scalar(1)}}).empty());

  // d(x^1 x^2) = q12 x^2 dx^1 + x^1 dx^2
  DxForm f = to_dx(iso, exterior_d_plane(iso, X(iso, {1, 2})));
  CHECK(f == DxForm{{1, X(iso, {2}, iso.q(1, 2))}, {2, X(iso, {1})}});
  CHECK(exterior_d_dx(iso, f).empty());
  // dropping the phase breaks closedness
  DxForm bad{{1, X(iso, {2})}, {2, X(iso, {1})}};
  CHECK_FALSE(exterior_d_dx(iso, bad).empty());

  VForm junk{{1, X(iso, {1})}};
  CHECK_THROWS_AS(to_dx(iso, junk), NonReducible);
  VForm partial{{1, T(1, 1, -iso.qb(1))}};
  CHECK_THROWS_AS(to_dx(iso, partial), NonReducible);
}

TEST_CASE("partial derivatives") {
  auto iso = make_iso_params(4);
  for (int s = 1; s <= 4; ++s)
    for (int a = 1; a <= 4; ++a)
      for (Side side : {Side::left, Side::right}) {
        ISOWord d = partial_derivative(iso, side, s, X(iso, {a}));
        CHECK(d == (a == s ? ISOWord{{{}, Scalar(1)}} : ISOWord{}));
      }
  CHECK(partial_derivative(iso, Side::right, 1, X(iso, {1, 2})) == X(iso, {2}));
  CHECK(partial_derivative(iso, Side::left, 1, X(iso, {1, 2})) == X(iso, {2}, iso.q(1, 2)));
  CHECK(partial_derivative(iso, Side::left, 2, X(iso, {1, 2})) == X(iso, {1}));
  CHECK(partial_derivative(iso, Side::right, 2, X(iso, {1, 2})) == X(iso, {1}, iso.q(1, 2)));

  // at q = 1 both are the ordinary derivative
  auto one = all_one(4);
  std::mt19937 rng(7);
  for (int k = 0; k < 30; ++k) {
    std::vector<int> l, e(5, 0);
    int len = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < len; ++i) {
      l.push_back(1 + static_cast<int>(rng() % 4));
      ++e[l.back()];
    }
    for (int s = 1; s <= 4; ++s) {
      ISOWord want;
      if (e[s]) {
        std::vector<int> m;
        bool dropped = false;
        for (int a : l) {
          if (a == s && !dropped) {
            dropped = true;
            continue;
          }
          m.push_back(a);
        }
        want = X(one, m, Scalar(e[s]));
      }
      CHECK(partial_derivative(one, Side::left, s, X(one, l)) == want);
      CHECK(partial_derivative(one, Side::right, s, X(one, l)) == want);
    }
  }
}

TEST_CASE("plane calculus properties") {
  for (int N : {3, 4}) {
    auto iso = make_iso_params(N);
    Report rep = verify_plane(iso, 4, 3);
    CHECK(rep.checks.size() == 9u);
    for (auto& c : rep.checks) {
      INFO(N << " " << c.name << " " << c.witness);
      CHECK(c.pass);
    }
  }
  ISOOptions o;
  o.r_one = false;
  CHECK_THROWS_AS(verify_plane(make_iso_params(4, o)), NonReducible);
}

TEST_CASE("plane from the commutation table") {
  auto iso = make_iso_params(4);
  auto calc = build_iso_calculus(iso);
  // V^a x^b = q_{a*} x^b V^a, read off the Omega-generator commutations
  int seen = 0;
  for (auto& r : calc.commutations.relations)
    if (r.lhs.size() == 2 && r.lhs[0].rfind("V^", 0) == 0 && r.lhs[1].rfind("x^", 0) == 0) {
      int a = std::stoi(r.lhs[0].substr(2));
      CHECK(r.coeff == iso.qb(a));
      ++seen;
    }
  CHECK(seen == 16);
}

TEST_CASE("real coordinates xi") {
  auto xb = xi_basis(4);
  CHECK(xb.n == 2);
  CHECK(xb.S.size() == 5u);
  CHECK(xb.inverse_ok);
  CHECK(xb.diagonal);
  CHECK(xb.real);
  CHECK(xb.signature == std::vector<int>{0, 1, 1, 1, -1});
  Scalar h(mpq_class(1, 2));
  // xi^{n+1} = (i / sqrt2)(x^n - x^{n+1})
  CHECK(xb.S[3][2] == QExt(0, 0, 0, h));
  CHECK(xb.S[3][3] == QExt(0, 0, 0, -h));
  CHECK(xb.S[1][1] == QExt(0, h, 0, 0));
  CHECK(xb.S[1][4] == QExt(0, h, 0, 0));
  CHECK(xb.S[4][4] == QExt(0, -h, 0, 0));
  CHECK(xb.S[4][1] == QExt(0, h, 0, 0));

  for (int N : {2, 6}) {
    auto x = xi_basis(N);
    CHECK(x.inverse_ok);
    CHECK(x.diagonal);
    int plus = 0, minus = 0;
    for (int a = 1; a <= N; ++a) (x.signature[a] > 0 ? plus : minus)++;
    CHECK(plus == N / 2 + 1);
    CHECK(minus == N / 2 - 1);
  }
  CHECK_THROWS_AS(xi_basis(5), BadDimension);

  QExt r2(0, h, 0, 0), ir2(0, 0, 0, h);
  CHECK(r2 * r2 == QExt(h));
  CHECK(ir2 * ir2 == QExt(-h));
  CHECK(QExt(0, 1, 0, 0) * QExt(0, 0, 1, 0) == QExt(0, 0, 0, 1));
  CHECK(QExt(0, 0, 1, 0) * QExt(0, 0, 0, 1) == QExt(0, -1, 0, 0));

  // one relation per pair a < b
  auto one = all_one(4);
  auto rel = xi_relations(one, xb);
  CHECK(rel.size() == 6u);
  auto iso = make_iso_params(4);
  CHECK(xi_relations(iso, xb).size() == 6u);
  CHECK_THROWS_AS(xi_relations(make_iso_params(3), xb), BadDimension);
}

TEST_CASE("plane export") {
  auto iso = make_iso_params(4);
  auto j = export_plane(iso);
  for (const char* k : {"coordinates", "dx_x", "wedge", "V_x", "vielbein", "chi", "derivatives", "xi"}) CHECK(j.contains(k));
  CHECK(j["xi"]["map"].size() == 4u);
  CHECK(j["xi"]["signature"] == nlohmann::json{1, 1, 1, -1});
  CHECK(j.dump() == export_plane(make_iso_params(4)).dump());
  auto rs = RelationSet::from_json(j["vielbein"]);
  CHECK(rs.size() == 4u);
  CHECK(rs.relations[0].terms.size() == 4u);
  CHECK_FALSE(export_plane(make_iso_params(3)).contains("xi"));
}
