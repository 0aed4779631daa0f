#include <doctest.h>

#include <cmath>
#include <random>

#include "qg/scalar.hpp"

using qg::Poly;
using qg::Scalar;

namespace {

Scalar random_poly(std::mt19937& rng, int terms) {
  std::uniform_int_distribution<int> coef(-4, 4), ex(0, 2);
  Scalar acc;
  Scalar s = Scalar::s(), a = Scalar::var("qa"), b = Scalar::var("qb");
  for (int i = 0; i < terms; ++i)
    acc += Scalar(coef(rng)) * s.pow(ex(rng)) * a.pow(ex(rng)) * b.pow(ex(rng));
  return acc;
}

Scalar random_scalar(std::mt19937& rng) {
  Scalar d;
  while (d.is_zero()) d = random_poly(rng, 3);
  return random_poly(rng, 3) / d;
}

std::vector<std::complex<double>> random_point(std::mt19937& rng) {
  std::uniform_real_distribution<double> ang(0, 2 * M_PI);
  qg::ParamAssignment a;
  a.values["s"] = std::polar(1.0, ang(rng));
  a.values["qa"] = std::polar(1.0, ang(rng));
  a.values["qb"] = std::polar(1.0, ang(rng));
  return a.point();
}

bool close(std::complex<double> x, std::complex<double> y) {
  return std::abs(x - y) <= 1e-9 * std::max(1.0, std::abs(y));
}

}  // namespace

TEST_CASE("polynomial cancellation") {
  Scalar s = Scalar::s();
  Scalar x = (s * s - 1) / (s - 1);
  CHECK(x == s + 1);
  CHECK(x.den().is_constant());
}

TEST_CASE("lambda stored over s^2") {
  Scalar l = Scalar::lambda();
  Scalar s = Scalar::s();
  CHECK(l.num() == (s.pow(4) - 1).num());
  CHECK(l.den() == s.pow(2).num());
}

TEST_CASE("Q3 simplifies") {
  Scalar r = Scalar::r();
  Scalar q3 = (1 - r * r) / ((1 - r.pow(3)) * (1 + r.inverse()));
  CHECK(q3 == r / (1 + r + r * r));
}

TEST_CASE("classical limits") {
  Scalar l = Scalar::lambda(), r = Scalar::r();
  CHECK((l / l).limit_classical().is_one());
  CHECK((r - 1) / l == (r * r) / ((r + 1) * r));
  CHECK(((r - 1) / l).limit_classical() == Scalar(mpq_class(1, 2)));
  CHECK_THROWS_AS(l.inverse().limit_classical(), qg::PoleAtClassicalPoint);
  CHECK(l.order_at_classical() == 1);
  CHECK((l * l / (r + 1)).order_at_classical() == 2);
  CHECK(l.inverse().order_at_classical() == -1);
}

TEST_CASE("evaluation") {
  qg::ParamAssignment a;
  a.values["s"] = 1;
  CHECK(close(Scalar::r().evaluate(a), 1.0));
  a.values["q12"] = std::complex<double>(0, 1);
  CHECK(close(Scalar::var("q12").evaluate(a), std::complex<double>(0, 1)));
  a.values["s"] = std::polar(1.0, M_PI / 8);
  CHECK(close(Scalar::lambda().evaluate(a), std::complex<double>(0, 2 * std::sin(M_PI / 4))));
  Scalar pole = (Scalar::s() - 1).inverse();
  a.values["s"] = 1;
  CHECK_THROWS_AS(pole.evaluate(a), qg::EvaluationPole);
  CHECK_THROWS_AS(Scalar(1) / Scalar(), qg::DivisionByZero);
}

TEST_CASE("field axioms on random triples") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    Scalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    CHECK((a - a).den().is_constant());
    if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
    CHECK(a + b == b + a);
    auto p = random_point(rng);
    try {
      CHECK(close((a * b + c).evaluate(p), a.evaluate(p) * b.evaluate(p) + c.evaluate(p)));
      if (!b.is_zero()) CHECK(close((a / b).evaluate(p), a.evaluate(p) / b.evaluate(p)));
    } catch (const qg::EvaluationPole&) {
    }
  }
}

TEST_CASE("gcd recovers planted common factors") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    Scalar g = random_poly(rng, 3), p = random_poly(rng, 3), q = random_poly(rng, 2);
    if (g.is_zero() || p.is_zero() || q.is_zero()) continue;
    Poly h = qg::gcd((g * p).num(), (g * q).num());
    Poly quotient;
    CHECK(h.divide_exact(g.num().monic(), quotient));
    // Fraction (g p)/(g q) must equal p/q.
    CHECK((g * p) / (g * q) == p / q);
  }
}

TEST_CASE("limit is multiplicative") {
  std::mt19937 rng(3);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    Scalar a = random_scalar(rng), b = random_scalar(rng);
    try {
      Scalar la = a.limit_classical(), lb = b.limit_classical();
      CHECK((a * b).limit_classical() == la * lb);
      ++checked;
    } catch (const qg::PoleAtClassicalPoint&) {
    }
  }
  CHECK(checked > 10);
}

TEST_CASE("JSON round trip is exact") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    Scalar a = random_scalar(rng) * Scalar(mpq_class(7, 3));
    auto j = a.to_json();
    CHECK(Scalar::from_json(j) == a);
    CHECK(Scalar::from_json(j).to_json().dump() == j.dump());
  }
  auto j = Scalar::lambda().to_json();
  CHECK(j.dump() == R"({"den":[["1/1",{"s":2}]],"num":[["1/1",{"s":4}],["-1/1",{}]]})");
}
