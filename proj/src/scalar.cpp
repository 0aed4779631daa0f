#include <limits>
#include <sstream>

#include "qg/scalar.hpp"

namespace qg {

std::vector<std::complex<double>> ParamAssignment::point() const {
  std::vector<std::complex<double>> p(var_count(), std::complex<double>(0));
  for (auto& [name, value] : values) {
    if (name == "r") continue;
    int id = var_id(name);
    if (id >= static_cast<int>(p.size())) p.resize(id + 1);
    p[id] = value;
  }
  if (!values.count("s") && values.count("r")) {
    p[0] = std::sqrt(values.at("r"));
  }
  return p;
}

Scalar::Scalar(const Poly& num, const Poly& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw DivisionByZero();
  canonicalize();
}

void Scalar::canonicalize() {
  if (num_.is_zero()) {
    den_ = Poly(mpq_class(1));
    return;
  }
  if (den_.is_constant()) {
    if (den_.lead().c != 1) {
      num_ = num_.scaled(1 / den_.lead().c);
      den_ = Poly(mpq_class(1));
    }
    return;
  }
  if (den_.is_monomial()) {
    Mono g = mono::gcd(num_.mono_content(), den_.lead().m);
    mpq_class c = den_.lead().c;
    if (g) {
      num_ = num_.div_mono(g);
      den_ = den_.div_mono(g);
    }
    if (c != 1) {
      num_ = num_.scaled(1 / c);
      den_ = den_.monic();
    }
    return;
  }
  Poly g = gcd(num_, den_);
  if (!g.is_constant()) {
    Poly n, d;
    num_.divide_exact(g, n);
    den_.divide_exact(g, d);
    num_ = std::move(n);
    den_ = std::move(d);
  }
  mpq_class c = den_.lead().c;
  if (c != 1) {
    num_ = num_.scaled(1 / c);
    den_ = den_.monic();
  }
}

Scalar Scalar::s_pow(int k) {
  if (k >= 0) return Scalar(Poly::variable(0, k));
  return Scalar(Poly(mpq_class(1)), Poly::variable(0, -k));
}

Scalar Scalar::lambda() { return r() - r().inverse(); }

Scalar Scalar::parse_rational(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw Error("bad rational literal: " + text);
  q.canonicalize();
  return Scalar(q);
}

bool Scalar::is_one() const {
  return den_.is_constant() && num_.is_constant() && !num_.is_zero() && num_.lead().c == 1;
}

Scalar Scalar::operator-() const {
  Scalar x = *this;
  x.num_ = -x.num_;
  return x;
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  Scalar x;
  if (den_ == o.den_) {
    x.num_ = num_ + o.num_;
    x.den_ = den_;
  } else if (den_.is_monomial() && o.den_.is_monomial()) {
    // Both denominators are monic monomials here.
    Mono a = den_.lead().m, b = o.den_.lead().m;
    Mono g = mono::gcd(a, b);
    Mono l = mono::mul(a, mono::div(b, g));
    x.num_ = num_.mul_mono(mono::div(l, a)) + o.num_.mul_mono(mono::div(l, b));
    x.den_ = Poly::monomial(l);
  } else {
    Poly g = gcd(den_, o.den_);
    Poly da, db;
    den_.divide_exact(g, da);
    o.den_.divide_exact(g, db);
    x.num_ = num_ * db + o.num_ * da;
    x.den_ = den_ * db;
  }
  x.canonicalize();
  return x;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  if (is_zero() || o.is_zero()) return Scalar();
  if (den_.is_constant() && o.den_.is_constant()) return Scalar(num_ * o.num_);
  Scalar x;
  if (den_.is_monomial() && o.den_.is_monomial()) {
    x.num_ = num_ * o.num_;
    x.den_ = den_ * o.den_;
    x.canonicalize();
    return x;
  }
  // Cross-cancel so the product needs no further gcd.
  Poly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
  Poly n1 = num_, d2 = o.den_, n2 = o.num_, d1 = den_;
  if (!g1.is_constant()) {
    num_.divide_exact(g1, n1);
    o.den_.divide_exact(g1, d2);
  }
  if (!g2.is_constant()) {
    o.num_.divide_exact(g2, n2);
    den_.divide_exact(g2, d1);
  }
  x.num_ = n1 * n2;
  x.den_ = d1 * d2;
  mpq_class c = x.den_.lead().c;
  if (c != 1) {
    x.num_ = x.num_.scaled(1 / c);
    x.den_ = x.den_.monic();
  }
  return x;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero();
  Scalar x;
  x.num_ = den_;
  x.den_ = num_;
  mpq_class c = x.den_.lead().c;
  if (c != 1) {
    x.num_ = x.num_.scaled(1 / c);
    x.den_ = x.den_.monic();
  }
  return x;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  Scalar acc(1), base = *this;
  for (; k; k >>= 1, base = base * base)
    if (k & 1) acc = acc * base;
  return acc;
}

std::complex<double> Scalar::evaluate(const std::vector<std::complex<double>>& point) const {
  std::complex<double> d = den_.evaluate(point);
  if (d == std::complex<double>(0)) throw EvaluationPole();
  return num_.evaluate(point) / d;
}

std::complex<long double> Scalar::evaluate(const std::vector<std::complex<long double>>& point) const {
  std::complex<long double> d = den_.evaluate(point);
  if (d == std::complex<long double>(0)) throw EvaluationPole();
  return num_.evaluate(point) / d;
}

namespace {

int order_at_one(Poly p) {
  if (p.is_zero()) throw Error("order of zero polynomial");
  Poly sm1 = Poly::variable(0) - Poly(mpq_class(1));
  int k = 0;
  while (p.substitute(0, 1).is_zero()) {
    Poly q;
    p.divide_exact(sm1, q);
    p = std::move(q);
    ++k;
  }
  return k;
}

}  // namespace

Scalar Scalar::limit_classical() const {
  Poly d = den_.substitute(0, 1);
  if (d.is_zero()) throw PoleAtClassicalPoint();
  return Scalar(num_.substitute(0, 1), d);
}

int Scalar::order_at_classical() const {
  if (is_zero()) return std::numeric_limits<int>::max();
  return order_at_one(num_) - order_at_one(den_);
}

Scalar Scalar::substitute(const std::string& v, const mpq_class& x) const {
  int id = var_id(v);
  Poly d = den_.substitute(id, x);
  if (d.is_zero()) throw DivisionByZero();
  return Scalar(num_.substitute(id, x), d);
}

namespace {

nlohmann::json poly_json(const Poly& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (auto& t : p.terms()) {
    nlohmann::json m = nlohmann::json::object();
    for (int v = 0; v < kMaxVars; ++v)
      if (int e = mono::exp(t.m, v)) m[var_name(v)] = e;
    mpz_class n = t.c.get_num(), d = t.c.get_den();
    arr.push_back({n.get_str() + "/" + d.get_str(), m});
  }
  return arr;
}

Poly poly_from_json(const nlohmann::json& arr) {
  PolyBuilder pb;
  for (auto& item : arr) {
    if (!item.is_array() || item.size() != 2) throw Error("bad polynomial term in JSON");
    mpq_class c;
    if (c.set_str(item[0].get<std::string>(), 10) != 0) throw Error("bad coefficient in JSON");
    c.canonicalize();
    Mono m = 0;
    for (auto& [name, e] : item[1].items()) m = mono::mul(m, mono::var(var_id(name), e.get<int>()));
    pb.add(m, c);
  }
  return pb.build();
}

}  // namespace

nlohmann::json Scalar::to_json() const {
  return nlohmann::json{{"num", poly_json(num_)}, {"den", poly_json(den_)}};
}

Scalar Scalar::from_json(const nlohmann::json& j) {
  return Scalar(poly_from_json(j.at("num")), poly_from_json(j.at("den")));
}

std::string Scalar::str() const {
  if (den_.is_constant()) return num_.str();
  std::string n = num_.size() > 1 ? "(" + num_.str() + ")" : num_.str();
  return n + "/(" + den_.str() + ")";
}

}  // namespace qg
