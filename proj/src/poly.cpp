#include <algorithm>
#include <mutex>
#include <sstream>

#include "qg/scalar.hpp"

namespace qg {

namespace {

std::mutex g_var_mutex;
std::vector<std::string>& var_table() {
  static std::vector<std::string> names{"s"};
  return names;
}

}  // namespace

int var_id(const std::string& name) {
  std::lock_guard<std::mutex> lock(g_var_mutex);
  auto& names = var_table();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  if (static_cast<int>(names.size()) == kMaxVars)
    throw Error("too many variables (limit " + std::to_string(kMaxVars) + ")");
  names.push_back(name);
  return static_cast<int>(names.size()) - 1;
}

const std::string& var_name(int id) {
  std::lock_guard<std::mutex> lock(g_var_mutex);
  return var_table().at(id);
}

int var_count() {
  std::lock_guard<std::mutex> lock(g_var_mutex);
  return static_cast<int>(var_table().size());
}

namespace mono {

Mono var(int v, int e) {
  if (e < 0 || e > kMaxExp) throw Error("exponent out of range");
  return (static_cast<Mono>(e) << shift(v)) | (static_cast<Mono>(e) << 112);
}

Mono mul(Mono a, Mono b) {
  if (deg(a) + deg(b) > kMaxExp) throw Error("monomial degree overflow");
  return a + b;
}

bool divides(Mono a, Mono b) {
  if (deg(a) > deg(b)) return false;
  for (int v = 0; v < kMaxVars; ++v)
    if (exp(a, v) > exp(b, v)) return false;
  return true;
}

Mono gcd(Mono a, Mono b) {
  Mono g = 0;
  for (int v = 0; v < kMaxVars; ++v) {
    int e = std::min(exp(a, v), exp(b, v));
    if (e) g += var(v, e);
  }
  return g;
}

unsigned var_mask(Mono m) {
  unsigned mask = 0;
  for (int v = 0; v < kMaxVars; ++v)
    if (exp(m, v)) mask |= 1u << v;
  return mask;
}

}  // namespace mono

Poly::Poly(const mpq_class& c) {
  if (c != 0) t_.push_back({0, c});
}

Poly Poly::monomial(Mono m, const mpq_class& c) {
  Poly p;
  if (c != 0) p.t_.push_back({m, c});
  return p;
}

unsigned Poly::var_mask() const {
  unsigned mask = 0;
  for (auto& t : t_) mask |= mono::var_mask(t.m);
  return mask;
}

int Poly::degree_in(int v) const {
  int d = 0;
  for (auto& t : t_) d = std::max(d, mono::exp(t.m, v));
  return d;
}

Mono Poly::mono_content() const {
  if (t_.empty()) return 0;
  Mono g = t_[0].m;
  for (std::size_t i = 1; i < t_.size() && g != 0; ++i) g = mono::gcd(g, t_[i].m);
  return g;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.t_) t.c = -t.c;
  return p;
}

namespace {

template <bool Sub>
Poly merge(const std::vector<Term>& a, const std::vector<Term>& b) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].m > b[j].m) {
      out.push_back(a[i++]);
    } else if (a[i].m < b[j].m) {
      out.push_back(b[j++]);
      if (Sub) out.back().c = -out.back().c;
    } else {
      mpq_class c = Sub ? mpq_class(a[i].c - b[j].c) : mpq_class(a[i].c + b[j].c);
      if (c != 0) out.push_back({a[i].m, std::move(c)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) {
    out.push_back(b[j]);
    if (Sub) out.back().c = -out.back().c;
  }
  return PolyBuilder::adopt(std::move(out));
}

}  // namespace

Poly Poly::operator+(const Poly& o) const { return merge<false>(t_, o.t_); }
Poly Poly::operator-(const Poly& o) const { return merge<true>(t_, o.t_); }

Poly Poly::operator*(const Poly& o) const {
  if (t_.empty() || o.t_.empty()) return Poly();
  if (o.t_.size() == 1) {
    Poly p;
    p.t_.reserve(t_.size());
    for (auto& t : t_) p.t_.push_back({mono::mul(t.m, o.t_[0].m), t.c * o.t_[0].c});
    return p;
  }
  if (t_.size() == 1) return o * *this;
  PolyBuilder pb;
  for (auto& a : t_)
    for (auto& b : o.t_) pb.add(mono::mul(a.m, b.m), a.c * b.c);
  return pb.build();
}

Poly Poly::scaled(const mpq_class& c) const {
  if (c == 0) return Poly();
  Poly p = *this;
  for (auto& t : p.t_) t.c *= c;
  return p;
}

Poly Poly::mul_mono(Mono m) const {
  Poly p = *this;
  for (auto& t : p.t_) t.m = mono::mul(t.m, m);
  return p;
}

Poly Poly::div_mono(Mono m) const {
  Poly p = *this;
  for (auto& t : p.t_) t.m = mono::div(t.m, m);
  return p;
}

bool Poly::operator==(const Poly& o) const {
  if (t_.size() != o.t_.size()) return false;
  for (std::size_t i = 0; i < t_.size(); ++i)
    if (t_[i].m != o.t_[i].m || t_[i].c != o.t_[i].c) return false;
  return true;
}

bool Poly::divide_exact(const Poly& b, Poly& q) const {
  if (b.is_zero()) throw DivisionByZero();
  q = Poly();
  if (t_.empty()) return true;
  if (b.t_.size() == 1) {
    Poly out;
    out.t_.reserve(t_.size());
    for (auto& t : t_) {
      if (!mono::divides(b.t_[0].m, t.m)) return false;
      out.t_.push_back({mono::div(t.m, b.t_[0].m), t.c / b.t_[0].c});
    }
    q = std::move(out);
    return true;
  }
  const Term& lb = b.t_[0];
  Poly rem = *this;
  std::vector<Term> qt;
  while (!rem.is_zero()) {
    const Term& lr = rem.t_[0];
    if (!mono::divides(lb.m, lr.m)) return false;
    Term t{mono::div(lr.m, lb.m), lr.c / lb.c};
    rem = rem - Poly::monomial(t.m, t.c) * b;
    qt.push_back(std::move(t));
  }
  q.t_ = std::move(qt);
  return true;
}

Poly Poly::monic() const {
  if (t_.empty() || t_[0].c == 1) return *this;
  mpq_class inv = 1 / t_[0].c;
  return scaled(inv);
}

Poly Poly::substitute(int v, const mpq_class& x) const {
  PolyBuilder pb;
  for (auto& t : t_) {
    int e = mono::exp(t.m, v);
    if (e == 0) {
      pb.add(t.m, t.c);
      continue;
    }
    mpq_class f = 1;
    for (int k = 0; k < e; ++k) f *= x;
    pb.add(t.m - mono::var(v, e), t.c * f);
  }
  return pb.build();
}

namespace {

template <class R>
std::complex<R> eval_terms(const std::vector<Term>& ts, const std::vector<std::complex<R>>& point) {
  std::complex<R> sum = 0;
  for (auto& t : ts) {
    std::complex<R> term = static_cast<R>(t.c.get_num().get_d()) / static_cast<R>(t.c.get_den().get_d());
    for (int v = 0; v < kMaxVars; ++v) {
      int e = mono::exp(t.m, v);
      if (!e) continue;
      if (v >= static_cast<int>(point.size()))
        throw Error("variable " + var_name(v) + " not assigned");
      std::complex<R> base = point[v], acc = 1;
      for (; e; e >>= 1, base *= base)
        if (e & 1) acc *= base;
      term *= acc;
    }
    sum += term;
  }
  return sum;
}

}  // namespace

std::complex<double> Poly::evaluate(const std::vector<std::complex<double>>& point) const { return eval_terms(t_, point); }

std::complex<long double> Poly::evaluate(const std::vector<std::complex<long double>>& point) const {
  return eval_terms(t_, point);
}

std::map<int, Poly> Poly::coeffs_in(int v) const {
  std::map<int, PolyBuilder> acc;
  for (auto& t : t_) {
    int e = mono::exp(t.m, v);
    acc[e].add(e ? t.m - mono::var(v, e) : t.m, t.c);
  }
  std::map<int, Poly> out;
  for (auto& [e, pb] : acc) out[e] = pb.build();
  return out;
}

Poly Poly::from_coeffs(int v, const std::map<int, Poly>& c) {
  PolyBuilder pb;
  for (auto& [e, p] : c) pb.add(e ? p.mul_mono(mono::var(v, e)) : p);
  return pb.build();
}

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& t : t_) {
    mpq_class c = t.c;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    mpq_class a = abs(c);
    bool unit = (a == 1 && t.m != 0);
    if (!unit) os << a.get_str();
    bool need_star = !unit;
    for (int v = 0; v < kMaxVars; ++v) {
      int e = mono::exp(t.m, v);
      if (!e) continue;
      if (need_star) os << "*";
      os << var_name(v);
      if (e > 1) os << "^" << e;
      need_star = true;
    }
  }
  return os.str();
}

Poly PolyBuilder::adopt(std::vector<Term>&& sorted) {
  Poly p;
  p.t_ = std::move(sorted);
  return p;
}

void PolyBuilder::add(const Poly& p) {
  for (auto& t : p.terms()) t_.push_back(t);
}

Poly PolyBuilder::build() {
  std::sort(t_.begin(), t_.end(), [](const Term& a, const Term& b) { return a.m > b.m; });
  Poly p;
  p.t_.reserve(t_.size());
  for (auto& t : t_) {
    if (!p.t_.empty() && p.t_.back().m == t.m) {
      p.t_.back().c += t.c;
    } else {
      if (!p.t_.empty() && p.t_.back().c == 0) p.t_.pop_back();
      p.t_.push_back(std::move(t));
    }
  }
  if (!p.t_.empty() && p.t_.back().c == 0) p.t_.pop_back();
  t_.clear();
  return p;
}

// ---------------------------------------------------------------------------
// gcd

namespace {

using Dense = std::vector<mpq_class>;  // index = degree

Dense to_dense(const Poly& p, int v) {
  Dense d(p.degree_in(v) + 1);
  for (auto& t : p.terms()) d[mono::exp(t.m, v)] = t.c;
  return d;
}

Poly from_dense(const Dense& d, int v) {
  PolyBuilder pb;
  for (std::size_t e = 0; e < d.size(); ++e)
    if (d[e] != 0) pb.add(e ? mono::var(v, static_cast<int>(e)) : Mono(0), d[e]);
  return pb.build();
}

void trim(Dense& d) {
  while (!d.empty() && d.back() == 0) d.pop_back();
}

Dense dense_rem(Dense a, const Dense& b) {
  const mpq_class& lb = b.back();
  while (a.size() >= b.size()) {
    mpq_class f = a.back() / lb;
    std::size_t off = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

Poly gcd_univariate(const Poly& a, const Poly& b, int v) {
  Dense x = to_dense(a, v), y = to_dense(b, v);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    Dense r = dense_rem(x, y);
    x = std::move(y);
    y = std::move(r);
    if (!y.empty()) {
      mpq_class l = y.back();
      for (auto& c : y) c /= l;
    }
  }
  return from_dense(x, v).monic();
}

// Image of p in Q[v] after substituting integers for every other variable.
Dense image_in(const Poly& p, int v, const std::vector<long>& point) {
  Dense d(p.degree_in(v) + 1);
  for (auto& t : p.terms()) {
    mpq_class c = t.c;
    for (int w = 0; w < kMaxVars; ++w) {
      if (w == v) continue;
      int e = mono::exp(t.m, w);
      if (!e) continue;
      mpz_class x;
      mpz_pow_ui(x.get_mpz_t(), mpz_class(point[w]).get_mpz_t(), e);
      c *= x;
    }
    d[mono::exp(t.m, v)] += c;
  }
  return d;
}

// True when gcd(a, b) provably has degree 0 in v: an evaluation of the other
// variables that keeps both leading coefficients nonzero gives coprime images.
bool coprime_in(const Poly& a, const Poly& b, int v) {
  int da = a.degree_in(v), db = b.degree_in(v);
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::vector<long> point(kMaxVars);
    for (int w = 0; w < kMaxVars; ++w) point[w] = 2 + ((w * 7 + attempt * 13) % 17);
    Dense ia = image_in(a, v, point), ib = image_in(b, v, point);
    trim(ia);
    trim(ib);
    if (static_cast<int>(ia.size()) != da + 1 || static_cast<int>(ib.size()) != db + 1) continue;
    Dense x = ia, y = ib;
    if (x.size() < y.size()) std::swap(x, y);
    while (!y.empty()) {
      Dense r = dense_rem(x, y);
      x = std::move(y);
      y = std::move(r);
    }
    return x.size() == 1;
  }
  return false;
}

Poly exact(const Poly& a, const Poly& b) {
  Poly q;
  if (!a.divide_exact(b, q)) throw Error("internal: inexact division in gcd");
  return q;
}

Poly gcd_impl(const Poly& a, const Poly& b);

Poly content_in(const Poly& p, int v) {
  Poly g;
  for (auto& [e, c] : p.coeffs_in(v)) {
    g = g.is_zero() ? c.monic() : gcd_impl(g, c);
    if (g.is_constant()) return Poly(mpq_class(1));
  }
  return g;
}

Poly prem(const Poly& a, const Poly& b, int v) {
  int db = b.degree_in(v);
  auto cb = b.coeffs_in(v);
  Poly lb = cb.rbegin()->second;
  Poly r = a;
  int count = a.degree_in(v) - db + 1;
  while (!r.is_zero() && r.degree_in(v) >= db) {
    int dr = r.degree_in(v);
    Poly lr = r.coeffs_in(v).rbegin()->second;
    r = r * lb - lr.mul_mono(mono::var(v, dr - db)) * b;
    --count;
  }
  for (; count > 0; --count) r = r * lb;
  return r;
}

Poly primitive_part(const Poly& p, int v) { return exact(p, content_in(p, v)); }

// Both arguments are free of monomial factors.
Poly gcd_nomono(const Poly& a, const Poly& b) {
  if (a.is_constant() || b.is_constant()) return Poly(mpq_class(1));
  if (a.size() == b.size()) {
    Poly am = a.monic(), bm = b.monic();
    if (am == bm) return am;
  }
  unsigned ma = a.var_mask(), mb = b.var_mask();
  if (ma != mb) {
    // A variable present in only one argument cannot divide the gcd.
    const Poly& with = (ma & ~mb) ? a : b;
    const Poly& other = (ma & ~mb) ? b : a;
    unsigned extra = (ma & ~mb) ? (ma & ~mb) : (mb & ~ma);
    int v = __builtin_ctz(extra);
    Poly g = other.monic();
    for (auto& [e, c] : with.coeffs_in(v)) {
      g = gcd_impl(g, c);
      if (g.is_constant()) return g;
    }
    return g;
  }
  if (__builtin_popcount(ma) == 1) return gcd_univariate(a, b, __builtin_ctz(ma));
  int v = -1, best = 1 << 30;
  for (int i = 0; i < kMaxVars; ++i) {
    if (!(ma >> i & 1)) continue;
    int d = std::max(a.degree_in(i), b.degree_in(i));
    if (d < best) best = d, v = i;
  }
  Poly ca = content_in(a, v), cb = content_in(b, v);
  Poly pa = exact(a, ca), pb = exact(b, cb);
  Poly c = gcd_impl(ca, cb);
  if (coprime_in(pa, pb, v)) return c;
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  // Subresultant remainder sequence: coefficient growth stays polynomial.
  Poly g(mpq_class(1)), h(mpq_class(1)), res;
  while (true) {
    int delta = pa.degree_in(v) - pb.degree_in(v);
    Poly r = prem(pa, pb, v);
    if (r.is_zero()) {
      res = pb;
      break;
    }
    if (r.degree_in(v) == 0) {
      res = Poly(mpq_class(1));
      break;
    }
    Poly hd(mpq_class(1));
    for (int k = 0; k < delta; ++k) hd = hd * h;
    pa = std::move(pb);
    pb = exact(r, g * hd);
    g = pa.coeffs_in(v).rbegin()->second;
    if (delta > 0) {
      Poly gd = g;
      for (int k = 1; k < delta; ++k) gd = gd * g;
      Poly hd1(mpq_class(1));
      for (int k = 1; k < delta; ++k) hd1 = hd1 * h;
      h = exact(gd, hd1);
    }
  }
  Poly h2 = res;
  return (c * primitive_part(h2, v)).monic();
}

Poly gcd_impl(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  Mono ca = a.mono_content(), cb = b.mono_content();
  Mono g = mono::gcd(ca, cb);
  Poly x = ca ? a.div_mono(ca) : a;
  Poly y = cb ? b.div_mono(cb) : b;
  Poly h = gcd_nomono(x, y);
  return (g ? h.mul_mono(g) : h).monic();
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) { return gcd_impl(a, b); }

}  // namespace qg
