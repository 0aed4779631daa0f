#ifndef QG_SCALAR_HPP
#define QG_SCALAR_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "qg/errors.hpp"

namespace qg {

// Variables are registered globally by name. Index 0 is always "s", with r = s^2.
constexpr int kMaxVars = 11;
int var_id(const std::string& name);
const std::string& var_name(int id);
int var_count();

// Exponent vector packed into 128 bits: total degree in the top 16 bits, then
// 10 bits per variable with variable 0 most significant. Integer comparison
// is graded lexicographic order with s first. Total degree is capped at 1023
// so no field can carry into its neighbour.
using Mono = unsigned __int128;

namespace mono {
constexpr int kBits = 10;
constexpr int kMaxExp = (1 << kBits) - 1;
constexpr int shift(int v) { return 100 - kBits * v; }
inline int deg(Mono m) { return static_cast<int>(m >> 112); }
inline int exp(Mono m, int v) { return static_cast<int>((m >> shift(v)) & kMaxExp); }
Mono var(int v, int e);
Mono mul(Mono a, Mono b);
bool divides(Mono a, Mono b);
Mono gcd(Mono a, Mono b);
inline Mono div(Mono b, Mono a) { return b - a; }
unsigned var_mask(Mono m);
}  // namespace mono

struct Term {
  Mono m;
  mpq_class c;
};

class Poly {
 public:
  Poly() = default;
  explicit Poly(const mpq_class& c);
  static Poly monomial(Mono m, const mpq_class& c = 1);
  static Poly variable(int v, int e = 1) { return monomial(mono::var(v, e)); }

  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m == 0); }
  bool is_monomial() const { return t_.size() == 1; }
  std::size_t size() const { return t_.size(); }
  const std::vector<Term>& terms() const { return t_; }
  const Term& lead() const { return t_.front(); }
  unsigned var_mask() const;
  int degree_in(int v) const;
  Mono mono_content() const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const mpq_class& c) const;
  Poly mul_mono(Mono m) const;
  Poly div_mono(Mono m) const;
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Exact quotient; returns false if b does not divide *this.
  bool divide_exact(const Poly& b, Poly& q) const;
  Poly monic() const;
  // Substitutes variable v by a rational value.
  Poly substitute(int v, const mpq_class& x) const;
  std::complex<double> evaluate(const std::vector<std::complex<double>>& point) const;
  std::complex<long double> evaluate(const std::vector<std::complex<long double>>& point) const;

  // Coefficients of *this viewed as a polynomial in variable v, indexed by degree.
  std::map<int, Poly> coeffs_in(int v) const;
  static Poly from_coeffs(int v, const std::map<int, Poly>& c);

  std::string str() const;

 private:
  friend class PolyBuilder;
  std::vector<Term> t_;
};

// Accumulates terms in arbitrary order, then sorts and merges.
class PolyBuilder {
 public:
  void add(Mono m, const mpq_class& c) { t_.push_back({m, c}); }
  void add(const Poly& p);
  Poly build();
  // Takes terms already sorted descending with no zeros or duplicates.
  static Poly adopt(std::vector<Term>&& sorted);

 private:
  std::vector<Term> t_;
};

Poly gcd(const Poly& a, const Poly& b);

struct ParamAssignment {
  std::map<std::string, std::complex<double>> values;
  std::vector<std::complex<double>> point() const;
};

class Scalar {
 public:
  Scalar() : den_(mpq_class(1)) {}
  Scalar(long v) : num_(mpq_class(v)), den_(mpq_class(1)) {}
  Scalar(const mpq_class& v) : num_(v), den_(mpq_class(1)) {}
  Scalar(const Poly& num, const Poly& den);
  explicit Scalar(const Poly& num) : num_(num), den_(mpq_class(1)) {}

  static Scalar var(const std::string& name) { return Scalar(Poly::variable(var_id(name))); }
  static Scalar s() { return Scalar(Poly::variable(0)); }
  // s^k for any integer k; r^x = s_pow(2x).
  static Scalar s_pow(int k);
  static Scalar r() { return s_pow(2); }
  static Scalar lambda();
  static Scalar parse_rational(const std::string& text);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool is_monomial() const { return num_.is_monomial() && den_.is_monomial(); }

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
  Scalar inverse() const;
  Scalar pow(int k) const;
  bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::complex<double> evaluate(const std::vector<std::complex<double>>& point) const;
  std::complex<long double> evaluate(const std::vector<std::complex<long double>>& point) const;
  std::complex<double> evaluate(const ParamAssignment& a) const { return evaluate(a.point()); }

  // Value at s = 1 after cancellation; throws PoleAtClassicalPoint.
  Scalar limit_classical() const;
  // Order of vanishing at s = 1 (negative for a pole).
  int order_at_classical() const;
  Scalar substitute(const std::string& v, const mpq_class& x) const;

  nlohmann::json to_json() const;
  static Scalar from_json(const nlohmann::json& j);
  std::string str() const;

 private:
  void canonicalize();
  Poly num_, den_;
};

inline Scalar operator+(long a, const Scalar& b) { return Scalar(a) + b; }
inline Scalar operator-(long a, const Scalar& b) { return Scalar(a) - b; }
inline Scalar operator*(long a, const Scalar& b) { return Scalar(a) * b; }
inline Scalar operator/(long a, const Scalar& b) { return Scalar(a) / b; }

}  // namespace qg

#endif
