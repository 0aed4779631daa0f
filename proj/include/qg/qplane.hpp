#ifndef QG_QPLANE_HPP
#define QG_QPLANE_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qg/iso.hpp"

namespace qg {

// Plane elements are ISOWords in the x^a only; coefficients of one-forms are
// ISOWords in T, x, v (the flat vielbein V^c carries T's).

// x^{l1} ... x^{lk} in normal form.
ISOWord plane_monomial(const ISOParams& iso, const std::vector<int>& letters, const Scalar& c = Scalar(1));
// Throws ConfigError on letters other than x^a.
ISOWord plane_normal_form(const ISOWord& w, const ISOParams& iso);

// chi_c * a through chi_c * x^a = -q_{c*} T^a_c and the Leibniz rule
// chi_c * (ab) = (chi_c * a)(f^c_c * b) + a (chi_c * b), f^c_c * x^a = q_{c*} x^a.
ISOWord chi_on_plane(const ISOParams& iso, int c, const ISOWord& a);
// chi_c(a) = eps(chi_c * a)
Scalar chi_value(const ISOParams& iso, int c, const ISOWord& a);

// da = sum_c (chi_c * a) V^c, keyed by c.
using VForm = std::map<int, ISOWord>;
// sum_s p_s dx^s with left coefficients, keyed by s.
using DxForm = std::map<int, ISOWord>;
// sum_{s<t} p_st dx^s ^ dx^t.
using DxTwoForm = std::map<std::pair<int, int>, ISOWord>;

VForm exterior_d_plane(const ISOParams& iso, const ISOWord& a);
// Solves w_c = -q_{c*} sum_s p_s T^s_c; throws NonReducible if w is not of that form.
DxForm to_dx(const ISOParams& iso, const VForm& w);
DxTwoForm exterior_d_dx(const ISOParams& iso, const DxForm& f);

enum class Side { left, right };
// left:  d_s(x^a) = delta, d_s(b x^a) = b delta + q_sa d_s(b) x^a   (da = d_s(a) dx^s)
// right: d_s(x^a) = delta, d_s(x^a b) = delta b + q_as x^a d_s(b)  (da = dx^s d_s(a))
ISOWord partial_derivative(const ISOParams& iso, Side side, int s, const ISOWord& a);

// Checks on words up to max_len: chi^b_c * a = 0 and the Leibniz rule against
// the coproduct (length 2, from the limit functionals), d^2 = 0, both derivative
// expansions of da, derivative commutations, covariance of the plane relations.
Report verify_plane(const ISOParams& iso, int max_len = 4, unsigned seed = 1);

// Q(i, sqrt2) over Scalar: a + b sqrt2 + c i + d i sqrt2.
struct QExt {
  Scalar a, b, c, d;
  QExt() = default;
  QExt(const Scalar& x) : a(x) {}
  QExt(const Scalar& a_, const Scalar& b_, const Scalar& c_, const Scalar& d_) : a(a_), b(b_), c(c_), d(d_) {}
  QExt operator+(const QExt& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
  QExt operator-(const QExt& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  QExt operator-() const { return {-a, -b, -c, -d}; }
  QExt operator*(const QExt& o) const;
  QExt& operator+=(const QExt& o) { return *this = *this + o; }
  bool operator==(const QExt& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
  bool operator!=(const QExt& o) const { return !(*this == o); }
  bool is_zero() const { return a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero(); }
  // complex conjugation, with the parameters treated as real
  QExt conj() const { return {a, b, -c, -d}; }
  std::string str() const;
};

// xi = S x for even N = 2n; the metric at q = 1 in the xi basis.
struct XiBasis {
  int N = 0, n = 0;
  std::vector<std::vector<QExt>> S, Sinv;  // 1-based
  std::vector<std::vector<QExt>> metric;   // Sinv^T C Sinv
  std::vector<int> signature;              // diagonal entries of metric, 1-based
  bool diagonal = false;
  bool inverse_ok = false;  // S Sinv = I
  bool real = false;        // conj(S) D = S, D the n <-> n+1 exchange
};

XiBasis xi_basis(int N);
// x^a x^b - q_ab x^b x^a (a < b) rewritten in the xi; JSON list of terms.
nlohmann::json xi_relations(const ISOParams& iso, const XiBasis& xb);

// Coordinates, vielbein, differentials, derivatives and the xi map.
nlohmann::json export_plane(const ISOParams& iso);

}  // namespace qg

#endif
