#ifndef QG_RMATRIX_HPP
#define QG_RMATRIX_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qg/report.hpp"
#include "qg/scalar.hpp"
#include "qg/tensor.hpp"

namespace qg {

struct SeriesSpec {
  char series = 'B';
  int N = 0;
  int n = 0;
  int n2 = 0;  // middle index, B series only (0 otherwise)
  int eps = 1;
  std::vector<int> eps_a;  // 1-based, eps_a[0] unused
  std::vector<int> rho2;   // twice rho_a, 1-based
  int prime(int a) const { return N + 1 - a; }
  bool orthogonal() const { return series != 'C'; }
};

SeriesSpec build_series(char series, int N);
std::string series_label(const SeriesSpec& s);

// Origin of q_{ab} in terms of the independent parameters: either fixed to r,
// or q_{ij} / r^2 q_{ij}^{-1} for an independent pair i < j <= N/2.
struct QSource {
  bool is_r = true;
  int i = 0, j = 0;
  bool inverted = false;
};
QSource q_source(const SeriesSpec& spec, int a, int b);
std::string q_name(int a, int b);
// Pairs (i, j), i < j <= N/2, of independent q_ij.
std::vector<std::pair<int, int>> independent_pairs(const SeriesSpec& spec);

template <class T>
struct ParamSet {
  SeriesSpec spec;
  std::vector<std::string> independent;
  std::vector<T> qtab;  // q_{ab} at (a-1)*N + (b-1)
  T s = T(1);
  std::vector<T> spow;  // s^k at index k + kPow
  static constexpr int kPow = 64;

  int N() const { return spec.N; }
  const T& q(int a, int b) const { return qtab[(a - 1) * spec.N + (b - 1)]; }
  T s_pow(int k) const {
    if (k >= -kPow && k <= kPow && !spow.empty()) return spow[k + kPow];
    return ipow(s, k);
  }
  T r() const { return s_pow(2); }
  T rinv() const { return s_pow(-2); }
  T lambda() const { return s_pow(2) - s_pow(-2); }

  static T ipow(const T& x, int k) {
    if (k < 0) return T(1) / ipow(x, -k);
    T acc(1), b = x;
    for (; k; k >>= 1, b = b * b)
      if (k & 1) acc = acc * b;
    return acc;
  }
  void fill_powers() {
    spow.assign(2 * kPow + 1, T(1));
    T inv = T(1) / s;
    for (int k = 1; k <= kPow; ++k) {
      spow[kPow + k] = spow[kPow + k - 1] * s;
      spow[kPow - k] = spow[kPow - k + 1] * inv;
    }
  }
};

struct ParamOptions {
  bool r_one = false;                    // set r = 1 exactly
  std::map<std::string, Scalar> fixed;   // values for independent q's
};

ParamSet<Scalar> make_params(const SeriesSpec& spec, const ParamOptions& opt = {});
// Uniparametric point q_{ab} = r.
ParamSet<Scalar> uniparametric_params(const SeriesSpec& spec);
// q_{ij} = r u_{ij}^{-2} with auxiliary u variables, so that every
// sqrt(r/q_{ab}) is a Laurent monomial.
ParamSet<Scalar> twist_params(const SeriesSpec& spec);
Scalar twist_sqrt(const SeriesSpec& spec, int a, int b);  // sqrt(r/q_ab) in the u variables
// Parameters of the N-2 dimensional subgroup obtained by dropping the first and last index.
ParamSet<Scalar> inner_params(const ParamSet<Scalar>& big);
ParamSet<Complex> numeric_params(const ParamSet<Scalar>& p, const std::vector<Complex>& point);
// Parameters with p_{ab} = q_{ba}.
template <class T>
ParamSet<T> transposed_params(const ParamSet<T>& p) {
  ParamSet<T> t = p;
  int N = p.N();
  for (int a = 1; a <= N; ++a)
    for (int b = 1; b <= N; ++b) t.qtab[(a - 1) * N + (b - 1)] = p.q(b, a);
  return t;
}
// Parameters q -> q^{-1}, r -> r^{-1}.
template <class T>
ParamSet<T> inverted_params(const ParamSet<T>& p) {
  ParamSet<T> t = p;
  for (auto& x : t.qtab) x = T(1) / x;
  t.s = T(1) / p.s;
  t.fill_powers();
  return t;
}

inline int pair_index(int M, int a, int b) { return (a - 1) * M + (b - 1); }

// R^{ab}_{cd} stored at index (a, b, c, d), from the component list.
template <class T>
SparseTensor<T> build_R(const ParamSet<T>& p) {
  const SeriesSpec& sp = p.spec;
  int N = sp.N;
  SparseTensor<T> R(4, N);
  T r = p.r(), rinv = p.rinv(), lam = p.lambda();
  for (int a = 1; a <= N; ++a) {
    for (int b = 1; b <= N; ++b) {
      int ap = sp.prime(a);
      if (a == b) {
        R.set({a, a, a, a}, (sp.n2 && a == sp.n2) ? T(1) : r);
      } else if (b == ap) {
        R.set({a, b, a, b}, rinv);
      } else {
        R.set({a, b, a, b}, r / p.q(a, b));
      }
      if (a > b && b != ap) R.set({a, b, b, a}, lam);
    }
  }
  for (int a = 1; a <= N; ++a) {
    int ap = sp.prime(a);
    if (a > ap) {
      T eps(sp.eps);
      R.set({a, ap, ap, a}, lam * (T(1) - eps * p.s_pow(sp.rho2[a] - sp.rho2[ap])));
    }
    for (int b = 1; b < a; ++b) {
      if (b == ap) continue;
      T sign(sp.eps_a[a] * sp.eps_a[b]);
      R.set({a, ap, b, sp.prime(b)}, -(lam * sign * p.s_pow(sp.rho2[a] - sp.rho2[b])));
    }
  }
  return R;
}

// R from the compact single-formula expression, including its Kronecker
// factor (1 - delta^{a n2}) taken literally.
template <class T>
SparseTensor<T> build_R_compact(const ParamSet<T>& p) {
  const SeriesSpec& sp = p.spec;
  int N = sp.N;
  SparseTensor<T> R(4, N);
  T r = p.r(), lam = p.lambda();
  for (int a = 1; a <= N; ++a)
    for (int b = 1; b <= N; ++b)
      for (int c = 1; c <= N; ++c)
        for (int d = 1; d <= N; ++d) {
          T v(0);
          if (a == c && b == d) {
            bool mid = sp.n2 && a == sp.n2;
            if (!mid) {
              T x = r / p.q(a, b);
              if (a == b) x = x + (r - T(1));
              if (a == sp.prime(b)) x = x + (p.rinv() - T(1));
              v = v + x;
            }
            if (sp.n2 && a == sp.n2 && b == sp.n2) v = v + T(1);
          }
          if (a > b && b == c && a == d) v = v + lam;
          if (a > c && sp.prime(a) == b && sp.prime(c) == d)
            v = v - lam * T(sp.eps_a[a] * sp.eps_a[c]) * p.s_pow(sp.rho2[a] - sp.rho2[c]);
          R.set({a, b, c, d}, v);
        }
  return R;
}

template <class T>
struct Metric {
  int M = 0;
  std::vector<std::vector<T>> lo, up, D;  // 1-based M+1 square
  std::vector<T> d;                       // d^A = D^A_A
  const T& C_lo(int a, int b) const { return lo[a][b]; }
  const T& C_up(int a, int b) const { return up[a][b]; }
};

template <class T>
Metric<T> build_metric(const ParamSet<T>& p) {
  const SeriesSpec& sp = p.spec;
  int M = sp.N;
  Metric<T> m;
  m.M = M;
  m.lo.assign(M + 1, std::vector<T>(M + 1, T(0)));
  m.up = m.lo;
  m.D = m.lo;
  m.d.assign(M + 1, T(0));
  for (int a = 1; a <= M; ++a) m.lo[a][sp.prime(a)] = T(sp.eps_a[a]) * p.s_pow(-sp.rho2[a]);
  // C^{a a'} = 1 / C_{a' a}
  for (int a = 1; a <= M; ++a) m.up[a][sp.prime(a)] = T(1) / m.lo[sp.prime(a)][a];
  for (int a = 1; a <= M; ++a)
    for (int b = 1; b <= M; ++b) {
      T acc(0);
      for (int f = 1; f <= M; ++f) acc = acc + m.up[a][f] * m.lo[b][f];
      m.D[a][b] = acc;
    }
  for (int a = 1; a <= M; ++a) m.d[a] = m.D[a][a];
  return m;
}

// Lookup tables for contracting R-like rank-4 tensors.
template <class T>
struct R4 {
  struct Entry {
    int x, y;
    T v;
  };
  int M = 0;
  std::vector<std::vector<Entry>> by_upper;  // (a,b) -> list of (c,d,val)
  std::vector<std::vector<Entry>> by_lower;  // (c,d) -> list of (a,b,val)
  R4() = default;
  explicit R4(const SparseTensor<T>& t) : M(t.dim()), by_upper(M * M), by_lower(M * M) {
    for (auto& [idx, v] : t.sorted()) {
      by_upper[pair_index(M, idx[0], idx[1])].push_back({idx[2], idx[3], v});
      by_lower[pair_index(M, idx[2], idx[3])].push_back({idx[0], idx[1], v});
    }
  }
  const std::vector<Entry>& up(int a, int b) const { return by_upper[pair_index(M, a, b)]; }
  const std::vector<Entry>& lo(int c, int d) const { return by_lower[pair_index(M, c, d)]; }
};

// Matrix on V (x) V with row (a,b) and column (c,d).
template <class T>
SparseMatrix<T> pair_matrix(const SparseTensor<T>& t) {
  int M = t.dim();
  SparseMatrix<T> m(M * M);
  for (auto& [k, v] : t.raw()) {
    Index i = t.unkey(k);
    m.set(pair_index(M, i[0], i[1]), pair_index(M, i[2], i[3]), v);
  }
  return m;
}

template <class T>
SparseTensor<T> pair_tensor(const SparseMatrix<T>& m, int M) {
  SparseTensor<T> t(4, M);
  for (int i = 0; i < m.size(); ++i)
    for (auto& [j, v] : m.row(i)) t.set({i / M + 1, i % M + 1, j / M + 1, j % M + 1}, v);
  return t;
}

// Rhat^{ab}_{cd} = R^{ba}_{cd}
template <class T>
SparseMatrix<T> build_Rhat(const SparseTensor<T>& R) {
  int M = R.dim();
  SparseMatrix<T> m(M * M);
  for (auto& [k, v] : R.raw()) {
    Index i = R.unkey(k);
    m.set(pair_index(M, i[1], i[0]), pair_index(M, i[2], i[3]), v);
  }
  return m;
}

template <class T>
SparseMatrix<T> build_K(const Metric<T>& m) {
  int M = m.M;
  SparseMatrix<T> K(M * M);
  for (int a = 1; a <= M; ++a)
    for (int c = 1; c <= M; ++c)
      K.set(pair_index(M, a, M + 1 - a), pair_index(M, c, M + 1 - c), m.up[a][M + 1 - a] * m.lo[c][M + 1 - c]);
  return K;
}

template <class T>
struct Projectors {
  SparseMatrix<T> PS, PA, P0, K;
  T QN = T(0);
};

// Closed form of (C_ab C^ab)^{-1}.
template <class T>
T QN_closed(const ParamSet<T>& p) {
  int e = p.spec.eps, N = p.spec.N;
  T eps(e);
  T r2 = p.s_pow(4);
  return (T(1) - r2) / ((T(1) - eps * p.s_pow(2 * (N + 1 - e))) * (T(1) + eps * p.s_pow(2 * (-N + 1 + e))));
}

// eps r^{eps - N}
template <class T>
T cubic_root(const ParamSet<T>& p) {
  return T(p.spec.eps) * p.s_pow(2 * (p.spec.eps - p.spec.N));
}

template <class T>
Projectors<T> build_projectors(const ParamSet<T>& p, const SparseMatrix<T>& Rhat, const Metric<T>& m) {
  Projectors<T> P;
  int M = p.N();
  P.K = build_K(m);
  T trace(0);
  for (int a = 1; a <= M; ++a)
    for (int b = 1; b <= M; ++b) trace = trace + m.lo[a][b] * m.up[a][b];
  P.QN = T(1) / trace;
  P.P0 = P.K.scaled(P.QN);
  auto I = SparseMatrix<T>::identity(M * M);
  T r = p.r(), rinv = p.rinv(), w = cubic_root(p);
  T norm = T(1) / (r + rinv);
  P.PS = (Rhat + I.scaled(rinv) - P.P0.scaled(rinv + w)).scaled(norm);
  P.PA = (Rhat.scaled(T(-1)) + I.scaled(r) - P.P0.scaled(r - w)).scaled(norm);
  return P;
}

// Left minus right side of the quantum Yang-Baxter equation, as a rank-6 tensor
// with index order (a1, b1, c1, a3, b3, c3).
template <class T>
SparseTensor<T> ybe_residual(const SparseTensor<T>& Rt) {
  R4<T> R(Rt);
  int M = Rt.dim();
  SparseTensor<T> res(6, M);
  for (int a1 = 1; a1 <= M; ++a1)
    for (int b1 = 1; b1 <= M; ++b1)
      for (int c1 = 1; c1 <= M; ++c1) {
        // R^{a1b1}_{a2b2} R^{a2c1}_{a3c2} R^{b2c2}_{b3c3}
        for (auto& e1 : R.up(a1, b1))
          for (auto& e2 : R.up(e1.x, c1)) {
            T v12 = e1.v * e2.v;
            for (auto& e3 : R.up(e1.y, e2.y)) res.add({a1, b1, c1, e2.x, e3.x, e3.y}, v12 * e3.v);
          }
        // R^{b1c1}_{b2c2} R^{a1c2}_{a2c3} R^{a2b2}_{a3b3}
        for (auto& e1 : R.up(b1, c1))
          for (auto& e2 : R.up(a1, e1.y)) {
            T v12 = e1.v * e2.v;
            for (auto& e3 : R.up(e2.x, e1.x)) res.add({a1, b1, c1, e3.x, e3.y, e2.y}, -(v12 * e3.v));
          }
      }
  return res;
}

std::string index_str(const Index& idx);

template <class T>
std::string first_witness(const SparseTensor<T>& t) {
  if (t.nnz() == 0) return "";
  auto s = t.sorted();
  std::string w = index_str(s.front().first);
  if constexpr (std::is_same_v<T, Scalar>) w += " residual " + s.front().second.str();
  return w;
}

template <class T>
std::string first_witness(const SparseMatrix<T>& m, int M) {
  int i, j;
  if (!m.first_nonzero(i, j)) return "";
  std::string w = "row (" + std::to_string(i / M + 1) + "," + std::to_string(i % M + 1) + ") col (" +
                  std::to_string(j / M + 1) + "," + std::to_string(j % M + 1) + ")";
  if constexpr (std::is_same_v<T, Scalar>) w += " residual " + m.get(i, j).str();
  return w;
}

struct RMatrixData {
  ParamSet<Scalar> params;
  Metric<Scalar> metric;
  SparseTensor<Scalar> R, Rinv;
  SparseMatrix<Scalar> Rhat, Rhat_inv;
  Projectors<Scalar> proj;
};

RMatrixData build_rmatrix_data(const ParamSet<Scalar>& p);

Report verify_rmatrix_suite(const RMatrixData& d);
Report twist_check(const SeriesSpec& spec);
Report verify_block_decomposition(const ParamSet<Scalar>& big);
Report compare_compact_formula(const ParamSet<Scalar>& p);

}  // namespace qg

#endif
