#ifndef QG_CALCULUS_HPP
#define QG_CALCULUS_HPP

#include <array>
#include <random>
#include <string>
#include <vector>

#include "qg/pairing.hpp"
#include "qg/relations.hpp"
#include "qg/rmatrix.hpp"

namespace qg {

// Adjoint index of omega^{A1}_{A2}: (A1-1)*M + (A2-1). Pairs of adjoint
// indices (i, j) are flattened as i*M^2 + j.
inline int adj_index(int M, int a1, int a2) { return (a1 - 1) * M + (a2 - 1); }

// z = eps r^{M - eps}
template <class T>
T calculus_z(const ParamSet<T>& p) {
  return T(p.spec.eps) * p.s_pow(2 * (p.N() - p.spec.eps));
}

// Contraction pattern shared by Lambda and (P_I, P_J):
//   d^{F2} / d^{C2} W^{F2B1}_{C2G1} X^{C1G1}_{E1A1} Y^{A2E1}_{G2D1} Z^{G2D2}_{B2F2}
// stored at row (A1A2, D1D2), column (C1C2, B1B2).
template <class T>
SparseMatrix<T> adjoint_braid(const SparseTensor<T>& W, const SparseTensor<T>& X, const SparseTensor<T>& Y,
                              const SparseTensor<T>& Z, const Metric<T>& m) {
  int M = m.M, n = M * M;
  using E = std::array<int, 4>;
  std::vector<std::vector<std::pair<E, T>>> x_lo0(M + 1), w_lo1(M + 1);
  std::vector<std::vector<std::pair<E, T>>> z_up0lo1((M + 1) * (M + 1));
  for (auto& [k, v] : X.raw()) {
    Index i = X.unkey(k);
    x_lo0[i[2]].push_back({{i[0], i[1], i[2], i[3]}, v});
  }
  for (auto& [k, v] : W.raw()) {
    Index i = W.unkey(k);
    w_lo1[i[3]].push_back({{i[0], i[1], i[2], i[3]}, v});
  }
  for (auto& [k, v] : Z.raw()) {
    Index i = Z.unkey(k);
    z_up0lo1[i[0] * (M + 1) + i[3]].push_back({{i[0], i[1], i[2], i[3]}, v});
  }
  std::vector<T> dinv(M + 1);
  for (int a = 1; a <= M; ++a) dinv[a] = T(1) / m.d[a];
  SparseMatrix<T> out(n * n);
  for (auto& [ky, vy] : Y.raw()) {
    Index yi = Y.unkey(ky);
    int A2 = yi[0], E1 = yi[1], G2 = yi[2], D1 = yi[3];
    for (auto& [xi, vx] : x_lo0[E1]) {
      int C1 = xi[0], G1 = xi[1], A1 = xi[3];
      T vxy = vx * vy;
      int rowA = adj_index(M, A1, A2);
      for (auto& [wi, vw] : w_lo1[G1]) {
        int F2 = wi[0], B1 = wi[1], C2 = wi[2];
        T vwxy = vw * vxy * m.d[F2] * dinv[C2];
        int colC = adj_index(M, C1, C2);
        for (auto& [zi, vz] : z_up0lo1[G2 * (M + 1) + F2]) {
          int D2 = zi[1], B2 = zi[2];
          out.add(rowA * n + adj_index(M, D1, D2), colC * n + adj_index(M, B1, B2), vwxy * vz);
        }
      }
    }
  }
  return out;
}

template <class T>
SparseMatrix<T> build_Lambda(const SparseTensor<T>& R, const SparseTensor<T>& Rinv, const Metric<T>& m) {
  return adjoint_braid(R, Rinv, Rinv, R, m);
}

// R^{F1B1}_{A1G1} R^{-1 A2G1}_{E2D1} R^{-1 D2E2}_{G2C2} R^{G2C1}_{B2F1} d^{F1} / d^{C1}
// at row (A1A2, D1D2), column (B1B2, C1C2).
template <class T>
SparseMatrix<T> build_Lambda_inverse(const SparseTensor<T>& R, const SparseTensor<T>& Rinv, const Metric<T>& m) {
  int M = m.M, n = M * M;
  using E = std::array<int, 4>;
  std::vector<std::vector<std::pair<E, T>>> r_lo1(M + 1), rinv_up1(M + 1);
  std::vector<std::vector<std::pair<E, T>>> r_up0lo1((M + 1) * (M + 1));
  for (auto& [k, v] : R.raw()) {
    Index i = R.unkey(k);
    E e{i[0], i[1], i[2], i[3]};
    r_lo1[i[3]].push_back({e, v});
    r_up0lo1[i[0] * (M + 1) + i[3]].push_back({e, v});
  }
  for (auto& [k, v] : Rinv.raw()) {
    Index i = Rinv.unkey(k);
    rinv_up1[i[1]].push_back({{i[0], i[1], i[2], i[3]}, v});
  }
  SparseMatrix<T> out(n * n);
  for (auto& [k2, v2] : Rinv.raw()) {
    Index b = Rinv.unkey(k2);
    int A2 = b[0], G1 = b[1], E2 = b[2], D1 = b[3];
    for (auto& [a, v1] : r_lo1[G1]) {
      int F1 = a[0], B1 = a[1], A1 = a[2];
      T v12 = v1 * v2 * m.d[F1];
      for (auto& [c, v3] : rinv_up1[E2]) {
        int D2 = c[0], G2 = c[2], C2 = c[3];
        T v123 = v12 * v3;
        for (auto& [e, v4] : r_up0lo1[G2 * (M + 1) + F1]) {
          int C1 = e[1], B2 = e[2];
          out.add(adj_index(M, A1, A2) * n + adj_index(M, D1, D2), adj_index(M, B1, B2) * n + adj_index(M, C1, C2),
                  v123 * v4 / m.d[C1]);
        }
      }
    }
  }
  return out;
}

// Matrix P as a rank-4 tensor, optionally exchanging the two lower or upper indices.
template <class T>
SparseTensor<T> matrix_as_tensor(const SparseMatrix<T>& P, int M, bool swap_upper, bool swap_lower) {
  SparseTensor<T> t(4, M);
  for (int i = 0; i < P.size(); ++i)
    for (auto& [j, v] : P.row(i)) {
      int a = i / M + 1, b = i % M + 1, c = j / M + 1, d = j % M + 1;
      if (swap_upper) std::swap(a, b);
      if (swap_lower) std::swap(c, d);
      t.set({a, b, c, d}, v);
    }
  return t;
}

// (P_I, P_J) = d^{f2} d^{-1}_{c2} Rhat^{b1f2}_{c2g1} P_I^{c1g1}_{a1e1} Rhat^{-1 a2e1}_{d1g2} P_J^{d2g2}_{b2f2}
template <class T>
SparseMatrix<T> build_PIPJ(const SparseMatrix<T>& PI, const SparseMatrix<T>& PJ, const SparseTensor<T>& R,
                           const SparseTensor<T>& Rinv, const Metric<T>& m) {
  int M = m.M;
  return adjoint_braid(R, matrix_as_tensor(PI, M, false, true), Rinv, matrix_as_tensor(PJ, M, true, false), m);
}

// X^{A1B1}_{A2B2} = z K - Rhat^{-1}, stored at row (A1A2), column (B1B2).
template <class T>
SparseMatrix<T> build_X(const ParamSet<T>& p, const SparseTensor<T>& Rinv, const Metric<T>& m) {
  int M = m.M;
  T z = calculus_z(p);
  SparseMatrix<T> X(M * M);
  for (int a1 = 1; a1 <= M; ++a1)
    for (int a2 = 1; a2 <= M; ++a2)
      X.add(adj_index(M, a1, a2), adj_index(M, M + 1 - a1, M + 1 - a2), z * m.up[a1][M + 1 - a1] * m.lo[a2][M + 1 - a2]);
  // Rhat^{-1 ab}_{cd} = R^{-1 ab}_{dc}
  for (auto& [k, v] : Rinv.raw()) {
    Index i = Rinv.unkey(k);
    X.add(adj_index(M, i[0], i[3]), adj_index(M, i[1], i[2]), -v);
  }
  return X;
}

// Y_{A1B1}^{A2B2} stored at row (A1A2), column (B1B2).
template <class T>
SparseMatrix<T> build_Y(const ParamSet<T>& p, const SparseTensor<T>& R, const Metric<T>& m) {
  int M = m.M;
  T z = calculus_z(p), lam = p.lambda();
  T alpha = T(1) / (z * (z - T(1) / z - lam));
  T third = lam / (z * (z - T(1) / z));
  SparseMatrix<T> Y(M * M);
  for (int a1 = 1; a1 <= M; ++a1)
    for (int a2 = 1; a2 <= M; ++a2) {
      int b1 = M + 1 - a1, b2 = M + 1 - a2;
      Y.add(adj_index(M, a1, a2), adj_index(M, b1, b2), alpha * (z - lam) * m.lo[a1][b1] * m.up[a2][b2]);
      // D diagonal: D^{A2}_{A1} (D^{-1})^{B2}_{B1}
      if (a1 == a2)
        for (int b = 1; b <= M; ++b) Y.add(adj_index(M, a1, a1), adj_index(M, b, b), -(alpha * third * m.d[a1] / m.d[b]));
    }
  // C_{A1D} R^{DA2}_{CB1} C^{CB2}
  for (auto& [k, v] : R.raw()) {
    Index i = R.unkey(k);
    int D = i[0], A2 = i[1], C = i[2], B1 = i[3];
    int A1 = M + 1 - D, B2 = M + 1 - C;
    Y.add(adj_index(M, A1, A2), adj_index(M, B1, B2), alpha * m.lo[A1][D] * v * m.up[C][B2]);
  }
  return Y;
}

// Eigenvalues of Lambda, in the order of the seven factors.
template <class T>
std::vector<T> lambda_spectrum(const ParamSet<T>& p) {
  int e = p.spec.eps, M = p.N();
  T eps(e);
  return {-p.s_pow(4), -p.s_pow(-4), -eps * p.s_pow(2 * (e + 1 - M)), -eps * p.s_pow(2 * (-e - 1 + M)),
          eps * p.s_pow(2 * (-e + 1 + M)), eps * p.s_pow(2 * (e - 1 - M)), T(1)};
}

// Row `row` of prod_k (Lambda - c_k I), applied left to right.
template <class T>
typename SparseMatrix<T>::Row spectral_row(const SparseMatrix<T>& L, const std::vector<T>& spec, int row) {
  typename SparseMatrix<T>::Row v{{row, T(1)}};
  for (auto& c : spec) {
    auto w = SparseMatrix<T>::row_times(v, L);
    for (auto& [j, x] : v) {
      auto it = w.find(j);
      T val = (it == w.end() ? T(0) : it->second) - c * x;
      if (is_zero(val)) {
        if (it != w.end()) w.erase(it);
      } else {
        w[j] = val;
      }
    }
    v = std::move(w);
    if (v.empty()) break;
  }
  return v;
}

// C_{jk}^i = lambda^{-1} [-delta^{B1}_{B2} delta^{A1}_{C1} delta^{C2}_{A2} + sum_B Lambda^{(BB) i}_{j k}]
// with j = (A1,A2), k = (B1,B2), i = (C1,C2); stored at row j*n + k, column i.
template <class T>
SparseMatrix<T> build_structure_C(const SparseMatrix<T>& L, const ParamSet<T>& p) {
  int M = p.N(), n = M * M;
  T li = T(1) / p.lambda();
  SparseMatrix<T> C(n * n);
  for (int b = 1; b <= M; ++b)
    for (int i = 0; i < n; ++i)
      for (auto& [col, v] : L.row(adj_index(M, b, b) * n + i)) C.add(col, i, v * li);
  for (int j = 0; j < n; ++j)
    for (int bb = 1; bb <= M; ++bb) C.add(j * n + adj_index(M, bb, bb), j, -li);
  return C;
}

// c_{jk}^i = 2/lambda [Z^{(BB) i}_{j k} - delta^{A1}_{C1} delta^{C2}_{A2} delta^{B1}_{B2}],
// from d omega = lambda^{-1}(tau ^ omega + omega ^ tau) after flipping tau ^ omega with Z.
template <class T>
SparseMatrix<T> build_cartan_maurer(const SparseMatrix<T>& Z, const ParamSet<T>& p) {
  int M = p.N(), n = M * M;
  T k = T(2) / p.lambda();
  SparseMatrix<T> c(n * n);
  for (int b = 1; b <= M; ++b)
    for (int i = 0; i < n; ++i)
      for (auto& [col, v] : Z.row(adj_index(M, b, b) * n + i)) c.add(col, i, v * k);
  for (int j = 0; j < n; ++j)
    for (int bb = 1; bb <= M; ++bb) c.add(j * n + adj_index(M, bb, bb), j, -k);
  return c;
}

struct CalculusData {
  int M = 0, n = 0;
  ParamSet<Scalar> params;
  Scalar z;
  SparseMatrix<Scalar> X, Y;  // Y is empty at r = 1
  SparseMatrix<Scalar> Lambda, LambdaInv;
  SparseMatrix<Scalar> C;  // row j*n + k, column i; empty at r = 1 where it has a pole
  // Filled by build_calculus when with_projectors is set.
  bool has_projectors = false;
  std::vector<SparseMatrix<Scalar>> PIPJ;  // index 3*I + J over (S, A, 0)
  SparseMatrix<Scalar> Z, c;
};

CalculusData build_calculus(const RMatrixData& d, bool with_projectors);

// Residual tensors of the four bicovariant-algebra identities; empty witness means zero.
struct BicovResult {
  std::string name;
  bool pass = true;
  std::string witness;
  std::size_t checked = 0;
};
// Full check over all adjoint tuples; `sample` > 0 restricts the q-Jacobi
// identity to that many random (r, i, j) triples drawn with `rng`.
std::vector<BicovResult> check_bicovariant_algebra(const CalculusData& cd, std::size_t sample = 0,
                                                   std::mt19937_64* rng = nullptr);

struct CalculusCheckOptions {
  std::size_t spectral_rows = 0;  // 0: every row
  unsigned seed = 1;
  bool projector_products = true;  // the 81 products (P_I,P_J)(P_K,P_L)
  bool pairing_reps = true;        // q-Lie algebra on rho_1, rho_2 (M <= 4)
};

Report verify_calculus_suite(const RMatrixData& d, const CalculusData& cd, const PairingData* pairing,
                             const CalculusCheckOptions& opt = {});
// Spectral check over given rows (all rows if rows is empty).
Check spectral_check(const CalculusData& cd, const std::vector<int>& rows);
// d T^A_B = T^A_C X^{CR}_{BS} omega^R_S
RelationSet exterior_derivative_on_T(const CalculusData& cd);
// omega^{A1}_{A2} T^R_S = R^{-1 TB1}_{CA1} R^{-1 A2C}_{B2S} T^R_T omega^{B1}_{B2}
RelationSet omega_T_commutations(const RMatrixData& d);
// omega^i ^ omega^j = -Z^{ij}_{kl} omega^k ^ omega^l
RelationSet omega_wedge_relations(const CalculusData& cd);
RelationSet qlie_algebra(const CalculusData& cd);
RelationSet cartan_maurer(const CalculusData& cd);

std::string adj_str(int M, int i);

}  // namespace qg

#endif
