#ifndef QG_PAIRING_HPP
#define QG_PAIRING_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qg/report.hpp"
#include "qg/rmatrix.hpp"

namespace qg {

// T^C_D as (C, D), 1-based.
using Letter = std::pair<int, int>;
using Word = std::vector<Letter>;
// Free-algebra element: word -> coefficient. The empty word is I.
using GroupWord = std::map<Word, Scalar>;
// Element of A (x) ... (x) A, one word per tensor slot.
using MultiWord = std::map<std::vector<Word>, Scalar>;

GroupWord gw_letter(int c, int d);
GroupWord gw_identity();
void gw_add(GroupWord& acc, const GroupWord& x, const Scalar& c = Scalar(1));
GroupWord gw_mul(const GroupWord& a, const GroupWord& b);
std::string word_str(const Word& w);

Scalar counit(const Word& w);
Scalar counit(const GroupWord& w);
// Delta(T^A_B) = T^A_C (x) T^C_B, extended multiplicatively.
MultiWord coproduct(const GroupWord& w, int M);
// kappa(T^a_b) = C^{ac} T^d_c C_{db}, antimultiplicative.
GroupWord antipode(const GroupWord& w, const Metric<Scalar>& m);

// A family of functionals phi^i_j (i, j flattened, 0-based) that is
// multiplicative in the sense phi^i_j(ab) = phi^i_k(a) phi^k_j(b).
struct FunctionalFamily {
  std::string name;
  int M = 0, n = 0;
  std::vector<SparseMatrix<Scalar>> gen;  // by letter (C-1)*M + (D-1)

  const SparseMatrix<Scalar>& on_letter(int c, int d) const { return gen[(c - 1) * M + (d - 1)]; }
  // phi^i_j(w) for all i, j.
  SparseMatrix<Scalar> on_word(const Word& w) const;
  Scalar eval(int i, int j, const Word& w) const;
  Scalar eval(int i, int j, const GroupWord& w) const;
  // rho_k(phi^i_j) for all i, j: the M^k x M^k matrix of values on length-k
  // words, rows = upper index tuple, columns = lower index tuple.
  std::vector<SparseMatrix<Scalar>> rep(int k) const;
};

struct PairingData {
  int M = 0;
  ParamSet<Scalar> params;
  Metric<Scalar> metric;
  SparseTensor<Scalar> R, Rinv;
  FunctionalFamily Lp, Lm;  // index A-1, B-1
  FunctionalFamily f;       // adjoint indices (A1-1)*M + (A2-1)
  Scalar lambda;

  int adj(int a1, int a2) const { return (a1 - 1) * M + (a2 - 1); }
  Scalar Lplus(int a, int b, const Word& w) const { return Lp.eval(a - 1, b - 1, w); }
  Scalar Lminus(int a, int b, const Word& w) const { return Lm.eval(a - 1, b - 1, w); }
  // chi_j(w) for all adjoint j: lambda^{-1} [sum_C f^{CC}_j(w) - delta_j eps(w)].
  std::vector<Scalar> chi_on_word(const Word& w) const;
  Scalar chi(int a, int b, const Word& w) const { return chi_on_word(w)[adj(a, b)]; }
  Scalar chi(int a, int b, const GroupWord& w) const;
  // rho_k(chi_j) for all j.
  std::vector<SparseMatrix<Scalar>> chi_rep(int k) const;
};

PairingData build_pairing(const RMatrixData& d);

// M_k^j = T^{k1}_{j1} kappa(T^{j2}_{k2}) with k = (k1, k2), j = (j1, j2).
GroupWord adjoint_M(const PairingData& p, int k1, int k2, int j1, int j2);

Report verify_hopf_axioms(const PairingData& p);
Report verify_RLL_CLL(const PairingData& p, int maxlen = 2);

}  // namespace qg

#endif
