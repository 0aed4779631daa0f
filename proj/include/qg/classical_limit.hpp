#ifndef QG_CLASSICAL_LIMIT_HPP
#define QG_CLASSICAL_LIMIT_HPP

#include <map>
#include <string>
#include <vector>

#include "qg/calculus.hpp"
#include "qg/pairing.hpp"
#include "qg/relations.hpp"

namespace qg {

// Tangent vectors and one-forms surviving at r = 1.
struct TwistedBasis {
  SeriesSpec spec;
  int M = 0, n = 0;
  ParamSet<Scalar> p1;  // r = 1, q symbolic
  // (A, B) with A' < B (SO) or A' <= B (Sp)
  std::vector<std::pair<int, int>> independent;
  // chi^A_B = rep_coeff * chi_{rep} and Omega^A_B = omega_coeff * Omega_{rep};
  // rep = -1 when both vanish at r = 1.
  std::vector<int> rep;
  std::vector<Scalar> rep_coeff, omega_coeff;
  // lim chi_k on all words of length 1 .. word_len
  int word_len = 1;
  std::map<Word, std::vector<Scalar>> chi;
  std::vector<SparseMatrix<Scalar>> f1;  // lim f^i_j on letter (C-1)*M + (D-1)
  int rank = 0;  // rank of the table of lim chi on generators

  bool is_independent(int a, int b) const;
};

// A vector over all adjoint indices rewritten in the independent chi (omega = false)
// or Omega (omega = true); indices vanishing at r = 1 are dropped.
std::map<int, Scalar> reduce_to_independent(const TwistedBasis& t, const std::map<int, Scalar>& v, bool omega);

TwistedBasis limit_chi_basis(const PairingData& p, int word_len = 1);
// Independent set, rep map and coefficients only; no functionals.
TwistedBasis twisted_basis(const ParamSet<Scalar>& p1);
// Index exchange n <-> n+1 of the D-series real form; identity otherwise.
int conj_index(const SeriesSpec& s, int a);
// (chi^A_B)* = phase chi^{sA}_{sB}, (Omega^A_B)* = phase Omega^{sA}_{sB} at r = 1.
Scalar chi_conj_phase(const ParamSet<Scalar>& p1, int a, int b);
Scalar omega_conj_phase(const ParamSet<Scalar>& p1, int a, int b);
// chi^{B'}_{A'} = -(eps_A eps_B / q_BA) chi^A_B, chi^A_A = -chi^{A'}_{A'},
// chi^A_{A'} = 0 for SO, the independent count and the rank of the table.
Report verify_limit_chi(const TwistedBasis& t);
// chi* against conj chi(kappa(a*)) at a real-form point, and d(a*) = (da)* on T.
Report verify_conjugation(const TwistedBasis& t);

// Orders of vanishing in (s - 1) of L+-, f on generators.
Report verify_order_relations(const PairingData& p);

// Closed-form r = 1 objects built directly from q_AB and the r = 1 metric.
struct OmegaCalculus {
  int M = 0, n = 0;
  ParamSet<Scalar> p1;
  Metric<Scalar> metric;
  SparseMatrix<Scalar> Lambda;  // same layout as CalculusData::Lambda
  SparseMatrix<Scalar> X;       // dT^A_B = T^A_C X^{CR}_{BS} omega^R_S
  SparseMatrix<Scalar> C;       // q-Lie algebra constants, row i*n + j, column k
  // d Omega^A_B and Omega ^ Omega expanded in omega (x) omega: row (A,B), column m*n + l
  SparseMatrix<Scalar> cartan_maurer_tensor;
  // bimodule: f^{(A,B)}_{(A,B)}(T^C_D), the only surviving entries of f on generators
  RelationSet dT, bimodule, omega_T, qlie, cartan_maurer, wedge, conjugation;

  nlohmann::json to_json() const;
};

OmegaCalculus build_Omega_calculus(const SeriesSpec& spec, const ParamOptions& opt = {});

// Omega^A_B as a vector over omega: omega^{(A,B)} - eps_A eps_B q_AB omega^{(B',A')}.
std::map<int, Scalar> omega_expansion(const ParamSet<Scalar>& p1, int a, int b);

// Entrywise r -> 1 limits of the generic-r calculus against the closed forms.
// cd must be built with projectors.
Report crosscheck_limits(const CalculusData& cd, const TwistedBasis& t, const OmegaCalculus& oc);

// chi_i * b = (b * chi_j) kappa(M_i^j) on words up to length 2, checked in the
// equivalent antipode-free form
//   sum_{i1} b_1 chi_{(i1,y)}(b_2) T^{j1}_{i1} = sum_{j2} chi_{(j1,j2)}(b_1) b_2 T^{j2}_y
// modulo the r = 1 commutation relations; plus the P_- identities for SO.
Report theorem61_check(const TwistedBasis& t);

// q-antisymmetric projector, row j = (A,B), column i = (C,D):
// 1/2 (delta^A_C delta^D_B - q_{BA} delta^{B'}_C delta^D_{A'}).
SparseMatrix<Scalar> q_antisymmetrizer(const ParamSet<Scalar>& p1);

// Ordered monomials of T's at r = 1, where T^{B1}_{A1} T^{B2}_{A2} = q_{B1B2}/q_{A1A2} T^{B2}_{A2} T^{B1}_{A1}.
GroupWord twisted_normal_form(const GroupWord& w, const ParamSet<Scalar>& p1);

}  // namespace qg

#endif
