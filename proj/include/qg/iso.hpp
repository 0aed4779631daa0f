#ifndef QG_ISO_HPP
#define QG_ISO_HPP

#include <compare>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qg/classical_limit.hpp"

namespace qg {

// ISO_{q,r}(N) as SO_{q,r}(N+2) with o -> 1, a -> a+1, * -> M = N+2.
// Parameters are renamed to the N-index ones: q_ab stays "qab" and q_{a*} is
// "qab" with a trailing b, e.g. q1b. q_{a*} = r^2 / q_{a'*}.
struct ISOOptions {
  bool r_one = true;
  bool dilatation_free = false;  // q_{a*} = 1, needs r = 1
  bool symplectic = false;       // ISp: parameters and real forms only
  std::map<std::string, Scalar> fixed;  // by ISO name
};

struct ISOParams {
  int N = 0, M = 0;
  bool r_one = true, dilatation_free = false, symplectic = false;
  ParamSet<Scalar> big;
  ParamOptions big_opt;            // reproduces big; r_one is set as requested
  std::vector<std::string> names;  // free ISO parameter names

  int up(int a) const { return a + 1; }
  const Scalar& q(int a, int b) const { return big.q(a + 1, b + 1); }
  const Scalar& qb(int a) const { return big.q(a + 1, M); }
  int prime(int a) const { return N + 1 - a; }
};

ISOParams make_iso_params(int N, const ISOOptions& opt = {});
// Big independent parameter name -> ISO name.
std::string iso_param_name(int i, int j);

// chi^a_b (a' < b) and chi_b = chi^*_b; Omega^a_b and V^b.
struct ISOGenerator {
  bool translation = false;
  int a = 0, b = 0;  // rotation (a, b); translation has a = 0
  int big = 0;       // adjoint index in SO(N+2)
  std::string chi_name() const;
  std::string form_name() const;
};

struct ISOBasis {
  int N = 0, M = 0;
  std::vector<ISOGenerator> gens;  // rotations in (a, b) order, then translations
  std::map<int, int> pos;          // big adjoint index -> position
  int size() const { return static_cast<int>(gens.size()); }
  bool contains_big(int k) const { return pos.count(k) > 0; }
};

ISOBasis iso_basis(int N);

// Words in T^a_b, x^a, u, v (y_a, z accepted and eliminated).
enum class ISOKind { T, x, u, v, y, z };
struct ISOLetter {
  ISOKind kind = ISOKind::T;
  int a = 0, b = 0;
  auto operator<=>(const ISOLetter&) const = default;
};
using ISOProduct = std::vector<ISOLetter>;
using ISOWord = std::map<ISOProduct, Scalar>;

ISOLetter iso_T(int a, int b);
ISOLetter iso_x(int a);
ISOLetter iso_u();
ISOLetter iso_v();
ISOLetter iso_y(int a);
ISOLetter iso_z();
std::string iso_letter_str(const ISOLetter& l);
std::string iso_product_str(const ISOProduct& p);
// SO(N+2) letter T^C_D; nullopt for the ideal generators T^a_o, T^*_b, T^*_o.
std::optional<ISOLetter> iso_from_big(int N, int c, int d);
std::pair<int, int> iso_to_big(int N, const ISOLetter& l);

// Ordered monomials: T's by (row, column), x's ascending, then v^k (u = v^-1),
// at r = 1 where every relation is a phase. With rng the adjacent commutations
// are applied in random order instead.
ISOWord normal_form(const ISOWord& w, const ISOParams& iso, std::mt19937* rng = nullptr);
ISOWord iso_mul(const ISOWord& a, const ISOWord& b);
void iso_add(ISOWord& acc, const ISOWord& x, const Scalar& c = Scalar(1));
std::string iso_word_str(const ISOWord& w);

using ISOTensor = std::map<std::pair<ISOProduct, ISOProduct>, Scalar>;
ISOTensor iso_coproduct(const ISOWord& w, const ISOParams& iso);
Scalar iso_counit(const ISOWord& w);
ISOWord iso_antipode(const ISOWord& w, const ISOParams& iso);

// M_-^alpha_beta for greek positions in iso_basis(N).
ISOWord iso_M_minus(const ISOParams& iso, const ISOBasis& basis, int beta, int alpha);

struct ISOAlgebra {
  ISOBasis basis;
  // chi_i chi_j - lambda[i][j] chi_j chi_i = sum_k C[i * g + j][k] chi_k
  std::vector<std::vector<Scalar>> lambda;
  std::vector<std::map<int, Scalar>> C;
  std::string closure_witness;  // first non-greek tangent vector produced, if any
};

ISOAlgebra iso_structure(const ISOParams& iso);
RelationSet build_iso_lie_algebra(const ISOParams& iso);

// C_ri^n C_nj^s - lambda_ij C_rj^n C_ni^s = C_ij^k C_rk^s
Check q_jacobi(const std::vector<std::vector<Scalar>>& lambda, const std::vector<std::map<int, Scalar>>& C,
               const std::vector<std::string>& names);

struct ISOCalculus {
  ISOAlgebra algebra;
  RelationSet lie, commutations, dT, wedge, cartan_maurer, conjugation;
  // dOmega^alpha on Omega^beta ^ Omega^gamma with beta < gamma
  std::vector<std::map<std::pair<int, int>, Scalar>> dOmega;
  nlohmann::json to_json(const ISOParams& iso) const;
};

ISOCalculus build_iso_calculus(const ISOParams& iso);

// Theorem-level checks on the projection: ideal annihilation at r = 1 on words
// up to word_len, and at generic r the expected failure of f^{**}_{ab}.
Report verify_annihilation(const ISOParams& iso, int word_len = 2, bool throw_on_failure = false);
// Closure, q-Jacobi, C = Cartan-Maurer constants, M_- coproduct, u centrality.
Report verify_iso_calculus(const ISOParams& iso, const ISOCalculus& calc);

enum class RealForm { SO_nn, SO_nn1, Sp_n, SO_n1n1, Poincare, PoincareDilatationFree };
RealForm parse_real_form(const std::string& s);
std::string real_form_name(RealForm f);
// Values keyed by ISO name and "r"; missing free parameters are an error.
Report check_real_form(const ISOParams& iso, RealForm form, const ParamAssignment& a, bool throw_on_violation = false);

// Dilatation-free q-Poincare: N = 4, q_{a*} = 1, r = 1, q12 symbolic unless given.
ISOParams poincare_params(const std::optional<Scalar>& q12 = std::nullopt);
nlohmann::json poincare_export(const std::optional<Scalar>& q12 = std::nullopt);

}  // namespace qg

#endif
