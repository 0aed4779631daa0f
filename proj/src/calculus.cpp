#include "qg/calculus.hpp"

#include <algorithm>
#include <set>

#include "qg/errors.hpp"

namespace qg {

std::string adj_str(int M, int i) { return "(" + std::to_string(i / M + 1) + "," + std::to_string(i % M + 1) + ")"; }

namespace {

using Row = SparseMatrix<Scalar>::Row;

SparseMatrix<Scalar> transpose(const SparseMatrix<Scalar>& a) {
  SparseMatrix<Scalar> t(a.size());
  for (int i = 0; i < a.size(); ++i)
    for (auto& [j, v] : a.row(i)) t.row_mut(j).emplace(i, v);
  return t;
}

void row_add(Row& acc, int j, const Scalar& v) {
  if (v.is_zero()) return;
  auto it = acc.find(j);
  if (it == acc.end()) {
    acc.emplace(j, v);
  } else {
    it->second += v;
    if (it->second.is_zero()) acc.erase(it);
  }
}

std::string pair_witness(int M, int row, int col, const Scalar& v) {
  int n = M * M;
  return "(" + adj_str(M, row / n) + adj_str(M, row % n) + "; " + adj_str(M, col / n) + adj_str(M, col % n) +
         ") residual " + v.str();
}

std::string matrix_witness(const SparseMatrix<Scalar>& res, int M) {
  int i, j;
  if (!res.first_nonzero(i, j)) return "";
  return pair_witness(M, i, j, res.get(i, j));
}

Check matrix_check(const std::string& name, const SparseMatrix<Scalar>& res, int M, const Stopwatch& sw) {
  return Check{name, res.is_zero_matrix(), matrix_witness(res, M), sw.seconds()};
}

std::string t_sym(int a, int b) { return "T^" + std::to_string(a) + "_" + std::to_string(b); }
std::string w_sym(int M, int i) { return "w^" + std::to_string(i / M + 1) + "_" + std::to_string(i % M + 1); }
std::string chi_sym(int M, int i) { return "chi^" + std::to_string(i / M + 1) + "_" + std::to_string(i % M + 1); }

// Coefficient table of the omega bimodule rule: f^{(A1A2)}_{(B1B2)}(T^T_S)
// = sum_C R^{-1 TB1}_{CA1} R^{-1 A2C}_{B2S}, indexed [letter (T,S)] -> matrix (i, l).
std::vector<SparseMatrix<Scalar>> omega_coefficients(const SparseTensor<Scalar>& Rinv, int M) {
  int n = M * M;
  std::vector<SparseMatrix<Scalar>> out(n, SparseMatrix<Scalar>(n));
  std::vector<std::vector<std::pair<Index, Scalar>>> by_up1(M + 1);
  for (auto& [k, v] : Rinv.raw()) {
    Index i = Rinv.unkey(k);
    by_up1[i[1]].push_back({i, v});
  }
  for (auto& [k, v] : Rinv.raw()) {
    Index a = Rinv.unkey(k);
    int T = a[0], B1 = a[1], C = a[2], A1 = a[3];
    for (auto& [b, w] : by_up1[C]) {
      int A2 = b[0], B2 = b[2], S = b[3];
      out[(T - 1) * M + (S - 1)].add(adj_index(M, A1, A2), adj_index(M, B1, B2), v * w);
    }
  }
  return out;
}

// Matrix with polynomial entries over one common denominator, so that exact
// products need no gcd in the inner loop.
struct PolyMatrix {
  Poly den{mpq_class(1)};
  std::vector<std::map<int, Poly>> rows;
};

PolyMatrix clear_denominators(const SparseMatrix<Scalar>& a) {
  PolyMatrix out;
  std::vector<Poly> dens, factors;
  for (int i = 0; i < a.size(); ++i)
    for (auto& [j, v] : a.row(i))
      if (std::find(dens.begin(), dens.end(), v.den()) == dens.end()) dens.push_back(v.den());
  for (auto& d : dens) {
    Poly g = gcd(out.den, d), q;
    d.divide_exact(g, q);
    out.den = out.den * q;
  }
  for (auto& d : dens) {
    Poly q;
    out.den.divide_exact(d, q);
    factors.push_back(q);
  }
  out.rows.resize(a.size());
  for (int i = 0; i < a.size(); ++i)
    for (auto& [j, v] : a.row(i)) {
      auto k = std::find(dens.begin(), dens.end(), v.den()) - dens.begin();
      out.rows[i].emplace(j, v.num() * factors[k]);
    }
  return out;
}

// A * B - c * A (c may be zero); true when the result vanishes, else sets the first failing (row, col).
bool poly_product_is(const PolyMatrix& A, const PolyMatrix& B, const Poly* c, int& fi, int& fj) {
  for (int i = 0; i < static_cast<int>(A.rows.size()); ++i) {
    std::map<int, PolyBuilder> acc;
    for (auto& [k, a] : A.rows[i])
      for (auto& [j, b] : B.rows[k]) acc[j].add(a * b);
    if (c)
      for (auto& [j, a] : A.rows[i]) acc[j].add(-(a * *c));
    for (auto& [j, b] : acc)
      if (!b.build().is_zero()) {
        fi = i;
        fj = j;
        return false;
      }
  }
  return true;
}

}  // namespace

CalculusData build_calculus(const RMatrixData& d, bool with_projectors) {
  CalculusData cd;
  const auto& p = d.params;
  cd.M = p.N();
  cd.n = cd.M * cd.M;
  cd.params = p;
  cd.z = calculus_z(p);
  cd.X = build_X(p, d.Rinv, d.metric);
  bool classical = p.lambda().is_zero();
  if (!classical) cd.Y = build_Y(p, d.R, d.metric);
  cd.Lambda = build_Lambda(d.R, d.Rinv, d.metric);
  cd.LambdaInv = build_Lambda_inverse(d.R, d.Rinv, d.metric);
  if (!classical) cd.C = build_structure_C(cd.Lambda, p);
  if (with_projectors && !classical) {
    cd.has_projectors = true;
    const SparseMatrix<Scalar>* P[3] = {&d.proj.PS, &d.proj.PA, &d.proj.P0};
    cd.PIPJ.resize(9);
    for (int I = 0; I < 3; ++I)
      for (int J = 0; J < 3; ++J) cd.PIPJ[3 * I + J] = build_PIPJ(*P[I], *P[J], d.R, d.Rinv, d.metric);
    cd.Z = cd.PIPJ[0] + cd.PIPJ[4] + cd.PIPJ[8] - SparseMatrix<Scalar>::identity(cd.n * cd.n);
    cd.c = build_cartan_maurer(cd.Z, p);
  }
  return cd;
}

Check spectral_check(const CalculusData& cd, const std::vector<int>& rows) {
  Stopwatch sw;
  auto spec = lambda_spectrum(cd.params);
  int N = cd.Lambda.size();
  Check c{"spectral equation", true, "", 0};
  auto run = [&](int row) {
    auto v = spectral_row(cd.Lambda, spec, row);
    if (!v.empty() && c.pass) {
      c.pass = false;
      c.witness = pair_witness(cd.M, row, v.begin()->first, v.begin()->second);
    }
  };
  if (rows.empty()) {
    for (int i = 0; i < N; ++i) run(i);
  } else {
    for (int i : rows) run(i);
  }
  c.seconds = sw.seconds();
  return c;
}

std::vector<BicovResult> check_bicovariant_algebra(const CalculusData& cd, std::size_t sample, std::mt19937_64* rng) {
  int M = cd.M, n = cd.n;
  auto LT = transpose(cd.Lambda);  // row (k,l) -> (i,j): Lambda^{ij}_{kl}
  const auto& C = cd.C;            // row (j,k) -> i: C_jk^i
  std::vector<std::array<int, 3>> triples;
  if (sample == 0) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) triples.push_back({a, b, c});
  } else {
    std::uniform_int_distribution<int> U(0, n - 1);
    std::set<std::array<int, 3>> seen;
    while (seen.size() < std::min<std::size_t>(sample, std::size_t(n) * n * n)) seen.insert({U(*rng), U(*rng), U(*rng)});
    triples.assign(seen.begin(), seen.end());
  }
  auto lrow = [&](int a, int b) -> const Row& { return LT.row(a * n + b); };
  auto crow = [&](int a, int b) -> const Row& { return C.row(a * n + b); };
  std::vector<BicovResult> out(4);
  out[0].name = "q-Jacobi";
  out[1].name = "Lambda braid relation";
  out[2].name = "C-Lambda mixed identity";
  out[3].name = "C-Lambda exchange identity";
  auto fail = [&](BicovResult& r, const std::array<int, 3>& t, const Row& res) {
    if (!r.pass) return;
    r.pass = false;
    r.witness = "lower " + adj_str(M, t[0]) + adj_str(M, t[1]) + adj_str(M, t[2]) + " upper " +
                std::to_string(res.begin()->first) + " residual " + res.begin()->second.str();
  };
  // (r, x, y) -> s : sum_n C_rx^n C_ny^s
  std::map<std::array<int, 3>, Row> t1cache;
  auto T1 = [&](int r, int x, int y) -> const Row& {
    auto key = std::array<int, 3>{r, x, y};
    auto it = t1cache.find(key);
    if (it != t1cache.end()) return it->second;
    Row acc;
    for (auto& [nn, v] : crow(r, x))
      for (auto& [s, w] : crow(nn, y)) row_add(acc, s, v * w);
    return t1cache.emplace(key, std::move(acc)).first->second;
  };
  for (auto& t : triples) {
    {
      // C_ri^n C_nj^s - Lambda^{kl}_{ij} C_rk^n C_nl^s - C_ij^k C_rk^s, lower (r, i, j)
      int r = t[0], i = t[1], j = t[2];
      Row res = T1(r, i, j);
      for (auto& [kl, v] : lrow(i, j))
        for (auto& [s, w] : T1(r, kl / n, kl % n)) row_add(res, s, -(v * w));
      for (auto& [k, v] : crow(i, j))
        for (auto& [s, w] : crow(r, k)) row_add(res, s, -(v * w));
      ++out[0].checked;
      if (!res.empty()) fail(out[0], t, res);
    }
    {
      // Lambda_12 Lambda_23 Lambda_12 - Lambda_23 Lambda_12 Lambda_23 on basis vector (k, l, p)
      using V = std::map<std::array<int, 3>, Scalar>;
      auto add = [](V& v, const std::array<int, 3>& k, const Scalar& x) {
        auto it = v.find(k);
        if (it == v.end()) v.emplace(k, x);
        else it->second += x;
      };
      auto a12 = [&](const V& v) {
        V o;
        for (auto& [k, x] : v)
          for (auto& [ij, w] : lrow(k[0], k[1])) add(o, {ij / n, ij % n, k[2]}, w * x);
        return o;
      };
      auto a23 = [&](const V& v) {
        V o;
        for (auto& [k, x] : v)
          for (auto& [ij, w] : lrow(k[1], k[2])) add(o, {k[0], ij / n, ij % n}, w * x);
        return o;
      };
      V e{{t, Scalar(1)}};
      V l = a12(a23(a12(e))), rr = a23(a12(a23(e)));
      for (auto& [k, x] : rr) add(l, k, -x);
      Row res;
      for (auto& [k, x] : l)
        if (!x.is_zero()) res.emplace((k[0] * n + k[1]) * n + k[2], x);
      ++out[1].checked;
      if (!res.empty()) fail(out[1], t, res);
    }
    {
      // C_mn^i L^{ml}_{rj} L^{ns}_{lk} + L^{il}_{rj} C_lk^s
      //   - L^{pq}_{jk} L^{is}_{lq} C_rp^l - C_jk^m L^{is}_{rm}, lower (r, j, k), upper (i, s)
      int r = t[0], j = t[1], k = t[2];
      Row res;
      for (auto& [ml, v1] : lrow(r, j)) {
        int m = ml / n, l = ml % n;
        for (auto& [ns, v2] : lrow(l, k)) {
          Scalar v12 = v1 * v2;
          for (auto& [i, v3] : crow(m, ns / n)) row_add(res, i * n + ns % n, v12 * v3);
        }
        for (auto& [s, v3] : crow(l, k)) row_add(res, m * n + s, v1 * v3);
      }
      for (auto& [pq, v1] : lrow(j, k))
        for (auto& [l, v2] : crow(r, pq / n)) {
          Scalar v12 = v1 * v2;
          for (auto& [is, v3] : lrow(l, pq % n)) row_add(res, is, -(v12 * v3));
        }
      for (auto& [m, v1] : crow(j, k))
        for (auto& [is, v2] : lrow(r, m)) row_add(res, is, -(v1 * v2));
      ++out[2].checked;
      if (!res.empty()) fail(out[2], t, res);
    }
    {
      // C_rk^m L^{ns}_{ml} - L^{ij}_{kl} L^{nm}_{ri} C_mj^s, lower (r, k, l), upper (n, s)
      int r = t[0], k = t[1], l = t[2];
      Row res;
      for (auto& [m, v1] : crow(r, k))
        for (auto& [ns, v2] : lrow(m, l)) row_add(res, ns, v1 * v2);
      for (auto& [ij, v1] : lrow(k, l))
        for (auto& [nm, v2] : lrow(r, ij / n)) {
          Scalar v12 = v1 * v2;
          for (auto& [s, v3] : crow(nm % n, ij % n)) row_add(res, (nm / n) * n + s, -(v12 * v3));
        }
      ++out[3].checked;
      if (!res.empty()) fail(out[3], t, res);
    }
  }
  return out;
}

Report verify_calculus_suite(const RMatrixData& d, const CalculusData& cd, const PairingData* pairing,
                             const CalculusCheckOptions& opt) {
  Report rep;
  rep.suite = "calculus";
  int M = cd.M, n = cd.n;
  const auto& p = cd.params;
  if (p.lambda().is_zero()) throw ConfigError("the calculus suite needs generic r; use the classical limit at r = 1");
  Scalar li = p.lambda().inverse();
  auto In = SparseMatrix<Scalar>::identity(n);
  auto In2 = SparseMatrix<Scalar>::identity(n * n);
  {
    // lambda^{-1} [R^{-1 A1B1}_{ET} R^{-1 TE}_{B2A2} - delta^{B1}_{B2} delta^{A1}_{A2}]
    Stopwatch sw;
    std::map<std::pair<int, int>, std::vector<std::pair<Index, Scalar>>> by_up;
    for (auto& [k, v] : d.Rinv.raw()) {
      Index i = d.Rinv.unkey(k);
      by_up[{i[0], i[1]}].push_back({i, v});
    }
    SparseMatrix<Scalar> alt(n);
    for (auto& [k, v] : d.Rinv.raw()) {
      Index a = d.Rinv.unkey(k);
      auto it = by_up.find({a[3], a[2]});
      if (it == by_up.end()) continue;
      for (auto& [b, w] : it->second) alt.add(adj_index(M, a[0], b[3]), adj_index(M, a[1], b[2]), v * w * li);
    }
    for (int a = 1; a <= M; ++a)
      for (int b = 1; b <= M; ++b) alt.add(adj_index(M, a, a), adj_index(M, b, b), -li);
    rep.add(Check{"X closed form vs R^-1 R^-1 form", (alt - cd.X).is_zero_matrix(),
                  first_witness(alt - cd.X, M), sw.seconds()});
  }
  {
    Stopwatch sw;
    rep.add(Check{"XY = I", (cd.X * cd.Y - In).is_zero_matrix(), first_witness(cd.X * cd.Y - In, M), sw.seconds()});
    Stopwatch sw2;
    rep.add(Check{"YX = I", (cd.Y * cd.X - In).is_zero_matrix(), first_witness(cd.Y * cd.X - In, M), sw2.seconds()});
  }
  {
    Stopwatch sw;
    rep.add(matrix_check("Lambda Lambda^-1 = I", cd.Lambda * cd.LambdaInv - In2, M, sw));
    Stopwatch sw2;
    rep.add(matrix_check("Lambda^-1 Lambda = I", cd.LambdaInv * cd.Lambda - In2, M, sw2));
  }
  {
    std::vector<int> rows;
    if (opt.spectral_rows > 0 && opt.spectral_rows < std::size_t(n * n)) {
      std::mt19937_64 rng(opt.seed);
      std::vector<int> all(n * n);
      for (int i = 0; i < n * n; ++i) all[i] = i;
      std::shuffle(all.begin(), all.end(), rng);
      rows.assign(all.begin(), all.begin() + opt.spectral_rows);
      std::sort(rows.begin(), rows.end());
    }
    rep.add(spectral_check(cd, rows));
  }

  if (cd.has_projectors) {
    Scalar mu[3] = {p.r(), -p.rinv(), cubic_root(p)};
    {
      Stopwatch sw;
      SparseMatrix<Scalar> acc = cd.Lambda;
      for (int I = 0; I < 3; ++I)
        for (int J = 0; J < 3; ++J) acc = acc - cd.PIPJ[3 * I + J].scaled(mu[J] / mu[I]);
      rep.add(matrix_check("Lambda = sum mu_J/mu_I (P_I,P_J)", acc, M, sw));
    }
    {
      Stopwatch sw;
      SparseMatrix<Scalar> acc(n * n);
      for (auto& x : cd.PIPJ) acc = acc + x;
      rep.add(matrix_check("(I,I) = I", acc - In2, M, sw));
    }
    if (opt.projector_products) {
      Stopwatch sw;
      Check c{"(P_I,P_J)(P_K,P_L) = delta delta (P_I,P_J)", true, "", 0};
      std::vector<PolyMatrix> pm;
      for (auto& x : cd.PIPJ) pm.push_back(clear_denominators(x));
      const char* nm[3] = {"S", "A", "0"};
      for (int a = 0; a < 9 && c.pass; ++a)
        for (int b = 0; b < 9 && c.pass; ++b) {
          int fi, fj;
          if (!poly_product_is(pm[a], pm[b], a == b ? &pm[a].den : nullptr, fi, fj)) {
            c.pass = false;
            int nn = M * M;
            c.witness = std::string("(P_") + nm[a / 3] + ",P_" + nm[a % 3] + ")(P_" + nm[b / 3] + ",P_" + nm[b % 3] +
                        ") at " + adj_str(M, fi / nn) + adj_str(M, fi % nn) + "; " + adj_str(M, fj / nn) + adj_str(M, fj % nn);
          }
        }
      c.seconds = sw.seconds();
      rep.add(c);
    }
    {
      // C_jk^i = 1/2 [c_jk^i - Lambda^{rs}_{jk} c_rs^i]
      Stopwatch sw;
      SparseMatrix<Scalar> res = cd.C.scaled(Scalar(2)) - cd.c;
      for (int rs = 0; rs < n * n; ++rs)
        for (auto& [jk, v] : cd.Lambda.row(rs))
          for (auto& [i, w] : cd.c.row(rs)) res.add(jk, i, v * w);
      rep.add(Check{"C = (c - Lambda c)/2", res.is_zero_matrix(), "", sw.seconds()});
    }
  }
  if (pairing) {
    const auto& P = *pairing;
    {
      // Lambda^{ij}_{kl} = f^i_l(M_k^j)
      Stopwatch sw;
      Check c{"Lambda = f(M) via pairing", true, "", 0};
      for (int k = 0; k < n && c.pass; ++k)
        for (int j = 0; j < n && c.pass; ++j) {
          auto g = adjoint_M(P, k / M + 1, k % M + 1, j / M + 1, j % M + 1);
          SparseMatrix<Scalar> val(n);
          for (auto& [w, v] : g) val = val + P.f.on_word(w).scaled(v);
          for (int i = 0; i < n && c.pass; ++i)
            for (int l = 0; l < n; ++l) {
              Scalar diff = val.get(i, l) - cd.Lambda.get(i * n + j, k * n + l);
              if (!diff.is_zero()) {
                c.pass = false;
                c.witness = pair_witness(M, i * n + j, k * n + l, diff);
                break;
              }
            }
        }
      c.seconds = sw.seconds();
      rep.add(c);
    }
    {
      // C_jk^i = chi_k(M_j^i)
      Stopwatch sw;
      Check c{"C = chi(M) via pairing", true, "", 0};
      for (int j = 0; j < n && c.pass; ++j)
        for (int i = 0; i < n && c.pass; ++i) {
          auto g = adjoint_M(P, j / M + 1, j % M + 1, i / M + 1, i % M + 1);
          std::vector<Scalar> val(n, Scalar(0));
          for (auto& [w, v] : g) {
            auto x = P.chi_on_word(w);
            for (int k = 0; k < n; ++k) val[k] += v * x[k];
          }
          for (int k = 0; k < n; ++k) {
            Scalar diff = val[k] - cd.C.get(j * n + k, i);
            if (!diff.is_zero()) {
              c.pass = false;
              c.witness = pair_witness(M, j * n + k, i, diff);
              break;
            }
          }
        }
      c.seconds = sw.seconds();
      rep.add(c);
    }
    auto omega = omega_coefficients(d.Rinv, M);
    {
      Stopwatch sw;
      Check c{"omega bimodule coefficients = f on generators", true, "", 0};
      for (int t = 0; t < n && c.pass; ++t) {
        auto res = omega[t] - P.f.gen[t];
        if (!res.is_zero_matrix()) {
          c.pass = false;
          c.witness = "letter " + adj_str(M, t) + " " + first_witness(res, M);
        }
      }
      c.seconds = sw.seconds();
      rep.add(c);
    }
    {
      // chi-form: dT^X_S = T^X_T chi_{(B1B2)}(T^T_S) omega^{B1}_{B2}
      Stopwatch sw;
      Check c{"dT chi-form = X", true, "", 0};
      for (int x = 1; x <= M && c.pass; ++x)
        for (int s = 1; s <= M && c.pass; ++s) {
          auto chi = P.chi_on_word(Word{{x, s}});
          for (int b = 0; b < n; ++b) {
            Scalar diff = chi[b] - cd.X.get(adj_index(M, x, s), b);
            if (!diff.is_zero()) {
              c.pass = false;
              c.witness = "T^" + std::to_string(x) + "_" + std::to_string(s) + " " + adj_str(M, b) + " residual " + diff.str();
              break;
            }
          }
        }
      c.seconds = sw.seconds();
      rep.add(c);
    }
    {
      // tau-form: lambda^{-1}[tau T - T tau] with omega T = (f * T) omega from the R^-1 R^-1 table
      Stopwatch sw;
      SparseMatrix<Scalar> res = cd.X.scaled(Scalar(-1));
      for (int ts = 0; ts < n; ++ts) {
        for (int a = 1; a <= M; ++a)
          for (auto& [l, v] : omega[ts].row(adj_index(M, a, a))) res.add(ts, l, v * li);
        if (ts / M == ts % M)
          for (int b = 1; b <= M; ++b) res.add(ts, adj_index(M, b, b), -li);
      }
      rep.add(Check{"dT tau-form = X", res.is_zero_matrix(), first_witness(res, M), sw.seconds()});
    }
    {
      // psi_{A1}^{A2}(T^C_D) = chi_{B1B2}(T^C_D) Y_{B1A1}^{B2A2} = delta^C_{A1} delta^{A2}_D, psi(I) = 0
      Stopwatch sw;
      Check c{"duality psi(T - I) = delta", true, "", 0};
      for (int cdx = 0; cdx < n && c.pass; ++cdx) {
        auto chi = P.chi_on_word(Word{{cdx / M + 1, cdx % M + 1}});
        auto chi0 = P.chi_on_word(Word{});
        Row acc;
        for (int b = 0; b < n; ++b)
          for (auto& [a, y] : cd.Y.row(b)) row_add(acc, a, (chi[b] - chi0[b]) * y);
        row_add(acc, cdx, Scalar(-1));
        if (!acc.empty()) {
          c.pass = false;
          c.witness = "T" + adj_str(M, cdx) + " psi" + adj_str(M, acc.begin()->first) + " residual " +
                      acc.begin()->second.str();
        }
      }
      c.seconds = sw.seconds();
      rep.add(c);
    }
    {
      // tau = sum_A omega^A_A is right invariant: sum_A M_k^{(AA)} pairs like delta_k eps
      Stopwatch sw;
      Check c{"tau right invariance", true, "", 0};
      for (int k = 0; k < n && c.pass; ++k) {
        GroupWord g;
        for (int a = 1; a <= M; ++a) gw_add(g, adjoint_M(P, k / M + 1, k % M + 1, a, a));
        Scalar e = (k / M == k % M) ? Scalar(1) : Scalar(0);
        for (const FunctionalFamily* fam : {&P.Lp, &P.Lm, &P.f}) {
          SparseMatrix<Scalar> val(fam->n);
          for (auto& [w, v] : g) val = val + fam->on_word(w).scaled(v);
          auto res = val - SparseMatrix<Scalar>::identity(fam->n).scaled(e);
          if (!res.is_zero_matrix()) {
            c.pass = false;
            c.witness = fam->name + " on M" + adj_str(M, k);
            break;
          }
        }
      }
      c.seconds = sw.seconds();
      rep.add(c);
    }
    if (opt.pairing_reps && M <= 4) {
      // chi_i chi_j - Lambda^{kl}_{ij} chi_k chi_l = C_ij^k chi_k on rho_1 and rho_2
      for (int k = 1; k <= 2; ++k) {
        Stopwatch sw;
        auto ch = P.chi_rep(k);
        Check c{"q-Lie algebra on rho_" + std::to_string(k), true, "", 0};
        std::vector<SparseMatrix<Scalar>> prod(n * n);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) prod[a * n + b] = ch[a] * ch[b];
        for (int ij = 0; ij < n * n && c.pass; ++ij) {
          SparseMatrix<Scalar> res = prod[ij];
          for (int kl = 0; kl < n * n; ++kl) {
            auto it = cd.Lambda.row(kl).find(ij);
            if (it != cd.Lambda.row(kl).end()) res = res - prod[kl].scaled(it->second);
          }
          for (auto& [kk, v] : cd.C.row(ij)) res = res - ch[kk].scaled(v);
          if (!res.is_zero_matrix()) {
            c.pass = false;
            c.witness = "chi" + adj_str(M, ij / n) + " chi" + adj_str(M, ij % n);
          }
        }
        c.seconds = sw.seconds();
        rep.add(c);
      }
    }
  }
  return rep;
}

RelationSet exterior_derivative_on_T(const CalculusData& cd) {
  int M = cd.M;
  RelationSet s;
  s.name = "dT";
  for (int a = 1; a <= M; ++a)
    for (int b = 1; b <= M; ++b) {
      Relation r{{"dT^" + std::to_string(a) + "_" + std::to_string(b)}, {}, Scalar(0), {}};
      for (int c = 1; c <= M; ++c)
        for (auto& [rs, v] : cd.X.row(adj_index(M, c, b))) r.terms.push_back({v, {t_sym(a, c), w_sym(M, rs)}});
      s.add(std::move(r));
    }
  return s;
}

RelationSet omega_T_commutations(const RMatrixData& d) {
  int M = d.params.N(), n = M * M;
  auto om = omega_coefficients(d.Rinv, M);
  RelationSet s;
  s.name = "omega T";
  for (int i = 0; i < n; ++i)
    for (int R = 1; R <= M; ++R)
      for (int S = 1; S <= M; ++S) {
        Relation r{{w_sym(M, i), t_sym(R, S)}, {}, Scalar(0), {}};
        for (int T = 1; T <= M; ++T)
          for (auto& [l, v] : om[(T - 1) * M + (S - 1)].row(i)) r.terms.push_back({v, {t_sym(R, T), w_sym(M, l)}});
        s.add(std::move(r));
      }
  return s;
}

RelationSet omega_wedge_relations(const CalculusData& cd) {
  int M = cd.M, n = cd.n;
  RelationSet s;
  s.name = "omega wedge";
  if (!cd.has_projectors) throw ConfigError("omega wedge relations need the projector family");
  const auto& Z = cd.Z;
  for (int ij = 0; ij < n * n; ++ij) {
    Relation r{{w_sym(M, ij / n), w_sym(M, ij % n)}, {}, Scalar(0), {}};
    for (auto& [kl, v] : Z.row(ij)) r.terms.push_back({-v, {w_sym(M, kl / n), w_sym(M, kl % n)}});
    s.add(std::move(r));
  }
  return s;
}

RelationSet qlie_algebra(const CalculusData& cd) {
  int M = cd.M, n = cd.n;
  auto LT = transpose(cd.Lambda);
  RelationSet s;
  s.name = "q-Lie algebra";
  for (int ij = 0; ij < n * n; ++ij) {
    Relation r{{chi_sym(M, ij / n), chi_sym(M, ij % n)}, {}, Scalar(0), {}};
    for (auto& [kl, v] : LT.row(ij)) r.terms.push_back({v, {chi_sym(M, kl / n), chi_sym(M, kl % n)}});
    for (auto& [k, v] : cd.C.row(ij)) r.terms.push_back({v, {chi_sym(M, k)}});
    s.add(std::move(r));
  }
  return s;
}

RelationSet cartan_maurer(const CalculusData& cd) {
  int M = cd.M, n = cd.n;
  RelationSet s;
  s.name = "Cartan-Maurer";
  if (!cd.has_projectors) throw ConfigError("Cartan-Maurer constants need the projector family");
  const auto& c = cd.c;
  // d omega^i = -1/2 c_jk^i omega^j ^ omega^k
  std::vector<Relation> rel(n);
  for (int i = 0; i < n; ++i) rel[i] = Relation{{"d" + w_sym(M, i)}, {}, Scalar(0), {}};
  for (int jk = 0; jk < n * n; ++jk)
    for (auto& [i, v] : c.row(jk)) rel[i].terms.push_back({v * Scalar(-1) / Scalar(2), {w_sym(M, jk / n), w_sym(M, jk % n)}});
  for (auto& r : rel) s.add(std::move(r));
  return s;
}

}  // namespace qg
