#include "qg/rmatrix.hpp"

#include <sstream>

namespace qg {

SeriesSpec build_series(char series, int N) {
  SeriesSpec s;
  s.series = series;
  s.N = N;
  switch (series) {
    case 'B':
      if (N < 3 || N % 2 == 0) throw BadDimension("B series needs odd N >= 3, got " + std::to_string(N));
      s.n = (N - 1) / 2;
      s.n2 = (N + 1) / 2;
      s.eps = 1;
      break;
    case 'C':
      if (N < 2 || N % 2) throw BadDimension("C series needs even N >= 2, got " + std::to_string(N));
      s.n = N / 2;
      s.eps = -1;
      break;
    case 'D':
      if (N < 2 || N % 2) throw BadDimension("D series needs even N >= 2, got " + std::to_string(N));
      s.n = N / 2;
      s.eps = 1;
      break;
    default:
      throw ConfigError(std::string("unknown series '") + series + "'");
  }
  s.eps_a.assign(N + 1, 1);
  s.rho2.assign(N + 1, 0);
  for (int a = 1; a <= N; ++a) {
    if (series == 'C' && a > s.n) s.eps_a[a] = -1;
    int ap = N + 1 - a;
    if (a <= N / 2) {
      if (series == 'B') s.rho2[a] = N - 2 * a;
      else if (series == 'C') s.rho2[a] = N + 2 - 2 * a;
      else s.rho2[a] = N - 2 * a;
      s.rho2[ap] = -s.rho2[a];
    }
  }
  return s;
}

std::string series_label(const SeriesSpec& s) {
  switch (s.series) {
    case 'B': return "SO(" + std::to_string(s.N) + ")";
    case 'C': return "Sp(" + std::to_string(s.N) + ")";
    default: return "SO(" + std::to_string(s.N) + ")";
  }
}

QSource q_source(const SeriesSpec& spec, int a, int b) {
  QSource src;
  if (a == b || b == spec.prime(a)) return src;
  if (spec.n2 && (a == spec.n2 || b == spec.n2)) return src;
  int h = spec.N / 2;
  bool inv = false;
  if (a > h) {
    a = spec.prime(a);
    inv = !inv;
  }
  if (b > h) {
    b = spec.prime(b);
    inv = !inv;
  }
  if (a > b) {
    std::swap(a, b);
    inv = !inv;
  }
  src.is_r = false;
  src.i = a;
  src.j = b;
  src.inverted = inv;
  return src;
}

std::string q_name(int a, int b) { return "q" + std::to_string(a) + std::to_string(b); }

namespace {

ParamSet<Scalar> params_from(const SeriesSpec& spec, const Scalar& s, const std::map<std::pair<int, int>, Scalar>& ind) {
  ParamSet<Scalar> p;
  p.spec = spec;
  p.s = s;
  p.fill_powers();
  int N = spec.N;
  p.qtab.assign(N * N, Scalar());
  Scalar r = p.r(), r2 = p.s_pow(4);
  for (auto& [ij, v] : ind) p.independent.push_back(q_name(ij.first, ij.second));
  for (int a = 1; a <= N; ++a)
    for (int b = 1; b <= N; ++b) {
      QSource src = q_source(spec, a, b);
      Scalar v = r;
      if (!src.is_r) {
        const Scalar& q = ind.at({src.i, src.j});
        v = src.inverted ? r2 / q : q;
      }
      p.qtab[(a - 1) * N + (b - 1)] = v;
    }
  return p;
}

}  // namespace

std::vector<std::pair<int, int>> independent_pairs(const SeriesSpec& spec) {
  std::vector<std::pair<int, int>> out;
  int h = spec.N / 2;
  for (int i = 1; i <= h; ++i)
    for (int j = i + 1; j <= h; ++j) out.emplace_back(i, j);
  return out;
}

ParamSet<Scalar> make_params(const SeriesSpec& spec, const ParamOptions& opt) {
  std::map<std::pair<int, int>, Scalar> ind;
  for (auto [i, j] : independent_pairs(spec)) {
    std::string name = q_name(i, j);
    auto it = opt.fixed.find(name);
    ind[{i, j}] = it != opt.fixed.end() ? it->second : Scalar::var(name);
  }
  for (auto& [name, v] : opt.fixed) {
    bool known = false;
    for (auto [i, j] : independent_pairs(spec)) known |= q_name(i, j) == name;
    if (!known) throw ConfigError("no independent parameter " + name + " for " + series_label(spec));
  }
  return params_from(spec, opt.r_one ? Scalar(1) : Scalar::s(), ind);
}

ParamSet<Scalar> uniparametric_params(const SeriesSpec& spec) {
  std::map<std::pair<int, int>, Scalar> ind;
  for (auto ij : independent_pairs(spec)) ind[ij] = Scalar::r();
  return params_from(spec, Scalar::s(), ind);
}

namespace {
std::string u_name(int i, int j) { return "u" + std::to_string(i) + std::to_string(j); }
}  // namespace

ParamSet<Scalar> twist_params(const SeriesSpec& spec) {
  std::map<std::pair<int, int>, Scalar> ind;
  for (auto [i, j] : independent_pairs(spec)) ind[{i, j}] = Scalar::r() / Scalar::var(u_name(i, j)).pow(2);
  return params_from(spec, Scalar::s(), ind);
}

Scalar twist_sqrt(const SeriesSpec& spec, int a, int b) {
  QSource src = q_source(spec, a, b);
  if (src.is_r) return Scalar(1);
  Scalar u = Scalar::var(u_name(src.i, src.j));
  return src.inverted ? u.inverse() : u;
}

ParamSet<Scalar> inner_params(const ParamSet<Scalar>& big) {
  ParamSet<Scalar> p;
  p.spec = build_series(big.spec.series, big.spec.N - 2);
  p.s = big.s;
  p.fill_powers();
  int N = p.spec.N;
  p.qtab.assign(N * N, Scalar());
  for (int a = 1; a <= N; ++a)
    for (int b = 1; b <= N; ++b) p.qtab[(a - 1) * N + (b - 1)] = big.q(a + 1, b + 1);
  p.independent = big.independent;
  return p;
}

ParamSet<Complex> numeric_params(const ParamSet<Scalar>& p, const std::vector<Complex>& point) {
  ParamSet<Complex> n;
  n.spec = p.spec;
  n.independent = p.independent;
  n.s = p.s.evaluate(point);
  n.qtab.reserve(p.qtab.size());
  for (auto& q : p.qtab) n.qtab.push_back(q.evaluate(point));
  n.fill_powers();
  return n;
}

std::string index_str(const Index& idx) {
  std::string s = "(";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(idx[i]);
  }
  return s + ")";
}

nlohmann::json tensor_to_json(const SparseTensor<Scalar>& t) {
  nlohmann::json entries = nlohmann::json::array();
  for (auto& [idx, v] : t.sorted()) entries.push_back({{"idx", idx}, {"val", v.to_json()}});
  return {{"rank", t.rank()}, {"dim", t.dim()}, {"entries", entries}};
}

SparseTensor<Scalar> tensor_from_json(const nlohmann::json& j) {
  SparseTensor<Scalar> t(j.at("rank").get<int>(), j.at("dim").get<int>());
  for (auto& e : j.at("entries")) {
    Index idx = e.at("idx").get<Index>();
    if (static_cast<int>(idx.size()) != t.rank()) throw Error("tensor entry has wrong rank");
    for (int a : idx)
      if (a < 1 || a > t.dim()) throw Error("tensor index out of range");
    t.set(idx, Scalar::from_json(e.at("val")));
  }
  return t;
}

namespace {

// Rhat^{-1} = R^{-1} P, so (Rhat^{-1})^{ab}_{cd} = (R^{-1})^{ab}_{dc}.
SparseMatrix<Scalar> rhat_inverse(const SparseTensor<Scalar>& Rinv) {
  int M = Rinv.dim();
  SparseMatrix<Scalar> m(M * M);
  for (auto& [k, v] : Rinv.raw()) {
    Index i = Rinv.unkey(k);
    m.set(pair_index(M, i[0], i[1]), pair_index(M, i[3], i[2]), v);
  }
  return m;
}

Check matrix_check(const std::string& name, const SparseMatrix<Scalar>& residual, int M, const Stopwatch& sw) {
  Check c{name, residual.is_zero_matrix(), first_witness(residual, M), sw.seconds()};
  return c;
}

Check tensor_check(const std::string& name, const SparseTensor<Scalar>& residual, const Stopwatch& sw) {
  return Check{name, residual.nnz() == 0, first_witness(residual), sw.seconds()};
}

SparseTensor<Scalar> tensor_diff(const SparseTensor<Scalar>& a, const SparseTensor<Scalar>& b) {
  SparseTensor<Scalar> d = a;
  for (auto& [k, v] : b.raw()) d.add(b.unkey(k), -v);
  return d;
}

}  // namespace

RMatrixData build_rmatrix_data(const ParamSet<Scalar>& p) {
  RMatrixData d;
  d.params = p;
  d.metric = build_metric(p);
  d.R = build_R(p);
  d.Rinv = build_R(inverted_params(p));
  d.Rhat = build_Rhat(d.R);
  d.Rhat_inv = rhat_inverse(d.Rinv);
  d.proj = build_projectors(p, d.Rhat, d.metric);
  return d;
}

Report verify_rmatrix_suite(const RMatrixData& d) {
  Report rep;
  rep.suite = "rmatrix";
  const auto& p = d.params;
  const auto& m = d.metric;
  int M = p.N();
  auto I = SparseMatrix<Scalar>::identity(M * M);
  Scalar r = p.r(), rinv = p.rinv(), lam = p.lambda(), w = cubic_root(p);

  {
    Stopwatch sw;
    rep.add(tensor_check("Yang-Baxter equation", ybe_residual(d.R), sw));
  }
  {
    Stopwatch sw;
    SparseTensor<Scalar> bad(4, M);
    for (auto& [idx, v] : d.R.sorted())
      if (idx[0] < idx[2] || (idx[0] == idx[2] && idx[1] < idx[3])) bad.set(idx, v);
    rep.add(tensor_check("upper triangularity", bad, sw));
  }
  {
    Stopwatch sw;
    auto Rm = pair_matrix(d.R), Ri = pair_matrix(d.Rinv);
    rep.add(matrix_check("R times R^{-1} is the identity", Rm * Ri - I, M, sw));
    Stopwatch sw2;
    rep.add(matrix_check("Rhat times Rhat^{-1} is the identity", d.Rhat * d.Rhat_inv - I, M, sw2));
  }
  {
    Stopwatch sw;
    SparseTensor<Scalar> res(4, M);
    for (int a = 1; a <= M; ++a)
      for (int b = 1; b <= M; ++b)
        for (int c = 1; c <= M; ++c)
          for (int e = 1; e <= M; ++e)
            res.set({a, b, c, e}, d.R.get({a, b, c, e}) - d.R.get({p.spec.prime(c), p.spec.prime(e), p.spec.prime(a), p.spec.prime(b)}));
    rep.add(tensor_check("R^{ab}_{cd} = R^{c'd'}_{a'b'}", res, sw));
  }
  {
    Stopwatch sw;
    auto Rp = build_R(transposed_params(p));
    SparseTensor<Scalar> res(4, M);
    for (int a = 1; a <= M; ++a)
      for (int b = 1; b <= M; ++b)
        for (int c = 1; c <= M; ++c)
          for (int e = 1; e <= M; ++e) res.set({a, b, c, e}, d.R.get({a, b, c, e}) - Rp.get({e, c, b, a}));
    rep.add(tensor_check("R_q^{ab}_{cd} = R_p^{dc}_{ba} with p_ab = q_ba", res, sw));
  }
  {
    // C_ab X^{bc}_{de} = Y^{cf}_{ad} C_fe and X^{bc}_{de} C^{ea} = C^{bf} Y^{ca}_{fd}
    // for (X, Y) = (Rhat, Rhat^{-1}) and the reverse.
    auto crc = [&](const SparseMatrix<Scalar>& X, const SparseMatrix<Scalar>& Y) {
      SparseTensor<Scalar> res(5, M);
      for (int a = 1; a <= M; ++a)
        for (int c = 1; c <= M; ++c)
          for (int dd = 1; dd <= M; ++dd)
            for (int e = 1; e <= M; ++e) {
              int ap = p.spec.prime(a), ep = p.spec.prime(e);
              Scalar lhs = m.lo[a][ap] * X.get(pair_index(M, ap, c), pair_index(M, dd, e));
              Scalar rhs = Y.get(pair_index(M, c, ep), pair_index(M, a, dd)) * m.lo[ep][e];
              res.set({1, a, c, dd, e}, lhs - rhs);
              // second form with b, c, d, a
              int b = a, aa = e;
              int bp = p.spec.prime(b), aap = p.spec.prime(aa);
              Scalar l2 = X.get(pair_index(M, b, c), pair_index(M, dd, aap)) * m.up[aap][aa];
              Scalar r2 = m.up[b][bp] * Y.get(pair_index(M, c, aa), pair_index(M, bp, dd));
              res.set({2, b, c, dd, aa}, l2 - r2);
            }
      return res;
    };
    Stopwatch sw;
    rep.add(tensor_check("CRC identities with Rhat", crc(d.Rhat, d.Rhat_inv), sw));
    Stopwatch sw2;
    rep.add(tensor_check("CRC identities with Rhat^{-1}", crc(d.Rhat_inv, d.Rhat), sw2));
  }
  {
    Stopwatch sw;
    SparseTensor<Scalar> res(3, M);
    for (int c = 1; c <= M; ++c)
      for (int e = 1; e <= M; ++e) {
        Scalar lo(0), up(0);
        for (int a = 1; a <= M; ++a) {
          int ap = p.spec.prime(a);
          lo += m.lo[a][ap] * d.Rhat.get(pair_index(M, a, ap), pair_index(M, c, e));
          up += d.Rhat.get(pair_index(M, c, e), pair_index(M, a, ap)) * m.up[a][ap];
        }
        res.set({1, c, e}, lo - w * m.lo[c][e]);
        res.set({2, c, e}, up - w * m.up[c][e]);
      }
    rep.add(tensor_check("CR relation", res, sw));
  }
  {
    Stopwatch sw;
    auto res = (d.Rhat - I.scaled(r)) * (d.Rhat + I.scaled(rinv)) * (d.Rhat - I.scaled(w));
    rep.add(matrix_check("characteristic cubic", res, M, sw));
  }
  {
    Stopwatch sw;
    auto res = d.Rhat - d.Rhat_inv - (I - d.proj.K).scaled(lam);
    rep.add(matrix_check("Rhat - Rhat^{-1} = lambda (I - K)", res, M, sw));
  }
  {
    const auto& P = d.proj;
    Stopwatch sw;
    rep.add(matrix_check("projector completeness", P.PS + P.PA + P.P0 - I, M, sw));
    Stopwatch sw2;
    const SparseMatrix<Scalar>* ps[3] = {&P.PS, &P.PA, &P.P0};
    SparseMatrix<Scalar> acc(M * M);
    bool ok = true;
    std::string wit;
    for (int i = 0; i < 3 && ok; ++i)
      for (int j = 0; j < 3 && ok; ++j) {
        auto prod = *ps[i] * *ps[j];
        auto res = i == j ? prod - *ps[i] : prod;
        if (!res.is_zero_matrix()) {
          ok = false;
          wit = "pair " + std::to_string(i) + std::to_string(j) + " " + first_witness(res, M);
        }
      }
    rep.add(Check{"projector orthogonality and idempotency", ok, wit, sw2.seconds()});
    Stopwatch sw3;
    auto rec = P.PS.scaled(r) - P.PA.scaled(rinv) + P.P0.scaled(w) - d.Rhat;
    rep.add(matrix_check("projector decomposition of Rhat", rec, M, sw3));
    Stopwatch sw4;
    rep.add(matrix_check("K^2 = Q_N^{-1} K", P.K * P.K - P.K.scaled(P.QN.inverse()), M, sw4));
    Stopwatch sw5;
    Scalar diff = P.QN - QN_closed(p);
    rep.add(Check{"Q_N closed form", diff.is_zero(), diff.is_zero() ? "" : "residual " + diff.str(), sw5.seconds()});
  }
  {
    Stopwatch sw;
    SparseTensor<Scalar> res(3, M);
    for (int a = 1; a <= M; ++a)
      for (int c = 1; c <= M; ++c) {
        Scalar x(0), y(0);
        for (int b = 1; b <= M; ++b) {
          x += m.up[a][b] * m.lo[b][c];
          y += m.lo[c][b] * m.up[b][a];
        }
        Scalar delta(a == c ? 1 : 0);
        res.set({1, a, c}, x - delta);
        res.set({2, a, c}, y - delta);
        res.set({3, a, c}, m.lo[a][c] - m.lo[p.spec.prime(c)][p.spec.prime(a)]);
        if (!p.spec.orthogonal()) res.set({4, a, c}, m.up[a][c] - Scalar(p.spec.eps) * m.lo[a][c]);
      }
    rep.add(tensor_check("metric identities", res, sw));
  }
  return rep;
}

Report twist_check(const SeriesSpec& spec) {
  Report rep;
  rep.suite = "twist";
  int M = spec.N;
  auto pq = twist_params(spec);
  auto pr = uniparametric_params(spec);
  auto Rq = build_R(pq), Rr = build_R(pr);
  std::vector<std::vector<Scalar>> Fi(M + 1, std::vector<Scalar>(M + 1)), F = Fi;
  for (int a = 1; a <= M; ++a)
    for (int b = 1; b <= M; ++b) {
      Fi[a][b] = twist_sqrt(spec, a, b);
      F[a][b] = Fi[a][b].inverse();
    }
  {
    Stopwatch sw;
    SparseTensor<Scalar> res = Rq;
    for (auto& [k, v] : Rr.raw()) {
      Index i = Rr.unkey(k);
      res.add(i, -(Fi[i[0]][i[1]] * v * Fi[i[2]][i[3]]));
    }
    rep.add(tensor_check("R_q = F^{-1} R_r F^{-1}", res, sw));
  }
  {
    Stopwatch sw;
    SparseTensor<Scalar> res(2, M);
    for (int a = 1; a <= M; ++a)
      for (int b = 1; b <= M; ++b) res.set({a, b}, F[a][b] * F[b][a] - Scalar(1));
    rep.add(tensor_check("F_12 F_21 = 1", res, sw));
  }
  {
    Stopwatch sw;
    SparseTensor<Scalar> res(3, M);
    for (int a = 1; a <= M; ++a)
      for (int b = 1; b <= M; ++b)
        for (int c = 1; c <= M; ++c) res.set({a, b, c}, F[a][b] * F[a][c] * F[b][c] - F[b][c] * F[a][c] * F[a][b]);
    rep.add(tensor_check("F_12 F_13 F_23 = F_23 F_13 F_12", res, sw));
  }
  {
    // (R_r)^{ab}_{de} (F_{dc} F_{ec} - F_{ac} F_{bc}) = 0
    Stopwatch sw;
    SparseTensor<Scalar> res(5, M);
    for (auto& [idx, v] : Rr.sorted())
      for (int c = 1; c <= M; ++c) {
        int a = idx[0], b = idx[1], dd = idx[2], e = idx[3];
        res.set({a, b, dd, e, c}, v * (F[dd][c] * F[e][c] - F[a][c] * F[b][c]));
      }
    rep.add(tensor_check("(R_r)_12 F_13 F_23 = F_23 F_13 (R_r)_12", res, sw));
  }
  {
    Stopwatch sw;
    auto Hq = build_Rhat(Rq), Hr = build_Rhat(Rr);
    SparseMatrix<Scalar> conj(M * M);
    for (int i = 0; i < M * M; ++i)
      for (auto& [j, v] : Hr.row(i)) conj.set(i, j, F[i / M + 1][i % M + 1] * v * Fi[j / M + 1][j % M + 1]);
    rep.add(matrix_check("Rhat_q = F Rhat_r F^{-1}", Hq - conj, M, sw));
  }
  {
    Stopwatch sw;
    ParamSet<Scalar> p1 = pq;
    p1.s = Scalar(1);
    p1.fill_powers();
    for (auto& q : p1.qtab) q = q.substitute("s", 1);
    auto R1 = build_R(p1);
    SparseTensor<Scalar> res = R1;
    for (int a = 1; a <= M; ++a)
      for (int b = 1; b <= M; ++b) res.add({a, b, a, b}, -(Fi[a][b] * Fi[a][b]));
    rep.add(tensor_check("R = F^{-2} at r = 1", res, sw));
  }
  {
    Stopwatch sw;
    SparseTensor<Scalar> res(4, M);
    for (auto& [idx, v] : Rq.sorted())
      if (!(idx[0] == idx[2] && idx[1] == idx[3])) res.set(idx, v - Rr.get(idx));
    rep.add(tensor_check("off-diagonal entries are independent of q", res, sw));
  }
  return rep;
}

Report verify_block_decomposition(const ParamSet<Scalar>& big) {
  Report rep;
  rep.suite = "block decomposition";
  Stopwatch sw;
  int M = big.N();
  auto inner = inner_params(big);
  auto Rin = build_R(inner);
  auto cin = build_metric(inner);
  auto cbig = build_metric(big);
  int e = big.spec.eps;
  int rho2 = M - 1 - e;  // 2 rho with rho = (N+1-eps)/2 and N = M - 2
  Scalar r = big.r(), rinv = big.rinv(), lam = big.lambda(), eps(e);
  Scalar rmr = big.s_pow(-rho2);
  const int o = 1, b = M;  // the two extra indices
  SparseTensor<Scalar> E(4, M);
  E.set({o, o, o, o}, r);
  E.set({o, b, o, b}, rinv);
  E.set({b, o, o, b}, lam * (Scalar(1) - eps * big.s_pow(-2 * rho2)));
  E.set({b, o, b, o}, rinv);
  E.set({b, b, b, b}, r);
  int n = M - 2;
  for (int x = 1; x <= n; ++x) {
    int X = x + 1;
    for (int y = 1; y <= n; ++y) {
      int Y = y + 1;
      Scalar cl = cin.lo[x][y], cu = cin.up[y][x];
      if (!cl.is_zero()) E.set({b, o, X, Y}, -(eps * cl * lam * rmr));
      if (!cu.is_zero()) E.set({X, Y, o, b}, -(cu * lam * rmr));
    }
    E.set({o, X, o, X}, r / big.q(o, X));
    E.set({b, X, b, X}, r / big.q(b, X));
    E.set({b, X, X, b}, lam);
    E.set({X, o, o, X}, lam);
    E.set({X, o, X, o}, r / big.q(X, o));
    E.set({X, b, X, b}, r / big.q(X, b));
  }
  for (auto& [idx, v] : Rin.sorted()) E.set({idx[0] + 1, idx[1] + 1, idx[2] + 1, idx[3] + 1}, v);
  auto R = build_R(big);
  rep.add(tensor_check("block form of R", tensor_diff(R, E), sw));

  // r^rho = C_{bullet circ}; holds for SO, and up to sign for Sp.
  Scalar cbo = cbig.lo[b][o];
  Scalar target = big.s_pow(rho2);
  Scalar diff = big.spec.orthogonal() ? cbo - target : cbo + target;
  rep.add(Check{big.spec.orthogonal() ? "r^rho = C_{M1}" : "r^rho = -C_{M1}", diff.is_zero(),
                diff.is_zero() ? "" : "residual " + diff.str(), 0});
  return rep;
}

Report compare_compact_formula(const ParamSet<Scalar>& p) {
  Report rep;
  rep.suite = "compact formula";
  Stopwatch sw;
  auto diff = tensor_diff(build_R(p), build_R_compact(p));
  bool mid_only = true;
  for (auto& [idx, v] : diff.sorted())
    if (!(idx[0] == p.spec.n2 && idx[2] == p.spec.n2 && idx[1] == idx[3])) mid_only = false;
  Check c = tensor_check("compact formula matches component list", diff, sw);
  // The literal delta factor drops R^{n2 b}_{n2 b} for b != n2 on the B series.
  if (!c.pass && p.spec.n2 && mid_only) c.expected_failure = true;
  rep.add(c);
  return rep;
}

}  // namespace qg
