#include "qg/pairing.hpp"

namespace qg {

GroupWord gw_letter(int c, int d) { return GroupWord{{Word{{c, d}}, Scalar(1)}}; }
GroupWord gw_identity() { return GroupWord{{Word{}, Scalar(1)}}; }

void gw_add(GroupWord& acc, const GroupWord& x, const Scalar& c) {
  for (auto& [w, v] : x) {
    Scalar add = v * c;
    auto it = acc.find(w);
    if (it == acc.end()) {
      if (!add.is_zero()) acc.emplace(w, add);
    } else {
      it->second += add;
      if (it->second.is_zero()) acc.erase(it);
    }
  }
}

GroupWord gw_mul(const GroupWord& a, const GroupWord& b) {
  GroupWord out;
  for (auto& [wa, va] : a)
    for (auto& [wb, vb] : b) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      gw_add(out, GroupWord{{w, va * vb}});
    }
  return out;
}

std::string word_str(const Word& w) {
  if (w.empty()) return "I";
  std::string s;
  for (auto& [c, d] : w) s += "T^" + std::to_string(c) + "_" + std::to_string(d);
  return s;
}

Scalar counit(const Word& w) {
  for (auto& [c, d] : w)
    if (c != d) return Scalar(0);
  return Scalar(1);
}

Scalar counit(const GroupWord& w) {
  Scalar acc(0);
  for (auto& [word, v] : w) acc += v * counit(word);
  return acc;
}

MultiWord coproduct(const GroupWord& w, int M) {
  MultiWord out;
  for (auto& [word, v] : w) {
    // expand over the internal index of each letter
    std::vector<std::pair<Word, Word>> parts{{Word{}, Word{}}};
    for (auto& [c, d] : word) {
      std::vector<std::pair<Word, Word>> next;
      for (auto& [l, r] : parts)
        for (int x = 1; x <= M; ++x) {
          Word l2 = l, r2 = r;
          l2.push_back({c, x});
          r2.push_back({x, d});
          next.emplace_back(std::move(l2), std::move(r2));
        }
      parts = std::move(next);
    }
    for (auto& [l, r] : parts) {
      auto& slot = out[{l, r}];
      slot += v;
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

GroupWord antipode(const GroupWord& w, const Metric<Scalar>& m) {
  int M = m.M;
  GroupWord out;
  for (auto& [word, v] : w) {
    Word k;
    Scalar c = v;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      int a = it->first, b = it->second;
      int ap = M + 1 - a, bp = M + 1 - b;
      c *= m.up[a][ap] * m.lo[bp][b];
      k.push_back({bp, ap});
    }
    gw_add(out, GroupWord{{k, c}});
  }
  return out;
}

SparseMatrix<Scalar> FunctionalFamily::on_word(const Word& w) const {
  auto acc = SparseMatrix<Scalar>::identity(n);
  for (auto& [c, d] : w) acc = acc * on_letter(c, d);
  return acc;
}

Scalar FunctionalFamily::eval(int i, int j, const Word& w) const {
  SparseMatrix<Scalar>::Row v{{i, Scalar(1)}};
  for (auto& [c, d] : w) {
    v = SparseMatrix<Scalar>::row_times(v, on_letter(c, d));
    if (v.empty()) return Scalar(0);
  }
  auto it = v.find(j);
  return it == v.end() ? Scalar(0) : it->second;
}

Scalar FunctionalFamily::eval(int i, int j, const GroupWord& w) const {
  Scalar acc(0);
  for (auto& [word, v] : w) acc += v * eval(i, j, word);
  return acc;
}

namespace {

SparseMatrix<Scalar> kron(const SparseMatrix<Scalar>& a, const SparseMatrix<Scalar>& b) {
  int nb = b.size();
  SparseMatrix<Scalar> out(a.size() * nb);
  for (int i = 0; i < a.size(); ++i)
    for (auto& [j, va] : a.row(i))
      for (int k = 0; k < nb; ++k)
        for (auto& [l, vb] : b.row(k)) out.set(i * nb + k, j * nb + l, va * vb);
  return out;
}

}  // namespace

std::vector<SparseMatrix<Scalar>> FunctionalFamily::rep(int k) const {
  std::vector<SparseMatrix<Scalar>> one(n * n, SparseMatrix<Scalar>(M));
  for (int c = 1; c <= M; ++c)
    for (int d = 1; d <= M; ++d) {
      const auto& g = on_letter(c, d);
      for (int i = 0; i < n; ++i)
        for (auto& [j, v] : g.row(i)) one[i * n + j].set(c - 1, d - 1, v);
    }
  if (k == 0) {
    std::vector<SparseMatrix<Scalar>> e(n * n, SparseMatrix<Scalar>(1));
    for (int i = 0; i < n; ++i) e[i * n + i].set(0, 0, Scalar(1));
    return e;
  }
  auto cur = one;
  for (int step = 1; step < k; ++step) {
    int dim = cur[0].size() * M;
    std::vector<SparseMatrix<Scalar>> next(n * n, SparseMatrix<Scalar>(dim));
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        if (one[i * n + l].is_zero_matrix()) continue;
        for (int j = 0; j < n; ++j) {
          if (cur[l * n + j].is_zero_matrix()) continue;
          next[i * n + j] = next[i * n + j] + kron(one[i * n + l], cur[l * n + j]);
        }
      }
    cur = std::move(next);
  }
  return cur;
}

std::vector<Scalar> PairingData::chi_on_word(const Word& w) const {
  int n = M * M;
  std::vector<Scalar> out(n);
  auto fw = f.on_word(w);
  Scalar e = counit(w);
  Scalar li = lambda.inverse();
  for (int j = 0; j < n; ++j) {
    Scalar acc(0);
    for (int c = 1; c <= M; ++c) acc += fw.get(adj(c, c), j);
    if (j / M == j % M) acc -= e;
    out[j] = acc * li;
  }
  return out;
}

Scalar PairingData::chi(int a, int b, const GroupWord& w) const {
  Scalar acc(0);
  for (auto& [word, v] : w) acc += v * chi(a, b, word);
  return acc;
}

std::vector<SparseMatrix<Scalar>> PairingData::chi_rep(int k) const {
  int n = M * M;
  auto fr = f.rep(k);
  int dim = fr[0].size();
  auto I = SparseMatrix<Scalar>::identity(dim);
  Scalar li = lambda.inverse();
  std::vector<SparseMatrix<Scalar>> out(n, SparseMatrix<Scalar>(dim));
  for (int j = 0; j < n; ++j) {
    SparseMatrix<Scalar> acc(dim);
    for (int c = 1; c <= M; ++c) acc = acc + fr[adj(c, c) * n + j];
    if (j / M == j % M) acc = acc - I;
    out[j] = acc.scaled(li);
  }
  return out;
}

PairingData build_pairing(const RMatrixData& d) {
  PairingData p;
  int M = d.params.N();
  p.M = M;
  p.params = d.params;
  p.metric = d.metric;
  p.R = d.R;
  p.Rinv = d.Rinv;
  p.lambda = d.params.lambda();
  auto init = [&](FunctionalFamily& fam, const std::string& name, int n) {
    fam.name = name;
    fam.M = M;
    fam.n = n;
    fam.gen.assign(M * M, SparseMatrix<Scalar>(n));
  };
  init(p.Lp, "L+", M);
  init(p.Lm, "L-", M);
  init(p.f, "f", M * M);
  // L+^A_B(T^C_D) = R^{CA}_{DB}, L-^A_B(T^C_D) = (R^{-1})^{AC}_{BD}
  for (auto& [idx, v] : d.R.sorted()) {
    int C = idx[0], A = idx[1], D = idx[2], B = idx[3];
    p.Lp.gen[(C - 1) * M + (D - 1)].set(A - 1, B - 1, v);
  }
  for (auto& [idx, v] : d.Rinv.sorted()) {
    int A = idx[0], C = idx[1], B = idx[2], D = idx[3];
    p.Lm.gen[(C - 1) * M + (D - 1)].set(A - 1, B - 1, v);
  }
  // f^{A1}_{A2 B1}^{B2}(T^C_D) = kappa'(L+^{B1}_{A1})(T^C_E) L-^{A2}_{B2}(T^E_D),
  // kappa'(L^A_B) = C^{DA} L^C_D C_{BC}.
  const auto& m = d.metric;
  std::vector<std::vector<std::pair<Index, Scalar>>> rinv_by_e(M + 1);
  for (auto& [idx, v] : d.Rinv.sorted()) rinv_by_e[idx[1]].push_back({idx, v});
  std::map<std::pair<int, int>, std::map<std::pair<int, int>, Scalar>> acc;  // (letter, i) -> j -> value
  for (auto& [idx, v] : d.R.sorted()) {
    int C = idx[0], A1p = idx[1], E = idx[2], B1p = idx[3];
    int A1 = M + 1 - A1p, B1 = M + 1 - B1p;
    Scalar k = m.up[B1p][B1] * m.lo[A1][A1p] * v;
    for (auto& [ri, rv] : rinv_by_e[E]) {
      int A2 = ri[0], B2 = ri[2], D = ri[3];
      auto& slot = acc[{(C - 1) * M + (D - 1), p.adj(A1, A2)}][{p.adj(B1, B2), 0}];
      slot += k * rv;
    }
  }
  for (auto& [key, row] : acc)
    for (auto& [j, v] : row) p.f.gen[key.first].set(key.second, j.first, v);
  return p;
}

GroupWord adjoint_M(const PairingData& p, int k1, int k2, int j1, int j2) {
  return gw_mul(gw_letter(k1, j1), antipode(gw_letter(j2, k2), p.metric));
}

namespace {

// Collapses sum K(x,y) T^x_al T^y_be with K proportional to C_{xy} into
// c C_{al be} I, via C_{ac} T^a_b T^c_d = C_{bd} I. Returns false if some
// length-2 block is not of that shape.
bool reduce_ctt_lower(const GroupWord& w, const Metric<Scalar>& m, GroupWord& out) {
  int M = m.M;
  std::map<std::pair<int, int>, std::map<std::pair<int, int>, Scalar>> blocks;
  out.clear();
  for (auto& [word, v] : w) {
    if (word.size() != 2) {
      gw_add(out, GroupWord{{word, v}});
      continue;
    }
    blocks[{word[0].second, word[1].second}][{word[0].first, word[1].first}] = v;
  }
  for (auto& [lo, K] : blocks) {
    int x0 = K.begin()->first.first, y0 = K.begin()->first.second;
    if (y0 != M + 1 - x0) return false;
    Scalar c = K.begin()->second / m.lo[x0][y0];
    for (int x = 1; x <= M; ++x)
      for (int y = 1; y <= M; ++y) {
        auto it = K.find({x, y});
        Scalar have = it == K.end() ? Scalar(0) : it->second;
        if (have != c * m.lo[x][y]) return false;
      }
    gw_add(out, gw_identity(), c * m.lo[lo.first][lo.second]);
  }
  return true;
}

// Same with C^{bc} T^a_b T^d_c = C^{ad}.
bool reduce_ctt_upper(const GroupWord& w, const Metric<Scalar>& m, GroupWord& out) {
  int M = m.M;
  std::map<std::pair<int, int>, std::map<std::pair<int, int>, Scalar>> blocks;
  out.clear();
  for (auto& [word, v] : w) {
    if (word.size() != 2) {
      gw_add(out, GroupWord{{word, v}});
      continue;
    }
    blocks[{word[0].first, word[1].first}][{word[0].second, word[1].second}] = v;
  }
  for (auto& [up, K] : blocks) {
    int x0 = K.begin()->first.first, y0 = K.begin()->first.second;
    if (y0 != M + 1 - x0) return false;
    Scalar c = K.begin()->second / m.up[x0][y0];
    for (int x = 1; x <= M; ++x)
      for (int y = 1; y <= M; ++y) {
        auto it = K.find({x, y});
        Scalar have = it == K.end() ? Scalar(0) : it->second;
        if (have != c * m.up[x][y]) return false;
      }
    gw_add(out, gw_identity(), c * m.up[up.first][up.second]);
  }
  return true;
}

std::vector<Word> words_upto(int M, int len) {
  std::vector<Word> out{Word{}};
  std::vector<Word> layer{Word{}};
  for (int l = 1; l <= len; ++l) {
    std::vector<Word> next;
    for (auto& w : layer)
      for (int c = 1; c <= M; ++c)
        for (int d = 1; d <= M; ++d) {
          Word x = w;
          x.push_back({c, d});
          next.push_back(x);
        }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

struct Tally {
  bool pass = true;
  std::string witness;
  void fail(const std::string& w) {
    if (pass) witness = w;
    pass = false;
  }
};

}  // namespace

Report verify_hopf_axioms(const PairingData& p) {
  Report rep;
  rep.suite = "hopf";
  int M = p.M;
  const auto& m = p.metric;
  auto words2 = words_upto(M, 2);
  {
    Stopwatch sw;
    Tally t;
    for (auto& w : words2) {
      GroupWord g{{w, Scalar(1)}};
      auto d = coproduct(g, M);
      MultiWord left, right;
      for (auto& [pair, v] : d) {
        GroupWord a{{pair[0], Scalar(1)}}, b{{pair[1], Scalar(1)}};
        for (auto& [pa, va] : coproduct(a, M)) left[{pa[0], pa[1], pair[1]}] += v * va;
        for (auto& [pb, vb] : coproduct(b, M)) right[{pair[0], pb[0], pb[1]}] += v * vb;
      }
      if (left != right) t.fail(word_str(w));
    }
    rep.add(Check{"coassociativity", t.pass, t.witness, sw.seconds()});
  }
  {
    Stopwatch sw;
    Tally t;
    for (auto& w : words2) {
      GroupWord g{{w, Scalar(1)}};
      GroupWord l, r;
      for (auto& [pair, v] : coproduct(g, M)) {
        gw_add(l, GroupWord{{pair[1], v * counit(pair[0])}});
        gw_add(r, GroupWord{{pair[0], v * counit(pair[1])}});
      }
      if (l != g || r != g) t.fail(word_str(w));
    }
    rep.add(Check{"counit", t.pass, t.witness, sw.seconds()});
  }
  {
    Stopwatch sw;
    Tally t;
    for (int a = 1; a <= M; ++a)
      for (int b = 1; b <= M; ++b) {
        GroupWord left, right;
        for (int c = 1; c <= M; ++c) {
          gw_add(left, gw_mul(antipode(gw_letter(a, c), m), gw_letter(c, b)));
          gw_add(right, gw_mul(gw_letter(a, c), antipode(gw_letter(c, b), m)));
        }
        GroupWord lr, rr;
        GroupWord expect = a == b ? gw_identity() : GroupWord{};
        if (!reduce_ctt_lower(left, m, lr) || lr != expect) t.fail("m(kappa x id)Delta T^" + std::to_string(a) + "_" + std::to_string(b));
        if (!reduce_ctt_upper(right, m, rr) || rr != expect) t.fail("m(id x kappa)Delta T^" + std::to_string(a) + "_" + std::to_string(b));
      }
    rep.add(Check{"antipode axiom via orthogonality relations", t.pass, t.witness, sw.seconds()});
  }
  {
    Stopwatch sw;
    Tally t;
    for (auto& w : words2) {
      if (w.size() != 1) continue;
      GroupWord g{{w, Scalar(1)}};
      MultiWord lhs = coproduct(antipode(g, m), M);
      MultiWord rhs;
      for (auto& [pair, v] : coproduct(g, M)) {
        auto k0 = antipode(GroupWord{{pair[0], Scalar(1)}}, m);
        auto k1 = antipode(GroupWord{{pair[1], Scalar(1)}}, m);
        for (auto& [w1, v1] : k1)
          for (auto& [w0, v0] : k0) rhs[{w1, w0}] += v * v1 * v0;
      }
      for (auto it = rhs.begin(); it != rhs.end();) it = it->second.is_zero() ? rhs.erase(it) : std::next(it);
      if (lhs != rhs) t.fail(word_str(w));
      if (counit(antipode(g, m)) != counit(g)) t.fail("counit of kappa " + word_str(w));
    }
    rep.add(Check{"Delta kappa = tau (kappa x kappa) Delta", t.pass, t.witness, sw.seconds()});
  }
  {
    Stopwatch sw;
    Tally t;
    for (int a = 1; a <= M; ++a)
      for (int b = 1; b <= M; ++b) {
        auto k2 = antipode(antipode(gw_letter(a, b), m), m);
        GroupWord expect = gw_letter(a, b);
        expect.begin()->second = m.d[a] / m.d[b];
        if (k2 != expect) t.fail("kappa^2 T^" + std::to_string(a) + "_" + std::to_string(b));
      }
    for (auto& w : words2) {
      if (w.size() != 2) continue;
      GroupWord g{{w, Scalar(1)}};
      auto lhs = antipode(g, m);
      auto rhs = gw_mul(antipode(GroupWord{{Word{w[1]}, Scalar(1)}}, m), antipode(GroupWord{{Word{w[0]}, Scalar(1)}}, m));
      if (lhs != rhs) t.fail("kappa(ab) " + word_str(w));
    }
    rep.add(Check{"kappa^2 = D T D^{-1} and antimultiplicativity", t.pass, t.witness, sw.seconds()});
  }
  {
    Stopwatch sw;
    Tally t;
    int n = M * M;
    auto fI = p.f.on_word({});
    auto chiI = p.chi_on_word({});
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j)
        if (fI.get(i, j) != Scalar(i == j ? 1 : 0)) t.fail("f(I)");
      if (!chiI[i].is_zero()) t.fail("chi(I)");
    }
    for (int a = 0; a < M; ++a)
      for (int b = 0; b < M; ++b)
        if (p.Lp.eval(a, b, Word{}) != Scalar(a == b ? 1 : 0) || p.Lm.eval(a, b, Word{}) != Scalar(a == b ? 1 : 0)) t.fail("L(I)");
    rep.add(Check{"counits of L, f, chi", t.pass, t.witness, sw.seconds()});
  }
  {
    // kappa'(f^k_j) f^j_i = delta eps, with kappa'(phi)(a) = phi(kappa(a)).
    Stopwatch sw;
    Tally t;
    int n = M * M;
    for (auto& w : words2) {
      if (w.size() > 1) continue;
      GroupWord g{{w, Scalar(1)}};
      SparseMatrix<Scalar> left(n), right(n);
      auto f_of = [&](const Word& x) {
        SparseMatrix<Scalar> acc(n);
        for (auto& [kw, kv] : antipode(GroupWord{{x, Scalar(1)}}, m)) acc = acc + p.f.on_word(kw).scaled(kv);
        return acc;
      };
      for (auto& [pair, v] : coproduct(g, M)) {
        left = left + (f_of(pair[0]) * p.f.on_word(pair[1])).scaled(v);
        right = right + (p.f.on_word(pair[0]) * f_of(pair[1])).scaled(v);
      }
      auto expect = SparseMatrix<Scalar>::identity(n).scaled(counit(w));
      if (!(left - expect).is_zero_matrix() || !(right - expect).is_zero_matrix()) t.fail(word_str(w));
    }
    rep.add(Check{"kappa'(f) is the convolution inverse of f", t.pass, t.witness, sw.seconds()});
  }
  {
    // chi_i(ab) = chi_j(a) f^j_i(b) + eps(a) chi_i(b)
    Stopwatch sw;
    Tally t;
    int n = M * M;
    for (int c1 = 1; c1 <= M; ++c1)
      for (int d1 = 1; d1 <= M; ++d1)
        for (int c2 = 1; c2 <= M; ++c2)
          for (int d2 = 1; d2 <= M; ++d2) {
            Word a{{c1, d1}}, b{{c2, d2}}, ab{{c1, d1}, {c2, d2}};
            auto lhs = p.chi_on_word(ab);
            auto ca = p.chi_on_word(a), cb = p.chi_on_word(b);
            auto fb = p.f.on_word(b);
            Scalar ea = counit(a);
            for (int i = 0; i < n; ++i) {
              Scalar rhs = ea * cb[i];
              for (int j = 0; j < n; ++j)
                if (!ca[j].is_zero()) rhs += ca[j] * fb.get(j, i);
              if (rhs != lhs[i]) t.fail(word_str(ab));
            }
          }
    rep.add(Check{"coproduct of chi", t.pass, t.witness, sw.seconds()});
  }
  return rep;
}

Report verify_RLL_CLL(const PairingData& p, int maxlen) {
  Report rep;
  rep.suite = "RLL/CLL";
  int M = p.M;
  const auto& m = p.metric;
  R4<Scalar> R(p.R);
  for (int k = 1; k <= maxlen; ++k) {
    auto Lp = p.Lp.rep(k), Lm = p.Lm.rep(k);
    int dim = Lp[0].size();
    auto I = SparseMatrix<Scalar>::identity(dim);
    auto L = [&](const std::vector<SparseMatrix<Scalar>>& fam, int a, int b) -> const SparseMatrix<Scalar>& {
      return fam[(a - 1) * M + (b - 1)];
    };
    std::string len = " on words of length " + std::to_string(k);
    // R^{AB}_{EF} X^F_D Y^E_C = Y^A_E X^B_F R^{EF}_{CD}
    auto rll = [&](const std::vector<SparseMatrix<Scalar>>& X, const std::vector<SparseMatrix<Scalar>>& Y) {
      Tally t;
      for (int a = 1; a <= M; ++a)
        for (int b = 1; b <= M; ++b)
          for (int c = 1; c <= M; ++c)
            for (int d = 1; d <= M; ++d) {
              SparseMatrix<Scalar> res(dim);
              for (auto& e : R.up(a, b)) res = res + (L(X, e.y, d) * L(Y, e.x, c)).scaled(e.v);
              for (auto& e : R.lo(c, d)) res = res - (L(Y, a, e.x) * L(X, b, e.y)).scaled(e.v);
              if (!res.is_zero_matrix()) t.fail(index_str({a, b, c, d}) + " " + first_witness(res, M));
            }
      return t;
    };
    {
      Stopwatch sw;
      auto t = rll(Lp, Lp);
      rep.add(Check{"RLL for L+" + len, t.pass, t.witness, sw.seconds()});
    }
    {
      Stopwatch sw;
      auto t = rll(Lm, Lm);
      rep.add(Check{"RLL for L-" + len, t.pass, t.witness, sw.seconds()});
    }
    {
      Stopwatch sw;
      auto t = rll(Lp, Lm);
      rep.add(Check{"mixed RLL R L+_2 L-_1 = L-_1 L+_2 R" + len, t.pass, t.witness, sw.seconds()});
    }
    // C^{AB} L^C_B L^D_A = C^{DC} eps and C_{AB} L^B_C L^A_D = C_{DC} eps
    for (auto* fam : {&Lp, &Lm}) {
      Stopwatch sw;
      Tally t;
      for (int c = 1; c <= M; ++c)
        for (int d = 1; d <= M; ++d) {
          SparseMatrix<Scalar> x(dim), y(dim);
          for (int a = 1; a <= M; ++a) {
            int ap = M + 1 - a;
            // A' = B in the first sum, B' = A in the second
            x = x + (L(*fam, c, ap) * L(*fam, d, a)).scaled(m.up[a][ap]);
            y = y + (L(*fam, ap, c) * L(*fam, a, d)).scaled(m.lo[a][ap]);
          }
          x = x - I.scaled(m.up[d][c]);
          y = y - I.scaled(m.lo[d][c]);
          if (!x.is_zero_matrix() || !y.is_zero_matrix()) t.fail(index_str({c, d}));
        }
      rep.add(Check{std::string("CLL for ") + (fam == &Lp ? "L+" : "L-") + len, t.pass, t.witness, sw.seconds()});
    }
    // kappa'(L^A_B) = C^{DA} L^C_D C_{BC} is a two-sided inverse of L and
    // agrees with L composed with kappa.
    for (auto* fam : {&Lp, &Lm}) {
      Stopwatch sw;
      Tally t;
      const FunctionalFamily& base = fam == &Lp ? p.Lp : p.Lm;
      auto kap = [&](int a, int b) { return L(*fam, M + 1 - b, M + 1 - a).scaled(m.up[M + 1 - a][a] * m.lo[b][M + 1 - b]); };
      for (int a = 1; a <= M; ++a)
        for (int b = 1; b <= M; ++b) {
          SparseMatrix<Scalar> x(dim), y(dim);
          for (int g = 1; g <= M; ++g) {
            x = x + kap(a, g) * L(*fam, g, b);
            y = y + L(*fam, a, g) * kap(g, b);
          }
          if (a == b) {
            x = x - I;
            y = y - I;
          }
          if (!x.is_zero_matrix() || !y.is_zero_matrix()) t.fail("inverse " + index_str({a, b}));
          // entry (u, v) of kap(a, b) against L^A_B(kappa(word(u, v)))
          auto ka = kap(a, b);
          std::vector<int> ups(k), los(k);
          for (int u = 0; u < dim; ++u)
            for (int v = 0; v < dim; ++v) {
              Word w;
              int uu = u, vv = v;
              for (int s = k - 1; s >= 0; --s) {
                ups[s] = uu % M + 1;
                los[s] = vv % M + 1;
                uu /= M;
                vv /= M;
              }
              for (int s = 0; s < k; ++s) w.push_back({ups[s], los[s]});
              Scalar viaKappa = base.eval(a - 1, b - 1, antipode(GroupWord{{w, Scalar(1)}}, m));
              if (viaKappa != ka.get(u, v)) t.fail("kappa' " + index_str({a, b}) + " on " + word_str(w));
            }
        }
      rep.add(Check{std::string("antipode of ") + (fam == &Lp ? "L+" : "L-") + len, t.pass, t.witness, sw.seconds()});
    }
  }
  return rep;
}

}  // namespace qg
