#include "qg/qplane.hpp"

#include <random>

#include "qg/errors.hpp"

namespace qg {

namespace {

std::string num(int a) { return std::to_string(a); }

Check named(std::string n) {
  Check c;
  c.name = std::move(n);
  return c;
}

void word_add(ISOWord& acc, const ISOProduct& p, const Scalar& v) {
  if (v.is_zero()) return;
  auto [it, fresh] = acc.emplace(p, v);
  if (!fresh) {
    it->second += v;
    if (it->second.is_zero()) acc.erase(it);
  }
}

ISOWord scaled(const ISOWord& w, const Scalar& c) {
  ISOWord out;
  iso_add(out, w, c);
  return out;
}

ISOWord single(const ISOLetter& l, const Scalar& c = Scalar(1)) { return ISOWord{{{l}, c}}; }

void require_plane(const ISOParams& iso) {
  if (iso.symplectic) throw NotImplemented("symplectic planes are not covered");
  if (!iso.r_one) throw NonReducible("the plane calculus is built at r = 1");
}

// V^c g = phase g V^c for a big letter g = T^C_D: q_{c D} / q_{* D}.
Scalar v_phase(const ISOParams& iso, int c, const ISOProduct& p) {
  Scalar ph(1);
  for (auto& l : p) {
    int D = iso_to_big(iso.N, l).second;
    ph *= iso.big.q(c + 1, D) / iso.big.q(iso.M, D);
  }
  return ph;
}

ISOWord chi_mono(const ISOParams& iso, int c, const ISOProduct& p) {
  if (p.empty()) return {};
  ISOProduct rest(p.begin() + 1, p.end());
  int l = p.front().a;
  Scalar qc = iso.qb(c);
  ISOWord out = iso_mul(single(iso_T(l, c), -qc * qc.pow(static_cast<int>(rest.size()))), ISOWord{{rest, Scalar(1)}});
  iso_add(out, iso_mul(single(iso_x(l)), chi_mono(iso, c, rest)));
  return normal_form(out, iso);
}

ISOWord partial_mono(const ISOParams& iso, Side side, int s, const ISOProduct& p) {
  if (p.empty()) return {};
  ISOWord out;
  if (side == Side::left) {
    ISOProduct b(p.begin(), p.end() - 1);
    int a = p.back().a;
    if (a == s) word_add(out, b, Scalar(1));
    iso_add(out, iso_mul(partial_mono(iso, side, s, b), single(iso_x(a))), iso.q(s, a));
  } else {
    ISOProduct b(p.begin() + 1, p.end());
    int a = p.front().a;
    if (a == s) word_add(out, b, Scalar(1));
    iso_add(out, iso_mul(single(iso_x(a)), partial_mono(iso, side, s, b)), iso.q(a, s));
  }
  return normal_form(out, iso);
}

// Ordered plane monomials of degree 1..max_len.
std::vector<ISOProduct> plane_monomials(int N, int max_len) {
  std::vector<ISOProduct> out, layer{{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<ISOProduct> next;
    for (auto& p : layer)
      for (int a = p.empty() ? 1 : p.back().a; a <= N; ++a) {
        ISOProduct q = p;
        q.push_back(iso_x(a));
        next.push_back(q);
      }
    layer = next;
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

// Right tensor factor of a coaction: x's then dx's, with
// x^a x^b = q_ab x^b x^a, dx^a x^b = q_ab x^b dx^a, dx^a ^ dx^b = -q_ab dx^b ^ dx^a.
using Item = std::pair<bool, int>;  // (is dx, index)
using Coaction = std::map<std::pair<ISOProduct, std::vector<Item>>, Scalar>;

bool canon_items(const ISOParams& iso, std::vector<Item>& it, Scalar& c) {
  for (bool moved = true; moved;) {
    moved = false;
    for (std::size_t i = 0; i + 1 < it.size(); ++i) {
      auto [d1, a] = it[i];
      auto [d2, b] = it[i + 1];
      if (d1 && d2 && a == b) return false;
      bool swap = (d1 && !d2) || (d1 == d2 && a > b);
      if (!swap) continue;
      Scalar ph = iso.q(a, b);
      if (d1 && d2) ph = -ph;
      c *= ph;
      std::swap(it[i], it[i + 1]);
      moved = true;
    }
  }
  return true;
}

// delta(item) = T^a_c (x) item(c), extended multiplicatively.
Coaction coact(const ISOParams& iso, const std::vector<Item>& items, const Scalar& c0) {
  std::map<std::pair<ISOProduct, std::vector<Item>>, Scalar> acc{{{{}, {}}, c0}};
  for (auto [d, a] : items) {
    std::map<std::pair<ISOProduct, std::vector<Item>>, Scalar> next;
    for (auto& [k, v] : acc)
      for (int c = 1; c <= iso.N; ++c) {
        auto key = k;
        key.first.push_back(iso_T(a, c));
        key.second.push_back({d, c});
        next[key] += v;
      }
    acc = std::move(next);
  }
  Coaction out;
  for (auto& [k, v] : acc) {
    auto items2 = k.second;
    Scalar c = v;
    if (!canon_items(iso, items2, c)) continue;
    for (auto& [p, x] : normal_form(ISOWord{{k.first, Scalar(1)}}, iso)) out[{p, items2}] += c * x;
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

void add_into(Coaction& acc, const Coaction& x, const Scalar& c) {
  for (auto& [k, v] : x) {
    acc[k] += c * v;
    if (acc[k].is_zero()) acc.erase(k);
  }
}

std::string form_str(const std::map<int, ISOWord>& f, const std::string& basis) {
  std::string s;
  for (auto& [k, w] : f) s += (s.empty() ? "" : " + ") + ("[" + iso_word_str(w) + "] " + basis + num(k));
  return s.empty() ? "0" : s;
}

}  // namespace

ISOWord plane_monomial(const ISOParams& iso, const std::vector<int>& letters, const Scalar& c) {
  ISOProduct p;
  for (int a : letters) {
    if (a < 1 || a > iso.N) throw ConfigError("no coordinate x^" + num(a));
    p.push_back(iso_x(a));
  }
  return normal_form(ISOWord{{p, c}}, iso);
}

ISOWord plane_normal_form(const ISOWord& w, const ISOParams& iso) {
  for (auto& [p, c] : w)
    for (auto& l : p)
      if (l.kind != ISOKind::x) throw ConfigError("not a plane element: " + iso_product_str(p));
  return normal_form(w, iso);
}

ISOWord chi_on_plane(const ISOParams& iso, int c, const ISOWord& a) {
  require_plane(iso);
  ISOWord out;
  for (auto& [p, k] : plane_normal_form(a, iso)) iso_add(out, chi_mono(iso, c, p), k);
  return out;
}

Scalar chi_value(const ISOParams& iso, int c, const ISOWord& a) { return iso_counit(chi_on_plane(iso, c, a)); }

VForm exterior_d_plane(const ISOParams& iso, const ISOWord& a) {
  VForm out;
  for (int c = 1; c <= iso.N; ++c) {
    ISOWord w = chi_on_plane(iso, c, a);
    if (!w.empty()) out[c] = w;
  }
  return out;
}

DxForm to_dx(const ISOParams& iso, const VForm& w) {
  DxForm p;
  if (w.empty()) return p;
  int c = w.begin()->first;
  Scalar qc = iso.qb(c);
  for (auto& [prod, k] : w.begin()->second) {
    if (prod.empty() || prod.front().kind != ISOKind::T || prod.front().b != c)
      throw NonReducible("not a vielbein expansion: " + iso_product_str(prod));
    int s = prod.front().a;
    ISOProduct X(prod.begin() + 1, prod.end());
    // X T^s_c = psi T^s_c X
    ISOProduct xt = X;
    xt.push_back(prod.front());
    ISOWord nf = normal_form(ISOWord{{xt, Scalar(1)}}, iso);
    Scalar psi = nf.begin()->second;
    word_add(p[s], X, k / (-qc * psi));
  }
  for (auto it = p.begin(); it != p.end();) it = it->second.empty() ? p.erase(it) : std::next(it);
  // every column must agree
  for (int cc = 1; cc <= iso.N; ++cc) {
    ISOWord re;
    for (auto& [s, ps] : p) iso_add(re, iso_mul(ps, single(iso_T(s, cc))), -iso.qb(cc));
    re = normal_form(re, iso);
    auto it = w.find(cc);
    if (re != (it == w.end() ? ISOWord{} : it->second))
      throw NonReducible("vielbein components disagree at V^" + num(cc));
  }
  return p;
}

DxTwoForm exterior_d_dx(const ISOParams& iso, const DxForm& f) {
  DxTwoForm out;
  for (auto& [s, ps] : f)
    for (int t = 1; t <= iso.N; ++t) {
      if (t == s) continue;
      ISOWord d = partial_derivative(iso, Side::left, t, ps);
      if (t < s) iso_add(out[{t, s}], d);
      else iso_add(out[{s, t}], d, -iso.q(t, s));
    }
  for (auto it = out.begin(); it != out.end();) it = it->second.empty() ? out.erase(it) : std::next(it);
  return out;
}

ISOWord partial_derivative(const ISOParams& iso, Side side, int s, const ISOWord& a) {
  require_plane(iso);
  ISOWord out;
  for (auto& [p, k] : plane_normal_form(a, iso)) iso_add(out, partial_mono(iso, side, s, p), k);
  return out;
}

Report verify_plane(const ISOParams& iso, int max_len, unsigned seed) {
  require_plane(iso);
  Report rep;
  rep.suite = "plane ISO(" + num(iso.N) + ")/SO(" + num(iso.N) + ")";
  int N = iso.N;
  auto monos = plane_monomials(N, max_len);
  std::mt19937 rng(seed);
  std::vector<ISOWord> words;
  for (auto& m : monos) words.push_back(ISOWord{{m, Scalar(1)}});
  for (int k = 0; k < 20; ++k) {
    int len = 1 + static_cast<int>(rng() % max_len);
    std::vector<int> l;
    for (int i = 0; i < len; ++i) l.push_back(1 + static_cast<int>(rng() % N));
    words.push_back(plane_monomial(iso, l));
  }

  {
    // Independent route: chi * a = a_1 chi(a_2) with the limit functionals of SO(N+2).
    Stopwatch sw;
    Check c = named("chi^b_c * a = 0 and the Leibniz rule of chi_c against the coproduct, length <= 2");
    ParamOptions go = iso.big_opt;
    go.r_one = false;
    PairingData pd = build_pairing(build_rmatrix_data(make_params(iso.big.spec, go)));
    TwistedBasis t = limit_chi_basis(pd, 2);
    int M = iso.M;
    for (auto& a : plane_monomials(N, 2)) {
      ISOTensor cop = iso_coproduct(ISOWord{{a, Scalar(1)}}, iso);
      std::map<int, ISOWord> byk;
      for (auto& [lr, v] : cop) {
        Word w;
        for (auto& l : lr.second) w.push_back(iso_to_big(N, l));
        const auto& vals = t.chi.at(w);
        for (int k = 0; k < M * M; ++k)
          if (!vals[k].is_zero()) word_add(byk[k], lr.first, v * vals[k]);
      }
      for (int b = 1; b <= N && c.pass; ++b)
        for (int cc = 1; cc <= N; ++cc) {
          int k = adj_index(M, b + 1, cc + 1);
          if (byk.count(k) && !byk[k].empty()) {
            c.pass = false;
            c.witness = "chi^" + num(b) + "_" + num(cc) + " * " + iso_product_str(a) + " = " + iso_word_str(byk[k]);
            break;
          }
        }
      for (int cc = 1; cc <= N && c.pass; ++cc) {
        int k = adj_index(M, M, cc + 1);
        ISOWord got = normal_form(byk[k], iso), want = chi_on_plane(iso, cc, ISOWord{{a, Scalar(1)}});
        if (got != want) {
          c.pass = false;
          c.witness = "chi_" + num(cc) + " * " + iso_product_str(a) + ": " + iso_word_str(got) + " vs " + iso_word_str(want);
        }
      }
      if (!c.pass) break;
    }
    c.seconds = sw.seconds();
    rep.add(c);
  }

  {
    Check c = named("chi_c(x^a) = -q_{c*} delta^a_c");
    for (int cc = 1; cc <= N && c.pass; ++cc)
      for (int a = 1; a <= N; ++a) {
        Scalar want = a == cc ? -iso.qb(cc) : Scalar(0);
        if (chi_value(iso, cc, plane_monomial(iso, {a})) != want) {
          c.pass = false;
          c.witness = "chi_" + num(cc) + "(x^" + num(a) + ")";
          break;
        }
      }
    rep.add(c);
  }

  {
    // (dx^a) x^b with V^c moved right, against q_ab x^b dx^a
    Stopwatch sw;
    Check c = named("dx^a x^b = q_ab x^b dx^a in the vielbein basis");
    for (int a = 1; a <= N && c.pass; ++a)
      for (int b = 1; b <= N && c.pass; ++b) {
        VForm dxa = exterior_d_plane(iso, plane_monomial(iso, {a}));
        for (int cc = 1; cc <= N; ++cc) {
          ISOWord lhs, rhs;
          for (auto& [p, k] : dxa[cc]) iso_add(lhs, iso_mul(ISOWord{{p, k}}, single(iso_x(b), iso.qb(cc))));
          rhs = iso_mul(single(iso_x(b), iso.q(a, b)), dxa[cc]);
          if (normal_form(lhs, iso) != normal_form(rhs, iso)) {
            c.pass = false;
            c.witness = "a=" + num(a) + " b=" + num(b) + " V^" + num(cc);
            break;
          }
        }
      }
    c.seconds = sw.seconds();
    rep.add(c);
  }

  std::vector<DxForm> left(words.size());
  {
    Stopwatch sw;
    Check c = named("da = (chi_c * a) V^c = d_s(a) dx^s, left derivatives");
    for (std::size_t i = 0; i < words.size() && c.pass; ++i) {
      VForm v = exterior_d_plane(iso, words[i]);
      DxForm want;
      for (int s = 1; s <= N; ++s) {
        ISOWord d = partial_derivative(iso, Side::left, s, words[i]);
        if (!d.empty()) want[s] = d;
      }
      DxForm got;
      try {
        got = to_dx(iso, v);
      } catch (const NonReducible& e) {
        c.pass = false;
        c.witness = iso_word_str(words[i]) + ": " + e.what();
        break;
      }
      left[i] = want;
      if (got != want) {
        c.pass = false;
        c.witness = "d(" + iso_word_str(words[i]) + "): " + form_str(got, "dx^") + " vs " + form_str(want, "dx^");
      }
    }
    c.seconds = sw.seconds();
    rep.add(c);
  }

  {
    // dx^s p = -q_{c*} T^s_c (V^c p) with V^c moved to the right
    Stopwatch sw;
    Check c = named("da = dx^s d_s(a), right derivatives");
    for (std::size_t i = 0; i < words.size() && c.pass; ++i) {
      VForm v = exterior_d_plane(iso, words[i]);
      for (int cc = 1; cc <= N; ++cc) {
        ISOWord w;
        for (int s = 1; s <= N; ++s)
          for (auto& [p, k] : partial_derivative(iso, Side::right, s, words[i]))
            iso_add(w, iso_mul(single(iso_T(s, cc)), ISOWord{{p, k}}), -iso.qb(cc) * v_phase(iso, cc, p));
        w = normal_form(w, iso);
        if (w != (v.count(cc) ? v[cc] : ISOWord{})) {
          c.pass = false;
          c.witness = "d(" + iso_word_str(words[i]) + ") along V^" + num(cc);
          break;
        }
      }
    }
    c.seconds = sw.seconds();
    rep.add(c);
  }

  {
    Stopwatch sw;
    Check c = named("left and right expansions of da agree");
    for (std::size_t i = 0; i < words.size() && c.pass; ++i)
      for (int s = 1; s <= N; ++s) {
        // dx^s x^b = q_sb x^b dx^s
        ISOWord r;
        for (auto& [p, k] : partial_derivative(iso, Side::right, s, words[i])) {
          Scalar ph(1);
          for (auto& l : p) ph *= iso.q(s, l.a);
          word_add(r, p, k * ph);
        }
        if (r != (left[i].count(s) ? left[i][s] : ISOWord{})) {
          c.pass = false;
          c.witness = iso_word_str(words[i]) + " s=" + num(s);
          break;
        }
      }
    c.seconds = sw.seconds();
    rep.add(c);
  }

  {
    Stopwatch sw;
    Check c = named("d^2 = 0");
    for (std::size_t i = 0; i < words.size() && c.pass; ++i) {
      DxTwoForm dd = exterior_d_dx(iso, left[i]);
      if (!dd.empty()) {
        c.pass = false;
        c.witness = "d^2(" + iso_word_str(words[i]) + ") at dx^" + num(dd.begin()->first.first) + " dx^" + num(dd.begin()->first.second);
      }
    }
    c.seconds = sw.seconds();
    rep.add(c);
  }

  {
    Stopwatch sw;
    Check c = named("d_r d_s = q_sr d_s d_r (left), q_rs (right)");
    for (std::size_t i = 0; i < words.size() && c.pass; ++i)
      for (int r = 1; r <= N && c.pass; ++r)
        for (int s = 1; s <= N; ++s) {
          for (Side side : {Side::left, Side::right}) {
            auto D = [&](int k, const ISOWord& w) { return partial_derivative(iso, side, k, w); };
            Scalar ph = side == Side::left ? iso.q(s, r) : iso.q(r, s);
            if (D(r, D(s, words[i])) != scaled(D(s, D(r, words[i])), ph)) {
              c.pass = false;
              c.witness = std::string(side == Side::left ? "left" : "right") + " r=" + num(r) + " s=" + num(s) + " on " + iso_word_str(words[i]);
              break;
            }
          }
          if (!c.pass) break;
        }
    c.seconds = sw.seconds();
    rep.add(c);
  }

  {
    Stopwatch sw;
    Check c = named("plane relations covariant under x -> T x");
    for (int a = 1; a <= N && c.pass; ++a)
      for (int b = 1; b <= N && c.pass; ++b) {
        struct Rel {
          std::string name;
          std::vector<Item> l, r;
          Scalar k;
        };
        std::vector<Rel> rels{{"x x", {{false, a}, {false, b}}, {{false, b}, {false, a}}, iso.q(a, b)},
                              {"dx x", {{true, a}, {false, b}}, {{false, b}, {true, a}}, iso.q(a, b)},
                              {"dx dx", {{true, a}, {true, b}}, {{true, b}, {true, a}}, -iso.q(a, b)}};
        for (auto& rel : rels) {
          // coact without canonicalizing the lhs items first
          Coaction res;
          add_into(res, coact(iso, rel.l, Scalar(1)), Scalar(1));
          add_into(res, coact(iso, rel.r, Scalar(1)), -rel.k);
          if (!res.empty()) {
            c.pass = false;
            c.witness = rel.name + " a=" + num(a) + " b=" + num(b);
            break;
          }
        }
      }
    c.seconds = sw.seconds();
    rep.add(c);
  }
  return rep;
}

QExt QExt::operator*(const QExt& o) const {
  return {a * o.a + Scalar(2) * b * o.b - c * o.c - Scalar(2) * d * o.d,
          a * o.b + b * o.a - c * o.d - d * o.c,
          a * o.c + c * o.a + Scalar(2) * (b * o.d + d * o.b),
          a * o.d + d * o.a + b * o.c + c * o.b};
}

std::string QExt::str() const {
  std::string s;
  auto part = [&](const Scalar& x, const std::string& unit) {
    if (x.is_zero()) return;
    s += (s.empty() ? "" : " + ") + ("(" + x.str() + ")" + unit);
  };
  part(a, "");
  part(b, "*sqrt2");
  part(c, "*i");
  part(d, "*i*sqrt2");
  return s.empty() ? "0" : s;
}

XiBasis xi_basis(int N) {
  if (N % 2) throw BadDimension("the xi coordinates need an even dimension");
  XiBasis xb;
  xb.N = N;
  int n = xb.n = N / 2;
  auto P = [&](int a) { return N + 1 - a; };
  xb.S.assign(N + 1, std::vector<QExt>(N + 1));
  xb.Sinv = xb.S;
  Scalar h(mpq_class(1, 2));
  QExt r2{0, h, 0, 0};   // 1/sqrt2
  QExt ir2{0, 0, 0, h};  // i/sqrt2
  for (int a = 1; a <= N; ++a) {
    if (a <= n) {
      xb.S[a][a] = r2;
      xb.S[a][P(a)] = r2;
    } else if (a == n + 1) {
      xb.S[a][n] = ir2;
      xb.S[a][n + 1] = -ir2;
    } else {
      xb.S[a][a] = -r2;
      xb.S[a][P(a)] = r2;
    }
  }
  // x^a = (xi^a + xi^{a'}) / sqrt2, x^{a'} = (xi^a - xi^{a'}) / sqrt2 for a < n;
  // x^n = (xi^n - i xi^{n+1}) / sqrt2, x^{n+1} = (xi^n + i xi^{n+1}) / sqrt2.
  for (int a = 1; a < n; ++a) {
    xb.Sinv[a][a] = r2;
    xb.Sinv[a][P(a)] = r2;
    xb.Sinv[P(a)][a] = r2;
    xb.Sinv[P(a)][P(a)] = -r2;
  }
  xb.Sinv[n][n] = r2;
  xb.Sinv[n][n + 1] = -ir2;
  xb.Sinv[n + 1][n] = r2;
  xb.Sinv[n + 1][n + 1] = ir2;

  xb.inverse_ok = true;
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) {
      QExt acc;
      for (int k = 1; k <= N; ++k) acc += xb.S[i][k] * xb.Sinv[k][j];
      if (acc != QExt(Scalar(i == j ? 1 : 0))) xb.inverse_ok = false;
    }
  // G_cd = Sinv_ac C_ab Sinv_bd with C_ab = delta_{b a'}
  xb.metric.assign(N + 1, std::vector<QExt>(N + 1));
  for (int c = 1; c <= N; ++c)
    for (int d = 1; d <= N; ++d)
      for (int a = 1; a <= N; ++a) xb.metric[c][d] += xb.Sinv[a][c] * xb.Sinv[P(a)][d];
  xb.diagonal = true;
  xb.signature.assign(N + 1, 0);
  for (int c = 1; c <= N; ++c)
    for (int d = 1; d <= N; ++d) {
      const QExt& g = xb.metric[c][d];
      if (c != d) {
        if (!g.is_zero()) xb.diagonal = false;
      } else if (g == QExt(Scalar(1))) {
        xb.signature[c] = 1;
      } else if (g == QExt(Scalar(-1))) {
        xb.signature[c] = -1;
      } else {
        xb.diagonal = false;
      }
    }
  // xi* = conj(S) x* with (x^a)* = x^{s a}
  auto sg = [&](int a) { return a == n ? n + 1 : a == n + 1 ? n : a; };
  xb.real = true;
  for (int a = 1; a <= N; ++a)
    for (int b = 1; b <= N; ++b)
      if (xb.S[a][sg(b)].conj() != xb.S[a][b]) xb.real = false;
  return xb;
}

nlohmann::json xi_relations(const ISOParams& iso, const XiBasis& xb) {
  int N = iso.N;
  if (xb.N != N) throw BadDimension("xi basis and plane dimensions differ");
  nlohmann::json out = nlohmann::json::array();
  for (int a = 1; a <= N; ++a)
    for (int b = a + 1; b <= N; ++b) {
      std::map<std::pair<int, int>, QExt> t;
      QExt qab(iso.q(a, b));
      for (int c = 1; c <= N; ++c)
        for (int d = 1; d <= N; ++d) {
          t[{c, d}] += xb.Sinv[a][c] * xb.Sinv[b][d];
          t[{d, c}] += -(qab * xb.Sinv[b][d] * xb.Sinv[a][c]);
        }
      nlohmann::json terms = nlohmann::json::array();
      for (auto& [cd, v] : t)
        if (!v.is_zero()) terms.push_back({{"word", {"xi^" + num(cd.first), "xi^" + num(cd.second)}}, {"coeff", v.str()}});
      out.push_back({{"relation", "x^" + num(a) + " x^" + num(b) + " - q" + num(a) + num(b) + " x^" + num(b) + " x^" + num(a)},
                     {"terms", terms}});
    }
  return out;
}

nlohmann::json export_plane(const ISOParams& iso) {
  require_plane(iso);
  int N = iso.N;
  auto x = [](int a) { return "x^" + num(a); };
  auto dx = [](int a) { return "dx^" + num(a); };
  RelationSet coords{"coordinates", {}}, dxx{"dx x", {}}, wedge{"dx wedge dx", {}}, vx{"V x", {}}, viel{"vielbein", {}},
      chis{"chi on coordinates", {}}, parts{"partial derivatives", {}};
  for (int a = 1; a <= N; ++a)
    for (int b = 1; b <= N; ++b) {
      if (a != b) coords.add({{x(a), x(b)}, {x(b), x(a)}, iso.q(a, b), {}});
      dxx.add({{dx(a), x(b)}, {x(b), dx(a)}, iso.q(a, b), {}});
      if (a != b) wedge.add({{dx(a), dx(b)}, {dx(b), dx(a)}, -iso.q(a, b), {}});
      vx.add({{"V^" + num(a), x(b)}, {x(b), "V^" + num(a)}, iso.qb(a), {}});
    }
  for (int a = 1; a <= N; ++a) {
    Relation r{{dx(a)}, {}, Scalar(0), {}};
    for (int c = 1; c <= N; ++c) r.terms.push_back({-iso.qb(c), {"T^" + num(a) + "_" + num(c), "V^" + num(c)}});
    viel.add(std::move(r));
    for (int c = 1; c <= N; ++c) {
      Relation rc{{"chi_" + num(c) + "(" + x(a) + ")"}, {}, Scalar(0), {}};
      if (a == c) rc.terms.push_back({-iso.qb(c), {}});
      chis.add(std::move(rc));
    }
  }
  for (int r = 1; r <= N; ++r)
    for (int s = 1; s <= N; ++s) {
      if (r == s) continue;
      parts.add({{"dleft_" + num(r), "dleft_" + num(s)}, {"dleft_" + num(s), "dleft_" + num(r)}, iso.q(s, r), {}});
      parts.add({{"dright_" + num(r), "dright_" + num(s)}, {"dright_" + num(s), "dright_" + num(r)}, iso.q(r, s), {}});
    }
  nlohmann::json q = nlohmann::json::object();
  for (int a = 1; a <= N; ++a)
    for (int b = a + 1; b <= N; ++b) q["q" + num(a) + num(b)] = iso.q(a, b).to_json();
  for (int a = 1; a <= N; ++a) q["q" + num(a) + "b"] = iso.qb(a).to_json();
  nlohmann::json j{{"plane", "ISO(" + num(N) + ")/SO(" + num(N) + ")"},
                   {"params", {{"N", N}, {"r", 1}, {"free", iso.names}, {"q", q}}},
                   {"coordinates", coords.to_json()},
                   {"dx_x", dxx.to_json()},
                   {"wedge", wedge.to_json()},
                   {"V_x", vx.to_json()},
                   {"vielbein", viel.to_json()},
                   {"chi", chis.to_json()},
                   {"derivatives", parts.to_json()}};
  if (N % 2 == 0) {
    XiBasis xb = xi_basis(N);
    nlohmann::json S = nlohmann::json::array(), G = nlohmann::json::array();
    for (int a = 1; a <= N; ++a) {
      nlohmann::json row = nlohmann::json::array(), grow = nlohmann::json::array();
      for (int b = 1; b <= N; ++b) {
        row.push_back(xb.S[a][b].str());
        grow.push_back(xb.metric[a][b].str());
      }
      S.push_back(row);
      G.push_back(grow);
    }
    std::vector<int> sig(xb.signature.begin() + 1, xb.signature.end());
    j["xi"] = {{"map", S}, {"metric", G}, {"signature", sig}, {"commutations", xi_relations(iso, xb)}};
  }
  return j;
}

}  // namespace qg
