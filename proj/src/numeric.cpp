#include "qg/numeric.hpp"

#include <cmath>
#include <cstdio>

namespace qg {

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

// max |numeric - exact| over the largest exact entry
// The exact side is evaluated in long double at the same point, so its own
// rounding stays well below what is being measured.
double compare(const SparseMatrix<Scalar>& ex, const SparseMatrix<Complex>& nu, const std::vector<Complex>& pt_d) {
  std::vector<std::complex<long double>> pt(pt_d.begin(), pt_d.end());
  double diff = 0, scale = 0;
  for (int i = 0; i < ex.size(); ++i) {
    for (auto& [j, v] : ex.row(i)) {
      std::complex<long double> e = v.evaluate(pt);
      std::complex<long double> x = nu.get(i, j);
      scale = std::max(scale, static_cast<double>(std::abs(e)));
      diff = std::max(diff, static_cast<double>(std::abs(x - e)));
    }
    for (auto& [j, v] : nu.row(i))
      if (ex.get(i, j).is_zero()) diff = std::max(diff, std::abs(v));
  }
  return scale > 0 ? diff / scale : diff;
}

double max_abs(const SparseMatrix<Complex>& m) {
  double w = 0;
  for (int i = 0; i < m.size(); ++i)
    for (auto& [j, v] : m.row(i)) w = std::max(w, std::abs(v));
  return w;
}

struct Worst {
  double err = 0;
  int trial = -1;
  void see(double e, int t) {
    if (e > err || trial < 0) {
      err = std::max(err, e);
      trial = t;
    }
  }
};

Check finish(std::string name, const Worst& w, double tol, double secs) {
  Check c;
  c.name = std::move(name);
  c.pass = w.err < tol;
  c.witness = "max error " + sci(w.err) + " (trial " + std::to_string(w.trial) + ")";
  c.seconds = secs;
  return c;
}

}  // namespace

std::vector<Complex> random_unit_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ph(-M_PI, M_PI);
  std::vector<Complex> pt(var_count());
  for (auto& z : pt) z = std::polar(1.0, ph(rng));
  return pt;
}

Report numeric_crosscheck(const RMatrixData& d, const CalculusData* cd, const NumericOptions& opt) {
  Report rep;
  rep.suite = "numeric backend " + series_label(d.params.spec);
  int M = d.params.N();
  int ltrials = opt.lambda_trials < 0 ? opt.trials : opt.lambda_trials;
  std::mt19937_64 rng(opt.seed), rows(opt.seed + 0x9e3779b9u);
  SparseMatrix<Scalar> Rm = pair_matrix(d.R);
  Worst wR, wY, wP, wId, wL, wS;
  double tR = 0, tY = 0, tP = 0, tId = 0, tL = 0, tS = 0;
  for (int t = 0; t < opt.trials; ++t) {
    auto pt = random_unit_point(rng);
    auto np = numeric_params(d.params, pt);
    Stopwatch s1;
    auto R = build_R(np);
    wR.see(compare(Rm, pair_matrix(R), pt), t);
    tR += s1.seconds();

    Stopwatch s2;
    double scale = 0;
    for (auto& [k, v] : R.raw()) scale = std::max(scale, std::abs(v));
    double ybe = 0;
    auto res = ybe_residual(R);
    for (auto& [k, v] : res.raw()) ybe = std::max(ybe, std::abs(v));
    wY.see(ybe / (scale * scale * scale), t);
    tY += s2.seconds();

    Stopwatch s3;
    auto m = build_metric(np);
    auto Rhat = build_Rhat(R);
    auto P = build_projectors(np, Rhat, m);
    wP.see(std::max({compare(d.proj.PS, P.PS, pt), compare(d.proj.PA, P.PA, pt), compare(d.proj.P0, P.P0, pt)}), t);
    tP += s3.seconds();

    Stopwatch s4;
    auto I = SparseMatrix<Complex>::identity(M * M);
    double nS = max_abs(P.PS), nA = max_abs(P.PA), n0 = max_abs(P.P0);
    double id = max_abs(P.PS + P.PA + P.P0 - I) / std::max({1.0, nS, nA, n0});
    std::vector<std::pair<const SparseMatrix<Complex>*, double>> ps{{&P.PS, nS}, {&P.PA, nA}, {&P.P0, n0}};
    for (auto& [a, na] : ps)
      for (auto& [b, nb] : ps)
        if (a != b) id = std::max(id, max_abs(*a * *b) / (na * nb));
    Complex c1 = np.r(), c2 = -np.rinv(), c3 = cubic_root(np);
    auto cubic = (Rhat - I.scaled(c1)) * (Rhat - I.scaled(c2)) * (Rhat - I.scaled(c3));
    double nR = max_abs(Rhat);
    id = std::max(id, max_abs(cubic) / ((nR + std::abs(c1)) * (nR + std::abs(c2)) * (nR + std::abs(c3))));
    wId.see(id, t);
    tId += s4.seconds();

    if (cd && t < ltrials) {
      Stopwatch s5;
      auto Rinv = build_R(inverted_params(np));
      auto L = build_Lambda(R, Rinv, m);
      wL.see(compare(cd->Lambda, L, pt), t);
      tL += s5.seconds();
      Stopwatch s6;
      auto spec = lambda_spectrum(np);
      double bound = 1, nL = max_abs(L);
      for (auto& c : spec) bound *= nL + std::abs(c);
      int n2 = L.size();
      for (std::size_t k = 0; k < opt.spectral_rows; ++k) {
        int row = static_cast<int>(rows() % static_cast<unsigned>(n2));
        double mx = 0;
        for (auto& [j, v] : spectral_row(L, spec, row)) mx = std::max(mx, std::abs(v));
        wS.see(mx / bound, t);
      }
      tS += s6.seconds();
    }
  }
  rep.add(finish("R entries, numeric vs exact", wR, opt.tol, tR));
  rep.add(finish("Yang-Baxter residual, numeric", wY, opt.tol, tY));
  rep.add(finish("projector entries, numeric vs exact", wP, opt.tol, tP));
  rep.add(finish("P_S + P_A + P_0 = I, orthogonality and cubic, numeric", wId, opt.tol, tId));
  if (cd) {
    rep.add(finish("Lambda entries, numeric vs exact", wL, opt.tol, tL));
    rep.add(finish("Lambda seven-factor equation, numeric rows", wS, opt.tol, tS));
  }
  return rep;
}

}  // namespace qg
