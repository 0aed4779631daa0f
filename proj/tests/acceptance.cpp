// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "classical_iso.hpp"
#include "qg/classical_limit.hpp"
#include "qg/iso.hpp"
#include "qg/numeric.hpp"
#include "qg/qplane.hpp"

using namespace qg;

namespace {

struct Case {
  SeriesSpec spec;
  RMatrixData d;
  std::unique_ptr<CalculusData> cd;
  std::unique_ptr<PairingData> pd;

  Case(char s, int M) : spec(build_series(s, M)), d(build_rmatrix_data(make_params(spec))) {}
  CalculusData& calc() {
    if (!cd) cd = std::make_unique<CalculusData>(build_calculus(d, true));
    return *cd;
  }
  PairingData& pairing() {
    if (!pd) pd = std::make_unique<PairingData>(build_pairing(d));
    return *pd;
  }
};

std::map<std::string, std::unique_ptr<Case>> cases;

Case& get(char s, int M) {
  std::string k = std::string(1, s) + std::to_string(M);
  auto& c = cases[k];
  if (!c) c = std::make_unique<Case>(s, M);
  return *c;
}

std::string label(const Case& c) { return series_label(c.spec); }

std::string fmt(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.2f", x);
  return b;
}

// Failing checks of a report, or "".
std::string failures(const Report& r) {
  std::string s;
  for (auto& c : r.checks)
    if (!c.pass && !c.expected_failure) s += (s.empty() ? "" : "; ") + c.name + " [" + c.witness + "]";
  return s;
}

const Check* need(const Report& r, const std::string& name, std::string& err) {
  const Check* c = r.find(name);
  if (!c) err += "missing check '" + name + "'; ";
  return c;
}

struct Result {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    pass = false;
    detail += (detail.empty() ? "" : "; ") + why;
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

const std::vector<std::pair<char, int>> kAll{{'B', 3}, {'B', 5}, {'C', 4}, {'C', 6}, {'D', 4}, {'D', 6}};

Result yang_baxter() {
  Result r;
  for (auto [s, M] : kAll) {
    Stopwatch sw;
    Case c(s, M);  // fresh, so the time covers construction
    auto res = ybe_residual(c.d.R);
    double t = sw.seconds();
    if (res.nnz()) r.fail(label(c) + " residual at " + first_witness(res));
    if (t > 300) r.fail(label(c) + " took " + fmt(t) + " s");
    r.note(label(c) + " " + fmt(t) + " s");
  }
  return r;
}

Result projectors() {
  Result r;
  for (auto [s, M] : kAll) {
    Case& c = get(s, M);
    Report rep = verify_rmatrix_suite(c.d);
    std::string err;
    for (auto* n : {"projector completeness", "projector orthogonality and idempotency", "characteristic cubic"})
      if (auto* k = need(rep, n, err); k && !k->pass) r.fail(label(c) + ": " + n + " [" + k->witness + "]");
    if (!err.empty()) r.fail(err);
  }
  return r;
}

Result spectral() {
  Result r;
  for (auto [s, M] : std::vector<std::pair<char, int>>{{'C', 4}, {'D', 4}}) {
    Case& c = get(s, M);
    Check k = spectral_check(c.calc(), {});
    if (!k.pass) r.fail(label(c) + " all rows: " + k.witness);
    else r.note(label(c) + " all " + std::to_string(M * M * M * M) + " rows");
  }
  std::mt19937_64 rng(11);
  for (auto [s, M] : std::vector<std::pair<char, int>>{{'C', 6}, {'D', 6}}) {
    Case& c = get(s, M);
    int n2 = M * M * M * M;
    std::vector<int> rows;
    for (int k = 0; k < 1000; ++k) rows.push_back(static_cast<int>(rng() % std::uint64_t(n2)));
    Check k = spectral_check(c.calc(), rows);
    if (!k.pass) r.fail(label(c) + ": " + k.witness);
    else r.note(label(c) + " 1000 random rows");
  }
  return r;
}

Result xy_duality() {
  Result r;
  for (auto [s, M] : std::vector<std::pair<char, int>>{{'B', 3}, {'C', 4}, {'D', 4}, {'C', 6}, {'D', 6}}) {
    Case& c = get(s, M);
    CalculusData& cd = c.calc();
    auto In = SparseMatrix<Scalar>::identity(M * M);
    if (!(cd.X * cd.Y - In).is_zero_matrix()) r.fail(label(c) + " XY != I");
    if (!(cd.Y * cd.X - In).is_zero_matrix()) r.fail(label(c) + " YX != I");
    // psi_{A1}^{A2} = chi_{B1B2} Y_{B1A1}^{B2A2} against T^C_D - delta I
    PairingData& p = c.pairing();
    int n = M * M;
    auto chi0 = p.chi_on_word(Word{});
    for (int cdx = 0; cdx < n; ++cdx) {
      auto chi = p.chi_on_word(Word{{cdx / M + 1, cdx % M + 1}});
      std::map<int, Scalar> acc;
      for (int b = 0; b < n; ++b)
        for (auto& [a, y] : cd.Y.row(b)) acc[a] += (chi[b] - chi0[b]) * y;
      acc[cdx] -= Scalar(1);
      for (auto& [a, v] : acc)
        if (!v.is_zero()) {
          r.fail(label(c) + " psi" + adj_str(M, a) + "(T" + adj_str(M, cdx) + ") residual " + v.str());
          cdx = n;
          break;
        }
    }
  }
  return r;
}

Result bicovariant() {
  Result r;
  for (auto [s, M] : std::vector<std::pair<char, int>>{{'D', 4}, {'C', 4}}) {
    Case& c = get(s, M);
    for (auto& b : check_bicovariant_algebra(c.calc())) {
      if (!b.pass) r.fail(label(c) + " " + b.name + " [" + b.witness + "]");
      if (!b.checked) r.fail(label(c) + " " + b.name + " checked nothing");
    }
  }
  return r;
}

Result counting() {
  Result r;
  for (auto [s, M] : kAll) {
    Case& c = get(s, M);
    TwistedBasis t = limit_chi_basis(c.pairing(), 1);
    int want = s == 'C' ? M * (M + 1) / 2 : M * (M - 1) / 2;
    int got = static_cast<int>(t.independent.size());
    if (got != want || t.rank != want)
      r.fail(label(c) + " " + std::to_string(got) + " independent, rank " + std::to_string(t.rank) + ", want " +
             std::to_string(want));
    else r.note(label(c) + " " + std::to_string(got));
  }
  return r;
}

Result limits() {
  Result r;
  for (auto [s, M] : std::vector<std::pair<char, int>>{{'C', 4}, {'D', 4}, {'C', 6}, {'D', 6}}) {
    Case& c = get(s, M);
    Report rep = crosscheck_limits(c.calc(), limit_chi_basis(c.pairing(), 1), build_Omega_calculus(c.spec));
    if (rep.checks.empty()) r.fail(label(c) + " no checks");
    if (auto f = failures(rep); !f.empty()) r.fail(label(c) + " " + f);
  }
  return r;
}

Result iso_projection() {
  Result r;
  for (int N : {3, 4}) {
    Report rep = verify_annihilation(make_iso_params(N), 2);
    if (auto f = failures(rep); !f.empty()) r.fail("ISO(" + std::to_string(N) + ") " + f);
    int xf = 0;
    for (auto& c : rep.checks)
      if (!c.pass && c.expected_failure) ++xf;
    if (xf != 1) r.fail("ISO(" + std::to_string(N) + ") expected failure not reproduced");
    else r.note("ISO(" + std::to_string(N) + ") " + std::to_string(rep.checks.size() - 1) + " checks + expected failure");
  }
  return r;
}

Result poincare() {
  Result r;
  auto j = poincare_export();
  if (j["generators"] != 10) r.fail("generators " + j["generators"].dump());
  auto iso = poincare_params();
  auto al = iso_structure(iso);
  std::vector<std::string> names;
  for (auto& g : al.basis.gens) names.push_back(g.chi_name());
  Check jac = q_jacobi(al.lambda, al.C, names);
  if (!jac.pass) r.fail("q-Jacobi: " + jac.witness);
  int bad = oracle::classical_mismatches(oracle::substitute(al, "q12", 1));
  int bad2 = oracle::classical_mismatches(iso_structure(poincare_params(Scalar(1))));
  if (bad || bad2) r.fail(std::to_string(bad + bad2) + " discrepancies against the matrix-bracket oracle");
  r.note("10 generators, symbolic q12 Jacobi, q12 = 1 classical");
  return r;
}

Result plane() {
  Result r;
  Report rep = verify_plane(make_iso_params(4), 4, 1);
  if (auto f = failures(rep); !f.empty()) r.fail(f);
  r.note(std::to_string(rep.checks.size()) + " checks, words up to length 4");
  return r;
}

Result numeric() {
  Result r;
  for (auto [s, M] : kAll) {
    Case& c = get(s, M);
    NumericOptions o;
    o.trials = 100;
    o.seed = 2024;
    Report rep = numeric_crosscheck(c.d, &c.calc(), o);
    if (auto f = failures(rep); !f.empty()) r.fail(label(c) + " " + f);
    double worst = 0;
    for (auto& k : rep.checks) {
      auto p = k.witness.find("max error ");
      if (p != std::string::npos) worst = std::max(worst, std::stod(k.witness.substr(p + 10)));
    }
    std::ostringstream os;
    os << label(c) << " " << worst;
    r.note(os.str());
  }
  return r;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Result()>>> crit{
      {"Yang-Baxter exact, B3 B5 C4 C6 D4 D6, symbolic", yang_baxter},
      {"projector decomposition and cubic", projectors},
      {"Lambda seven-factor equation (M=4 all rows, M=6 1000 rows)", spectral},
      {"XY = YX = I and psi duality, M = 3, 4, 6", xy_duality},
      {"bicovariant algebra identities at M=4, SO and Sp", bicovariant},
      {"r -> 1 independent tangent vector counts", counting},
      {"generic-r limits = closed-form r = 1 objects, M = 4, 6", limits},
      {"ISO projection annihilates the ideal; expected failure reproduced", iso_projection},
      {"q-Poincare: 10 generators, q-Jacobi, classical oracle", poincare},
      {"quantum plane calculus at N = 4", plane},
      {"numeric backend within 1e-10 on 100 unit-modulus points", numeric},
  };
  int fails = 0;
  for (std::size_t i = 0; i < crit.size(); ++i) {
    Stopwatch sw;
    Result res;
    try {
      res = crit[i].second();
    } catch (const std::exception& e) {
      res.fail(std::string("exception: ") + e.what());
    }
    if (!res.pass) ++fails;
    std::cout << "criterion " << i + 1 << ": " << (res.pass ? "PASS" : "FAIL") << "  " << crit[i].first << "  ("
              << fmt(sw.seconds()) << " s)  " << res.detail << std::endl;
  }
  std::cout << (fails ? "acceptance FAILED" : "acceptance passed") << ": " << crit.size() - fails << "/" << crit.size()
            << std::endl;
  return fails ? 1 : 0;
}
