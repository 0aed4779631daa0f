#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "qg/calculus.hpp"
#include "qg/classical_limit.hpp"
#include "qg/errors.hpp"
#include "qg/iso.hpp"
#include "qg/numeric.hpp"
#include "qg/qplane.hpp"

using namespace qg;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct JobConfig {
  std::string series = "D";
  int dim = 4;
  std::vector<std::string> params;  // name=value, exact rationals
  bool r_one = false;
  std::string suite = "all";
  int n = 4;
  bool dilatation_free = false;
  std::string real_form;
  std::string q12;
  std::string out;
  bool numeric = false;
  int trials = 100;
  unsigned seed = 1;
  int degree = 4;
  std::size_t rows = 0;  // spectral rows; 0 picks a default by size
  bool calculus = false;
  bool check = false;
  bool timings = false;
};

// Values from a JSON config file for every option not given on the command line.
void apply_config(const std::string& path, CLI::App& sub, JobConfig& c) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  auto given = [&](const std::string& k) {
    auto* o = sub.get_option_no_throw("--" + k);
    return o && o->count() > 0;
  };
  for (auto& [k, v] : j.items()) {
    if (!sub.get_option_no_throw("--" + k)) throw ConfigError("config: unknown key " + k);
    if (given(k)) continue;
    try {
      if (k == "series") c.series = v.get<std::string>();
      else if (k == "dim") c.dim = v.get<int>();
      else if (k == "param") c.params = v.get<std::vector<std::string>>();
      else if (k == "r-one") c.r_one = v.get<bool>();
      else if (k == "suite") c.suite = v.get<std::string>();
      else if (k == "n") c.n = v.get<int>();
      else if (k == "dilatation-free") c.dilatation_free = v.get<bool>();
      else if (k == "real-form") c.real_form = v.get<std::string>();
      else if (k == "q12") c.q12 = v.is_string() ? v.get<std::string>() : v.dump();
      else if (k == "out") c.out = v.get<std::string>();
      else if (k == "numeric") c.numeric = v.get<bool>();
      else if (k == "trials") c.trials = v.get<int>();
      else if (k == "seed") c.seed = v.get<unsigned>();
      else if (k == "degree") c.degree = v.get<int>();
      else if (k == "rows") c.rows = v.get<std::size_t>();
      else if (k == "calculus") c.calculus = v.get<bool>();
      else if (k == "check") c.check = v.get<bool>();
      else if (k == "timings") c.timings = v.get<bool>();
      else if (k != "config") throw ConfigError("config: unsupported key " + k);
    } catch (const json::exception& e) {
      throw ConfigError("config: bad value for " + k + ": " + e.what());
    }
  }
}

Scalar parse_rational(const std::string& s) {
  try {
    mpq_class q(s);
    q.canonicalize();
    return Scalar(q);
  } catch (const std::invalid_argument&) {
    throw ConfigError("not a rational number: " + s);
  }
}

std::map<std::string, Scalar> bindings(const JobConfig& c) {
  std::map<std::string, Scalar> out;
  for (auto& b : c.params) {
    auto eq = b.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("parameter binding must be name=value: " + b);
    out[b.substr(0, eq)] = parse_rational(b.substr(eq + 1));
  }
  return out;
}

SeriesSpec spec_of(const JobConfig& c) {
  if (c.series.size() != 1 || std::string("BCD").find(c.series[0]) == std::string::npos)
    throw ConfigError("series must be B, C or D");
  return build_series(c.series[0], c.dim);
}

ParamOptions big_options(const JobConfig& c, const SeriesSpec& spec) {
  ParamOptions o;
  o.r_one = c.r_one;
  std::set<std::string> known;
  for (auto [i, j] : independent_pairs(spec)) known.insert(q_name(i, j));
  for (auto& [k, v] : bindings(c)) {
    if (k == "r") {
      if (v != Scalar(1)) throw ConfigError("only r = 1 can be bound exactly");
      o.r_one = true;
    } else if (!known.count(k)) {
      throw ConfigError(series_label(spec) + " has no independent parameter " + k);
    } else {
      o.fixed[k] = v;
    }
  }
  return o;
}

ISOParams iso_of(const JobConfig& c) {
  ISOOptions o;
  o.dilatation_free = c.dilatation_free;
  for (auto& [k, v] : bindings(c)) {
    if (k == "r") {
      if (v != Scalar(1)) throw ConfigError("the inhomogeneous groups are built at r = 1");
    } else {
      o.fixed[k] = v;
    }
  }
  if (!c.q12.empty()) o.fixed["q12"] = parse_rational(c.q12);
  return make_iso_params(c.n, o);
}

ParamAssignment assignment_of(const JobConfig& c) {
  ParamAssignment a;
  for (auto& [k, v] : bindings(c)) a.values[k] = v.evaluate(std::vector<std::complex<double>>(var_count()));
  if (!c.q12.empty()) a.values["q12"] = parse_rational(c.q12).evaluate(std::vector<std::complex<double>>(var_count()));
  return a;
}

Report from_bicov(const std::vector<BicovResult>& rs, const std::string& suite) {
  Report rep;
  rep.suite = suite;
  for (auto& r : rs) rep.add(Check{r.name + " (" + std::to_string(r.checked) + " tuples)", r.pass, r.witness, 0});
  return rep;
}

void write_file(const fs::path& p, const std::string& s) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + p.string());
  f << s;
}

void write_json(const fs::path& p, const json& j) { write_file(p, j.dump(1) + "\n"); }

// Every RelationSet found in a bundle, one line per relation.
void render(const json& j, std::string& out) {
  if (j.is_object() && j.contains("relations") && j["relations"].is_array() &&
      (j["relations"].empty() || j["relations"][0].contains("lhs"))) {
    out += RelationSet::from_json(j).to_text() + "\n";
    return;
  }
  if (j.is_object())
    for (auto& [k, v] : j.items()) render(v, out);
}

std::string xi_text(const json& xi) {
  std::string out = "# xi coordinates\n";
  for (auto& r : xi["commutations"]) {
    out += r["relation"].get<std::string>() + " =";
    bool first = true;
    for (auto& t : r["terms"]) {
      out += (first ? " (" : " + (") + t["coeff"].get<std::string>() + ") " + t["word"][0].get<std::string>() + " " +
             t["word"][1].get<std::string>();
      first = false;
    }
    out += first ? " 0\n" : "\n";
  }
  return out;
}

std::string text_bundle(const std::string& title, const json& j) {
  std::string out = title + "\n\n";
  render(j, out);
  return out;
}

int print_report(const Report& rep, bool timings) {
  int fails = 0;
  for (auto& c : rep.checks) {
    std::string tag = c.pass ? "PASS" : c.expected_failure ? "XFAIL" : "FAIL";
    if (!c.pass && !c.expected_failure) ++fails;
    std::cout << tag << "  " << c.name;
    if (!c.witness.empty()) std::cout << "  [" << c.witness << "]";
    if (timings) std::cout << "  (" << c.seconds << " s)";
    std::cout << "\n";
  }
  std::cout << (fails ? "FAILED" : "OK") << ": " << rep.checks.size() - fails << "/" << rep.checks.size() << " checks\n";
  return fails;
}

std::size_t default_rows(const JobConfig& c, int M) { return c.rows ? c.rows : (M <= 4 ? 0 : 1000); }

Report run_suite(const std::string& suite, const JobConfig& c) {
  Report all;
  all.suite = suite;
  bool every = suite == "all";
  auto want = [&](const char* s) { return every || suite == s; };

  if (want("rmatrix") || want("hopf") || want("calculus") || want("limit")) {
    SeriesSpec spec = spec_of(c);
    std::cout << "# " << series_label(spec) << "\n";
    ParamOptions generic = big_options(c, spec);
    if (generic.r_one && (want("calculus") || want("limit")))
      throw ConfigError("the calculus and limit suites need generic r");
    RMatrixData d = build_rmatrix_data(make_params(spec, generic));
    if (want("rmatrix")) {
      all.merge(verify_rmatrix_suite(d));
      all.merge(compare_compact_formula(d.params));
    }
    std::optional<PairingData> pd;
    if (want("hopf") || want("calculus") || want("limit")) pd = build_pairing(d);
    if (want("hopf")) {
      all.merge(verify_hopf_axioms(*pd));
      all.merge(verify_RLL_CLL(*pd));
    }
    std::optional<CalculusData> cd;
    if (want("calculus") || want("limit") || c.numeric) cd = build_calculus(d, want("calculus") || want("limit"));
    if (want("calculus")) {
      CalculusCheckOptions o;
      o.seed = c.seed;
      o.spectral_rows = default_rows(c, spec.N);
      o.pairing_reps = spec.N <= 4;
      o.projector_products = spec.N <= 4;
      all.merge(verify_calculus_suite(d, *cd, spec.N <= 4 ? &*pd : nullptr, o));
      std::mt19937_64 rng(c.seed);
      std::size_t sample = spec.N <= 4 ? 0 : 300;
      all.merge(from_bicov(check_bicovariant_algebra(*cd, sample, sample ? &rng : nullptr), "bicovariant algebra"));
    }
    if (want("limit")) {
      TwistedBasis t = limit_chi_basis(*pd, 1);
      all.merge(verify_limit_chi(t));
      all.merge(verify_conjugation(t));
      all.merge(verify_order_relations(*pd));
      all.merge(crosscheck_limits(*cd, t, build_Omega_calculus(spec, generic)));
      all.merge(theorem61_check(limit_chi_basis(*pd, 2)));
    }
    if (c.numeric) {
      NumericOptions o;
      o.trials = c.trials;
      o.seed = c.seed;
      if (spec.N > 4) o.lambda_trials = std::min(c.trials, 10);
      all.merge(numeric_crosscheck(d, &*cd, o));
    }
  }

  if (want("iso") || want("plane")) {
    ISOParams iso = iso_of(c);
    std::cout << "# ISO(" << iso.N << ")" << (iso.dilatation_free ? " dilatation-free" : "") << "\n";
    if (want("iso")) {
      all.merge(verify_annihilation(iso, 2));
      ISOCalculus calc = build_iso_calculus(iso);
      all.merge(verify_iso_calculus(iso, calc));
      Check g;
      g.name = "generators: " + std::to_string(calc.algebra.basis.size());
      g.pass = calc.algebra.basis.size() == c.n * (c.n + 1) / 2;
      all.add(g);
      if (!c.real_form.empty())
        all.merge(check_real_form(iso, parse_real_form(c.real_form), assignment_of(c), true));
    }
    if (want("plane")) all.merge(verify_plane(iso, c.degree, c.seed));
  }
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiparametric quantum groups, calculi and quantum planes"};
  app.require_subcommand(1);
  JobConfig c;
  std::string config;

  auto common = [&](CLI::App* s) {
    s->add_option("--config", config, "JSON file with option values; flags override it");
    s->add_option("--out", c.out, "output directory");
    s->add_option("--param", c.params, "exact binding name=value, e.g. q12=1/2 or r=1");
    s->add_flag("--timings", c.timings, "print timings");
  };
  auto series = [&](CLI::App* s) {
    s->add_option("--series", c.series, "B, C or D")->check(CLI::IsMember({"B", "C", "D"}));
    s->add_option("--dim", c.dim, "matrix size N");
    s->add_flag("--r-one", c.r_one, "set r = 1");
  };
  auto inhom = [&](CLI::App* s) {
    s->add_option("--n", c.n, "N of ISO(N)");
    s->add_flag("--dilatation-free", c.dilatation_free, "q_{a*} = 1");
    s->add_option("--q12", c.q12, "exact value of q12");
    s->add_option("--real-form", c.real_form, "SO(n,n), SO(n,n+1), SO(n+1,n-1), poincare, lorentz, ...");
  };

  auto* build = app.add_subcommand("build", "write R, metric, projectors and optionally Lambda");
  common(build);
  series(build);
  build->add_flag("--calculus", c.calculus, "also write Lambda with its spectral report");
  build->add_option("--rows", c.rows, "spectral rows to check (0: all at N <= 4, 1000 above)");
  build->add_option("--seed", c.seed, "seed for sampled rows");

  auto* verify = app.add_subcommand("verify", "run verification suites");
  common(verify);
  series(verify);
  inhom(verify);
  verify->add_option("--suite", c.suite, "rmatrix, hopf, calculus, limit, iso, plane or all")
      ->check(CLI::IsMember({"rmatrix", "hopf", "calculus", "limit", "iso", "plane", "all"}));
  verify->add_flag("--numeric", c.numeric, "cross-check the complex-double backend");
  verify->add_option("--trials", c.trials, "random points for --numeric");
  verify->add_option("--seed", c.seed, "seed for sampled checks");
  verify->add_option("--degree", c.degree, "word length cap for the plane suite");
  verify->add_option("--rows", c.rows, "spectral rows to check");

  auto* poincare = app.add_subcommand("export-poincare", "dilatation-free ISO(3,1) bundle");
  common(poincare);
  poincare->add_option("--q12", c.q12, "exact value of q12 (symbolic if absent)");
  poincare->add_option("--real-form", c.real_form, "check this real form first (needs --q12)");

  auto* plane = app.add_subcommand("export-plane", "quantum plane bundle");
  common(plane);
  inhom(plane);

  auto* limits = app.add_subcommand("limits", "closed-form r = 1 calculus");
  common(limits);
  series(limits);
  limits->add_flag("--check", c.check, "cross-check against the generic-r limits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (!config.empty()) apply_config(config, *sub, c);
    fs::path out = c.out.empty() ? fs::path(".") : fs::path(c.out);

    if (sub == build) {
      SeriesSpec spec = spec_of(c);
      ParamOptions o = big_options(c, spec);
      RMatrixData d = build_rmatrix_data(make_params(spec, o));
      json meta{{"series", std::string(1, spec.series)}, {"N", spec.N}, {"eps", spec.eps},
                {"eps_a", std::vector<int>(spec.eps_a.begin() + 1, spec.eps_a.end())},
                {"label", series_label(spec)}, {"r_one", o.r_one}, {"independent", d.params.independent}};
      auto mat = [&](const std::vector<std::vector<Scalar>>& m) {
        json rows = json::array();
        for (int a = 1; a <= spec.N; ++a) {
          json row = json::array();
          for (int b = 1; b <= spec.N; ++b) row.push_back(m[a][b].to_json());
          rows.push_back(row);
        }
        return rows;
      };
      write_json(out / "r.json", {{"meta", meta}, {"R", tensor_to_json(d.R)}, {"Rinv", tensor_to_json(d.Rinv)}});
      write_json(out / "metric.json", {{"meta", meta}, {"C_lower", mat(d.metric.lo)}, {"C_upper", mat(d.metric.up)}});
      if (!o.r_one) {
        int M = spec.N;
        write_json(out / "projectors.json", {{"meta", meta},
                                             {"PS", tensor_to_json(pair_tensor(d.proj.PS, M))},
                                             {"PA", tensor_to_json(pair_tensor(d.proj.PA, M))},
                                             {"P0", tensor_to_json(pair_tensor(d.proj.P0, M))}});
      }
      std::cout << "wrote r.json, metric.json" << (o.r_one ? "" : ", projectors.json");
      if (c.calculus) {
        if (o.r_one) {
          write_json(out / "lambda.json", {{"meta", meta}, {"calculus", build_Omega_calculus(spec, o).to_json()}});
        } else {
          CalculusData cd = build_calculus(d, false);
          int M = spec.N, n = M * M;
          std::vector<int> rows;
          std::size_t nr = default_rows(c, M);
          std::mt19937_64 rng(c.seed);
          if (nr && nr < std::size_t(n * n))
            for (std::size_t k = 0; k < nr; ++k) rows.push_back(static_cast<int>(rng() % std::uint64_t(n * n)));
          Check sc = spectral_check(cd, rows);
          json spectrum = json::array();
          for (auto& v : lambda_spectrum(cd.params)) spectrum.push_back(v.to_json());
          json entries = json::array();
          for (int i = 0; i < n * n; ++i)
            for (auto& [j, v] : cd.Lambda.row(i)) entries.push_back({{"row", i}, {"col", j}, {"val", v.to_json()}});
          write_json(out / "lambda.json",
                     {{"meta", meta},
                      {"layout", "row (A1 A2)*n + (D1 D2), column (C1 C2)*n + (B1 B2), adjoint (A1-1)*N + (A2-1)"},
                      {"Lambda", entries},
                      {"spectral", {{"eigenvalues", spectrum},
                                    {"rows_checked", rows.empty() ? n * n : static_cast<int>(rows.size())},
                                    {"pass", sc.pass},
                                    {"witness", sc.witness}}}});
          std::cout << ", lambda.json (spectral " << (sc.pass ? "pass" : "FAIL") << ")";
          if (!sc.pass) {
            std::cout << "\n";
            return 1;
          }
        }
        if (o.r_one) std::cout << ", lambda.json";
      }
      std::cout << "\n";
      return 0;
    }

    if (sub == verify) {
      Report rep = run_suite(c.suite, c);
      int fails = print_report(rep, c.timings);
      if (!c.out.empty()) write_json(out / "report.json", rep.to_json(c.timings));
      return fails ? 1 : 0;
    }

    if (sub == poincare) {
      std::optional<Scalar> q12;
      if (!c.q12.empty()) q12 = parse_rational(c.q12);
      if (!c.real_form.empty()) {
        if (!q12) throw ConfigError("--real-form needs a value for q12");
        Report rf = check_real_form(poincare_params(q12), parse_real_form(c.real_form), assignment_of(c), true);
        print_report(rf, c.timings);
      }
      json j = poincare_export(q12);
      write_json(out / "poincare.json", j);
      write_file(out / "poincare.txt", text_bundle("q-Poincare ISO(3,1), dilatation-free, r = 1", j));
      std::cout << "wrote poincare.json, poincare.txt (" << j["generators"] << " generators)\n";
      return 0;
    }

    if (sub == plane) {
      json j = export_plane(iso_of(c));
      write_json(out / "plane.json", j);
      std::string txt = text_bundle("quantum plane " + j["plane"].get<std::string>(), j);
      if (j.contains("xi")) txt += xi_text(j["xi"]);
      write_file(out / "plane.txt", txt);
      std::cout << "wrote plane.json, plane.txt\n";
      return 0;
    }

    if (sub == limits) {
      SeriesSpec spec = spec_of(c);
      ParamOptions o = big_options(c, spec);
      OmegaCalculus oc = build_Omega_calculus(spec, o);
      json j = oc.to_json();
      write_json(out / "limits.json", j);
      write_file(out / "limits.txt", text_bundle(series_label(spec) + " at r = 1", j));
      std::cout << "wrote limits.json, limits.txt\n";
      if (c.check) {
        if (o.r_one) throw ConfigError("--check needs generic r");
        RMatrixData d = build_rmatrix_data(make_params(spec, o));
        PairingData pd = build_pairing(d);
        Report rep = crosscheck_limits(build_calculus(d, true), limit_chi_basis(pd, 1), oc);
        int fails = print_report(rep, c.timings);
        if (!c.out.empty()) write_json(out / "limits_report.json", rep.to_json(c.timings));
        return fails ? 1 : 0;
      }
      return 0;
    }
  } catch (const ConstraintViolation& e) {
    std::cerr << "constraint violation: " << e.what() << "\n";
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const BadDimension& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NotImplemented& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
