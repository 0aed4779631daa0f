#ifndef QG_REPORT_HPP
#define QG_REPORT_HPP

#include <chrono>
#include <string>
#include <vector>

#include <json.hpp>

namespace qg {

struct Check {
  std::string name;
  bool pass = true;
  std::string witness;  // first failing index tuple and residual
  double seconds = 0;
  bool expected_failure = false;  // a failure the theory predicts
};

struct Report {
  std::string suite;
  std::vector<Check> checks;

  bool ok() const {
    for (auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  void add(Check c) { checks.push_back(std::move(c)); }
  void merge(const Report& o) {
    for (auto& c : o.checks) {
      Check x = c;
      x.name = o.suite + ": " + c.name;
      checks.push_back(std::move(x));
    }
  }
  const Check* find(const std::string& name) const {
    for (auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
  nlohmann::json to_json(bool with_timings = false) const {
    nlohmann::json arr = nlohmann::json::array();
    for (auto& c : checks) {
      nlohmann::json j{{"name", c.name}, {"pass", c.pass}};
      if (!c.witness.empty()) j["witness"] = c.witness;
      if (c.expected_failure) j["expected_failure"] = true;
      if (with_timings) j["seconds"] = c.seconds;
      arr.push_back(j);
    }
    return {{"suite", suite}, {"pass", ok()}, {"checks", arr}};
  }
};

class Stopwatch {
 public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace qg

#endif
