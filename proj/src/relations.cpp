#include "qg/relations.hpp"

namespace qg {

nlohmann::json RelationSet::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (auto& r : relations) {
    nlohmann::json j{{"lhs", r.lhs}, {"rhs", r.rhs}, {"coeff", r.coeff.to_json()}};
    if (!r.terms.empty()) {
      nlohmann::json ts = nlohmann::json::array();
      for (auto& t : r.terms) ts.push_back({{"coeff", t.coeff.to_json()}, {"word", t.word}});
      j["terms"] = ts;
    }
    arr.push_back(std::move(j));
  }
  nlohmann::json out{{"relations", arr}};
  if (!name.empty()) out["name"] = name;
  return out;
}

RelationSet RelationSet::from_json(const nlohmann::json& j) {
  RelationSet s;
  s.name = j.value("name", std::string());
  for (auto& r : j.at("relations")) {
    Relation x;
    x.lhs = r.at("lhs").get<std::vector<std::string>>();
    x.rhs = r.at("rhs").get<std::vector<std::string>>();
    x.coeff = Scalar::from_json(r.at("coeff"));
    if (r.contains("terms"))
      for (auto& t : r["terms"]) x.terms.push_back({Scalar::from_json(t.at("coeff")), t.at("word").get<std::vector<std::string>>()});
    s.relations.push_back(std::move(x));
  }
  return s;
}

namespace {

std::string join(const std::vector<std::string>& w) {
  if (w.empty()) return "I";
  std::string s;
  for (auto& x : w) s += (s.empty() ? "" : " ") + x;
  return s;
}

}  // namespace

std::string RelationSet::to_text() const {
  std::string out;
  if (!name.empty()) out += "# " + name + "\n";
  for (auto& r : relations) {
    std::string line = join(r.lhs) + " =";
    bool first = true;
    auto part = [&](const Scalar& c, const std::vector<std::string>& w) {
      line += (first ? " (" : " + (") + c.str() + ") " + join(w);
      first = false;
    };
    if (!r.rhs.empty()) part(r.coeff, r.rhs);
    for (auto& t : r.terms) part(t.coeff, t.word);
    if (first) line += " 0";
    out += line + "\n";
  }
  return out;
}

}  // namespace qg
