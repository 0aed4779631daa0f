#ifndef QG_RELATIONS_HPP
#define QG_RELATIONS_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "qg/scalar.hpp"

namespace qg {

struct RelTerm {
  Scalar coeff;
  std::vector<std::string> word;
};

// lhs = coeff * rhs + sum(terms). An empty rhs means no principal term.
struct Relation {
  std::vector<std::string> lhs;
  std::vector<std::string> rhs;
  Scalar coeff;
  std::vector<RelTerm> terms;
};

struct RelationSet {
  std::string name;
  std::vector<Relation> relations;

  void add(Relation r) { relations.push_back(std::move(r)); }
  std::size_t size() const { return relations.size(); }
  nlohmann::json to_json() const;
  static RelationSet from_json(const nlohmann::json& j);
  // One line per relation, explicit phases: "lhs = (c) rhs + (c1) w1 ..."
  std::string to_text() const;
};

}  // namespace qg

#endif
