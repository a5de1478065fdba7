#pragma once

#include <map>
#include <set>
#include <string>

namespace semrec {

// Per-term relation sets: in-vocabulary synonyms, one-step hypernyms and
// two-step hypernyms of the term.
struct TermRelations {
  std::set<std::string> brothers;
  std::set<std::string> fathers;
  std::set<std::string> grandfathers;

  bool empty() const {
    return brothers.empty() && fathers.empty() && grandfathers.empty();
  }
  bool operator==(const TermRelations&) const = default;
};

using RelationMap = std::map<std::string, TermRelations>;

}  // namespace semrec
