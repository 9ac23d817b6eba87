#pragma once

#include <string>
#include <vector>

#include "stablematch/continuum.hpp"
#include "stablematch/market.hpp"
#include "stablematch/tech_tree.hpp"

namespace stablematch {

/// A market plus the user-facing names behind the dense indices.
struct NamedMarket {
  Market market;
  std::vector<std::string> worker_names;
  std::vector<std::string> firm_names;

  int worker_index(const std::string& name) const;  // -1 when unknown
  int firm_index(const std::string& name) const;
};

struct NamedTree {
  TechnologyTree tree;
  std::vector<std::string> vertex_names;
  std::vector<std::string> worker_names;
};

/// Market files: {"format_version":1, "workers":[...], "firms":[...],
/// "firm_prefs":{firm:[[worker,...],...]}, "worker_prefs":{worker:[firm,...]}}.
/// Preference lists are best first; the empty set is implicit (an explicit
/// empty set is rejected); unlisted firms are unacceptable. Throws
/// std::invalid_argument with a description on any malformed input.
NamedMarket parse_market_json(const std::string& text);
NamedMarket load_market_file(const std::string& path);
std::string serialize_market(const NamedMarket& named);

/// Tree files: {"format_version":1, "workers":[...],
/// "vertices":[{"name":..., "workers":[...]},...], "edges":[[tail,head],...]}.
/// The root is detected as the unique vertex with no incoming edge and an
/// empty worker set. When `universe` is given (the market's worker names),
/// the tree's workers are remapped onto it and must coincide as a set.
NamedTree parse_tree_json(const std::string& text,
                          const std::vector<std::string>* universe = nullptr);
NamedTree load_tree_file(const std::string& path,
                         const std::vector<std::string>* universe = nullptr);

/// Matching files: {"format_version":1,
/// "assignment":{firm:{worker:"p/q",...},...}, "unmatched":{worker:"p/q"}}.
/// Quantities are exact: strings "p/q", "p", decimal literals, or JSON
/// integers; JSON floats are rejected. Omitted entries are zero.
PseudoMatching parse_matching_json(const std::string& text, const NamedMarket& named);
PseudoMatching load_matching_file(const std::string& path, const NamedMarket& named);
std::string serialize_matching(const NamedMarket& named, const PseudoMatching& m);

std::string read_text_file(const std::string& path);

}  // namespace stablematch
