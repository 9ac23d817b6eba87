#include "stablematch/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace stablematch {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(e.what());
  }
}

void require_version(const json& j, const char* what) {
  if (!j.is_object()) throw std::invalid_argument(std::string(what) + ": not a JSON object");
  if (!j.contains("format_version") || j["format_version"] != 1)
    throw std::invalid_argument(std::string(what) + ": missing or unsupported format_version");
}

std::vector<std::string> parse_name_list(const json& j, const char* what) {
  if (!j.is_array()) throw std::invalid_argument(std::string(what) + ": expected an array");
  std::vector<std::string> names;
  std::set<std::string> seen;
  for (const auto& item : j) {
    if (!item.is_string())
      throw std::invalid_argument(std::string(what) + ": names must be strings");
    std::string name = item.get<std::string>();
    if (name.empty()) throw std::invalid_argument(std::string(what) + ": empty name");
    if (!seen.insert(name).second)
      throw std::invalid_argument(std::string(what) + ": duplicate name '" + name + "'");
    names.push_back(std::move(name));
  }
  return names;
}

int index_of(const std::vector<std::string>& names, const std::string& name) {
  auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

Rational parse_quantity(const json& j, const std::string& context) {
  if (j.is_string()) return rational_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_unsigned()) return Rational(static_cast<long long>(j.get<unsigned long long>()));
  if (j.is_number_float())
    throw std::invalid_argument(context +
                                ": floating-point quantities are not exact; use \"p/q\" strings");
  throw std::invalid_argument(context + ": expected a quantity");
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int NamedMarket::worker_index(const std::string& name) const {
  return index_of(worker_names, name);
}

int NamedMarket::firm_index(const std::string& name) const {
  return index_of(firm_names, name);
}

NamedMarket parse_market_json(const std::string& text) {
  json j = parse_json(text);
  require_version(j, "market file");

  NamedMarket named;
  named.worker_names = parse_name_list(j.value("workers", json::array()), "workers");
  named.firm_names = parse_name_list(j.value("firms", json::array()), "firms");

  Market& mkt = named.market;
  mkt.n_workers = static_cast<int>(named.worker_names.size());
  mkt.m_firms = static_cast<int>(named.firm_names.size());
  mkt.firm_prefs.resize(mkt.m_firms);
  mkt.worker_prefs.resize(mkt.n_workers);

  const json& fp = j.value("firm_prefs", json::object());
  if (!fp.is_object()) throw std::invalid_argument("firm_prefs: expected an object");
  for (const auto& [firm, lists] : fp.items()) {
    int f = named.firm_index(firm);
    if (f < 0) throw std::invalid_argument("firm_prefs: undeclared firm '" + firm + "'");
    if (!lists.is_array())
      throw std::invalid_argument("firm_prefs." + firm + ": expected an array of worker sets");
    for (const auto& set : lists) {
      if (!set.is_array())
        throw std::invalid_argument("firm_prefs." + firm + ": each set is an array of workers");
      if (set.empty())
        throw std::invalid_argument("firm_prefs." + firm +
                                    ": the empty set is implicit and cannot be listed");
      WorkerMask mask = 0;
      for (const auto& worker : set) {
        int w = worker.is_string() ? named.worker_index(worker.get<std::string>()) : -1;
        if (w < 0)
          throw std::invalid_argument("firm_prefs." + firm + ": unknown worker " + worker.dump());
        if (mask & (WorkerMask{1} << w))
          throw std::invalid_argument("firm_prefs." + firm + ": duplicate worker " +
                                      worker.dump() + " in one set");
        mask |= WorkerMask{1} << w;
      }
      auto& acc = mkt.firm_prefs[f].acceptable;
      if (std::find(acc.begin(), acc.end(), mask) != acc.end())
        throw std::invalid_argument("firm_prefs." + firm + ": duplicate set");
      acc.push_back(mask);
    }
  }

  const json& wp = j.value("worker_prefs", json::object());
  if (!wp.is_object()) throw std::invalid_argument("worker_prefs: expected an object");
  for (const auto& [worker, list] : wp.items()) {
    int w = named.worker_index(worker);
    if (w < 0) throw std::invalid_argument("worker_prefs: undeclared worker '" + worker + "'");
    if (!list.is_array())
      throw std::invalid_argument("worker_prefs." + worker + ": expected an array of firms");
    for (const auto& firm : list) {
      int f = firm.is_string() ? named.firm_index(firm.get<std::string>()) : -1;
      if (f < 0)
        throw std::invalid_argument("worker_prefs." + worker + ": unknown firm " + firm.dump());
      auto& acc = mkt.worker_prefs[w].acceptable;
      if (std::find(acc.begin(), acc.end(), f) != acc.end())
        throw std::invalid_argument("worker_prefs." + worker + ": duplicate firm " + firm.dump());
      acc.push_back(f);
    }
  }

  mkt.validate();
  return named;
}

NamedMarket load_market_file(const std::string& path) {
  return parse_market_json(read_text_file(path));
}

std::string serialize_market(const NamedMarket& named) {
  json j;
  j["format_version"] = 1;
  j["workers"] = named.worker_names;
  j["firms"] = named.firm_names;

  json fp = json::object();
  for (int f = 0; f < named.market.m_firms; ++f) {
    json lists = json::array();
    for (WorkerMask s : named.market.firm_prefs[f].acceptable) {
      json set = json::array();
      for (int w = 0; w < named.market.n_workers; ++w) {
        if (s & (WorkerMask{1} << w)) set.push_back(named.worker_names[w]);
      }
      lists.push_back(std::move(set));
    }
    fp[named.firm_names[f]] = std::move(lists);
  }
  j["firm_prefs"] = std::move(fp);

  json wp = json::object();
  for (int w = 0; w < named.market.n_workers; ++w) {
    json list = json::array();
    for (int f : named.market.worker_prefs[w].acceptable) list.push_back(named.firm_names[f]);
    wp[named.worker_names[w]] = std::move(list);
  }
  j["worker_prefs"] = std::move(wp);
  return j.dump(2) + "\n";
}

NamedTree parse_tree_json(const std::string& text, const std::vector<std::string>* universe) {
  json j = parse_json(text);
  require_version(j, "tree file");

  NamedTree named;
  named.worker_names = parse_name_list(j.value("workers", json::array()), "tree workers");
  if (universe) {
    if (std::set<std::string>(named.worker_names.begin(), named.worker_names.end()) !=
        std::set<std::string>(universe->begin(), universe->end()))
      throw std::invalid_argument("tree file: worker names do not match the market's workers");
    named.worker_names = *universe;
  }

  if (!j.contains("vertices") || !j["vertices"].is_array())
    throw std::invalid_argument("tree file: missing vertices array");
  TechnologyTree& tree = named.tree;
  tree.n_workers = static_cast<int>(named.worker_names.size());

  std::set<std::string> seen;
  for (const auto& vertex : j["vertices"]) {
    if (!vertex.is_object() || !vertex.contains("name") || !vertex.contains("workers"))
      throw std::invalid_argument("tree file: each vertex needs a name and a worker set");
    std::string name = vertex["name"].get<std::string>();
    if (!seen.insert(name).second)
      throw std::invalid_argument("tree file: duplicate vertex '" + name + "'");
    WorkerMask mask = 0;
    for (const auto& worker : vertex["workers"]) {
      int w = worker.is_string() ? index_of(named.worker_names, worker.get<std::string>()) : -1;
      if (w < 0)
        throw std::invalid_argument("tree file: vertex '" + name + "' uses unknown worker " +
                                    worker.dump());
      mask |= WorkerMask{1} << w;
    }
    named.vertex_names.push_back(std::move(name));
    tree.vertex_workers.push_back(mask);
  }

  if (!j.contains("edges") || !j["edges"].is_array())
    throw std::invalid_argument("tree file: missing edges array");
  for (const auto& edge : j["edges"]) {
    if (!edge.is_array() || edge.size() != 2)
      throw std::invalid_argument("tree file: each edge is a [tail, head] pair");
    int tail = index_of(named.vertex_names, edge[0].get<std::string>());
    int head = index_of(named.vertex_names, edge[1].get<std::string>());
    if (tail < 0 || head < 0)
      throw std::invalid_argument("tree file: edge references unknown vertex " + edge.dump());
    tree.edges.push_back({tail, head});
  }

  // Root: the unique vertex with no incoming edge and no required workers.
  std::vector<int> indegree(tree.vertex_count(), 0);
  for (auto [tail, head] : tree.edges) ++indegree[head];
  int root = -1;
  for (int v = 0; v < tree.vertex_count(); ++v) {
    if (indegree[v] == 0 && tree.vertex_workers[v] == 0) {
      if (root >= 0) throw std::invalid_argument("tree file: multiple root candidates");
      root = v;
    }
  }
  if (root < 0)
    throw std::invalid_argument("tree file: no root (in-degree 0 with empty worker set)");
  tree.root = root;
  tree.validate();
  return named;
}

NamedTree load_tree_file(const std::string& path, const std::vector<std::string>* universe) {
  return parse_tree_json(read_text_file(path), universe);
}

PseudoMatching parse_matching_json(const std::string& text, const NamedMarket& named) {
  json j = parse_json(text);
  require_version(j, "matching file");

  PseudoMatching m =
      PseudoMatching::zeros(named.market.m_firms, named.market.n_workers);

  const json& assignment = j.value("assignment", json::object());
  if (!assignment.is_object()) throw std::invalid_argument("assignment: expected an object");
  for (const auto& [firm, row] : assignment.items()) {
    int f = named.firm_index(firm);
    if (f < 0) throw std::invalid_argument("assignment: unknown firm '" + firm + "'");
    if (!row.is_object())
      throw std::invalid_argument("assignment." + firm + ": expected worker -> quantity");
    for (const auto& [worker, quantity] : row.items()) {
      int w = named.worker_index(worker);
      if (w < 0)
        throw std::invalid_argument("assignment." + firm + ": unknown worker '" + worker + "'");
      m.firm(f)[w] = parse_quantity(quantity, "assignment." + firm + "." + worker);
    }
  }

  const json& unmatched = j.value("unmatched", json::object());
  if (!unmatched.is_object()) throw std::invalid_argument("unmatched: expected an object");
  for (const auto& [worker, quantity] : unmatched.items()) {
    int w = named.worker_index(worker);
    if (w < 0) throw std::invalid_argument("unmatched: unknown worker '" + worker + "'");
    m.null_firm()[w] = parse_quantity(quantity, "unmatched." + worker);
  }

  validate_pseudo_matching(named.market, m);
  return m;
}

PseudoMatching load_matching_file(const std::string& path, const NamedMarket& named) {
  return parse_matching_json(read_text_file(path), named);
}

std::string serialize_matching(const NamedMarket& named, const PseudoMatching& m) {
  json j;
  j["format_version"] = 1;
  json assignment = json::object();
  for (int f = 0; f < named.market.m_firms; ++f) {
    json row = json::object();
    for (int w = 0; w < named.market.n_workers; ++w) {
      if (m.firm(f)[w] != 0) row[named.worker_names[w]] = to_string(m.firm(f)[w]);
    }
    assignment[named.firm_names[f]] = std::move(row);
  }
  j["assignment"] = std::move(assignment);

  json unmatched = json::object();
  for (int w = 0; w < named.market.n_workers; ++w) {
    if (m.null_firm()[w] != 0) unmatched[named.worker_names[w]] = to_string(m.null_firm()[w]);
  }
  j["unmatched"] = std::move(unmatched);
  return j.dump(2) + "\n";
}

}  // namespace stablematch
