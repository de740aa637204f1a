#include "pidwb/system.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pidwb {

SystemSpec::SystemSpec(JointDistribution d, std::vector<IndexSet> source_groups, IndexSet target_group,
                       std::string label)
    : dist(std::move(d)), sources(std::move(source_groups)), target(std::move(target_group)), name(std::move(label)) {
  validate();
}

void SystemSpec::validate() const {
  if (sources.empty()) throw std::invalid_argument("system needs at least one source group");
  if (target.empty()) throw std::invalid_argument("system needs a nonempty target");
  std::set<int> used;
  auto claim = [&](int v) {
    if (v < 0 || static_cast<std::size_t>(v) >= dist.num_variables())
      throw std::out_of_range("system: variable index " + std::to_string(v) + " out of range");
    if (!used.insert(v).second) throw std::invalid_argument("system: groups must be pairwise disjoint");
  };
  for (const auto& g : sources) {
    if (g.empty()) throw std::invalid_argument("system: empty source group");
    for (int v : g) claim(v);
  }
  for (int v : target) claim(v);
}

JointDistribution SystemSpec::view(const std::vector<IndexSet>& collection) const {
  std::vector<IndexSet> groups;
  std::vector<std::string> names;
  for (const auto& element : collection) {
    IndexSet vars;
    std::string nm;
    for (int s : element) {
      if (s < 0 || static_cast<std::size_t>(s) >= sources.size()) throw std::out_of_range("view: source index out of range");
      const auto& g = sources[static_cast<std::size_t>(s)];
      vars.insert(vars.end(), g.begin(), g.end());
      nm += "X" + std::to_string(s + 1);
    }
    groups.push_back(std::move(vars));
    names.push_back(std::move(nm));
  }
  groups.push_back(target);
  names.emplace_back("Y");
  return dist.coarsen(groups, names);
}

JointDistribution SystemSpec::bivariate_view() const {
  std::vector<IndexSet> c;
  for (std::size_t i = 0; i < sources.size(); ++i) c.push_back({static_cast<int>(i)});
  return view(c);
}

SystemSpec product_system(const SystemSpec& a, const SystemSpec& b) {
  if (a.n_sources() != b.n_sources()) throw std::invalid_argument("product_system: source group counts differ");
  std::vector<VariableSpec> vars = a.dist.variables();
  std::set<std::string> names;
  for (const auto& v : vars) names.insert(v.name);
  for (auto v : b.dist.variables()) {
    while (names.count(v.name)) v.name += "'";
    names.insert(v.name);
    vars.push_back(std::move(v));
  }
  const std::size_t nb = b.dist.size();
  std::vector<Rational> pmf(a.dist.size() * nb);
  for (std::size_t i = 0; i < a.dist.size(); ++i)
    for (std::size_t j = 0; j < nb; ++j) pmf[i * nb + j] = a.dist.p(i) * b.dist.p(j);
  const int off = static_cast<int>(a.dist.num_variables());
  std::vector<IndexSet> groups;
  for (std::size_t g = 0; g < a.n_sources(); ++g) {
    IndexSet merged = a.sources[g];
    for (int v : b.sources[g]) merged.push_back(v + off);
    groups.push_back(std::move(merged));
  }
  IndexSet target = a.target;
  for (int v : b.target) target.push_back(v + off);
  return SystemSpec(JointDistribution(std::move(vars), std::move(pmf)), std::move(groups), std::move(target),
                    a.name + "*" + b.name);
}

SystemSpec relabel_outcomes(const SystemSpec& s, int var, const std::vector<int>& perm,
                            const std::vector<std::string>& labels) {
  if (var < 0 || static_cast<std::size_t>(var) >= s.dist.num_variables())
    throw std::out_of_range("relabel_outcomes: variable index out of range");
  const auto& spec = s.dist.variable(static_cast<std::size_t>(var));
  if (perm.size() != static_cast<std::size_t>(spec.cardinality))
    throw std::invalid_argument("relabel_outcomes: permutation length differs from cardinality");
  std::vector<int> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < spec.cardinality; ++i)
    if (sorted[static_cast<std::size_t>(i)] != i) throw std::invalid_argument("relabel_outcomes: not a permutation");

  std::vector<VariableSpec> vars = s.dist.variables();
  if (!labels.empty()) vars[static_cast<std::size_t>(var)] = VariableSpec(spec.name, labels);
  const Shape& shape = s.dist.shape();
  std::vector<Rational> pmf(shape.size());
  for (std::size_t i = 0; i < shape.size(); ++i) {
    Outcome o = shape.decode(i);
    o[static_cast<std::size_t>(var)] = perm[static_cast<std::size_t>(o[static_cast<std::size_t>(var)])];
    pmf[shape.encode(o)] = s.dist.p(i);
  }
  return SystemSpec(JointDistribution(std::move(vars), std::move(pmf)), s.sources, s.target, s.name);
}

SystemSpec with_distribution(const SystemSpec& s, JointDistribution d) {
  return SystemSpec(std::move(d), s.sources, s.target, s.name);
}

namespace {

using nlohmann::json;

std::string label_of(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw std::invalid_argument("outcome labels must be strings or integers");
}

IndexSet index_list(const json& j, const char* what) {
  if (!j.is_array()) throw std::invalid_argument(std::string(what) + " must be an array of indices");
  IndexSet out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw std::invalid_argument(std::string(what) + " must contain integers");
    out.push_back(v.get<int>());
  }
  return out;
}

}  // namespace

SystemSpec parse_system(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("system file is not valid JSON: ") + e.what());
  }
  try {
    std::vector<VariableSpec> vars;
    for (const auto& v : doc.at("variables")) {
      std::string name = v.at("name").get<std::string>();
      int card = v.at("cardinality").get<int>();
      if (v.contains("labels")) {
        std::vector<std::string> labels;
        for (const auto& l : v.at("labels")) labels.push_back(label_of(l));
        if (static_cast<int>(labels.size()) != card)
          throw std::invalid_argument("variable '" + name + "': label count differs from cardinality");
        vars.emplace_back(name, std::move(labels));
      } else {
        vars.emplace_back(name, card);
      }
    }
    std::vector<IndexSet> sources;
    for (const auto& g : doc.at("sources")) sources.push_back(index_list(g, "source group"));
    IndexSet target = index_list(doc.at("target"), "target");

    std::vector<std::pair<Outcome, Rational>> cells;
    for (const auto& cell : doc.at("pmf")) {
      const auto& out = cell.at("outcome");
      if (!out.is_array() || out.size() != vars.size())
        throw std::invalid_argument("pmf outcome arity differs from the variable count");
      Outcome o;
      for (std::size_t k = 0; k < vars.size(); ++k) {
        int idx = vars[k].label_index(label_of(out[k]));
        if (idx < 0) throw std::invalid_argument("unknown label '" + label_of(out[k]) + "' for " + vars[k].name);
        o.push_back(idx);
      }
      const auto& p = cell.at("p");
      Rational q = p.is_string() ? parse_rational(p.get<std::string>())
                                 : (p.is_number_integer() ? Rational(p.get<long>()) : parse_rational(p.dump()));
      cells.emplace_back(std::move(o), q);
    }
    std::string name = doc.value("name", std::string());
    return SystemSpec(JointDistribution::from_sparse(std::move(vars), cells), std::move(sources), std::move(target),
                      name);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed system file: ") + e.what());
  }
}

SystemSpec load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open system file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_system(ss.str());
}

std::string dump_system(const SystemSpec& s, int indent) {
  json doc;
  if (!s.name.empty()) doc["name"] = s.name;
  doc["variables"] = json::array();
  for (const auto& v : s.dist.variables())
    doc["variables"].push_back({{"name", v.name}, {"cardinality", v.cardinality}, {"labels", v.labels}});
  doc["sources"] = s.sources;
  doc["target"] = s.target;
  doc["pmf"] = json::array();
  for (std::size_t i : s.dist.support()) {
    Outcome o = s.dist.shape().decode(i);
    json labels = json::array();
    for (std::size_t k = 0; k < o.size(); ++k) labels.push_back(s.dist.variable(k).labels[static_cast<std::size_t>(o[k])]);
    doc["pmf"].push_back({{"outcome", labels}, {"p", to_string(s.dist.p(i))}});
  }
  return doc.dump(indent);
}

}  // namespace pidwb
