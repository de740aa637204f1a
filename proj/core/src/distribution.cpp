#include "pidwb/distribution.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace pidwb {

VariableSpec::VariableSpec(std::string n, int k) : name(std::move(n)), cardinality(k) {
  if (k < 1) throw std::invalid_argument("variable '" + name + "' needs cardinality >= 1");
  labels.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) labels.push_back(std::to_string(i));
}

VariableSpec::VariableSpec(std::string n, std::vector<std::string> l)
    : name(std::move(n)), cardinality(static_cast<int>(l.size())), labels(std::move(l)) {
  validate();
}

int VariableSpec::label_index(const std::string& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  return it == labels.end() ? -1 : static_cast<int>(it - labels.begin());
}

void VariableSpec::validate() const {
  if (cardinality < 1) throw std::invalid_argument("variable '" + name + "' needs cardinality >= 1");
  if (labels.size() != static_cast<std::size_t>(cardinality))
    throw std::invalid_argument("variable '" + name + "' label count differs from cardinality");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) throw std::invalid_argument("variable '" + name + "' has duplicate labels");
}

Shape::Shape(std::vector<int> cards) : cards_(std::move(cards)), strides_(cards_.size()) {
  size_ = 1;
  for (std::size_t i = cards_.size(); i-- > 0;) {
    if (cards_[i] < 1) throw std::invalid_argument("cardinality must be >= 1");
    strides_[i] = size_;
    size_ *= static_cast<std::size_t>(cards_[i]);
  }
}

std::size_t Shape::encode(const Outcome& o) const {
  if (o.size() != cards_.size()) throw std::out_of_range("outcome arity mismatch");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < o.size(); ++i) {
    if (o[i] < 0 || o[i] >= cards_[i]) throw std::out_of_range("outcome index outside cardinality");
    idx += strides_[i] * static_cast<std::size_t>(o[i]);
  }
  return idx;
}

Outcome Shape::decode(std::size_t index) const {
  Outcome o(cards_.size());
  for (std::size_t i = 0; i < cards_.size(); ++i) o[i] = digit(index, i);
  return o;
}

ProbTable::ProbTable(Shape s, std::vector<double> values) : shape(std::move(s)), p(std::move(values)) {
  if (p.size() != shape.size()) throw std::invalid_argument("table size does not match shape");
}

std::vector<std::size_t> ProbTable::projection(const IndexSet& keep) const {
  std::vector<int> sub_cards;
  for (int v : keep) sub_cards.push_back(card(static_cast<std::size_t>(v)));
  Shape sub(sub_cards);
  std::vector<std::size_t> out(shape.size());
  for (std::size_t i = 0; i < shape.size(); ++i) {
    std::size_t j = 0;
    for (std::size_t k = 0; k < keep.size(); ++k)
      j += sub.stride(k) * static_cast<std::size_t>(shape.digit(i, static_cast<std::size_t>(keep[k])));
    out[i] = j;
  }
  return out;
}

ProbTable ProbTable::marginal(const IndexSet& keep) const {
  std::vector<int> sub_cards;
  for (int v : keep) sub_cards.push_back(card(static_cast<std::size_t>(v)));
  Shape sub(sub_cards);
  std::vector<double> out(sub.size(), 0.0);
  auto proj = projection(keep);
  for (std::size_t i = 0; i < p.size(); ++i) out[proj[i]] += p[i];
  return ProbTable(sub, std::move(out));
}

double ProbTable::total() const { return std::accumulate(p.begin(), p.end(), 0.0); }

namespace {

std::vector<int> cards_of(const std::vector<VariableSpec>& vars) {
  std::vector<int> c;
  c.reserve(vars.size());
  for (const auto& v : vars) c.push_back(v.cardinality);
  return c;
}

}  // namespace

JointDistribution::JointDistribution(std::vector<VariableSpec> vars, std::vector<Rational> pmf)
    : vars_(std::move(vars)), shape_(cards_of(vars_)), pmf_(std::move(pmf)) {
  if (vars_.empty()) throw std::invalid_argument("distribution needs at least one variable");
  std::set<std::string> names;
  for (const auto& v : vars_) {
    v.validate();
    if (!names.insert(v.name).second) throw std::invalid_argument("duplicate variable name '" + v.name + "'");
  }
  if (pmf_.size() != shape_.size()) throw std::invalid_argument("pmf size does not match the outcome box");
  Rational total = 0;
  for (auto& q : pmf_) {
    q.canonicalize();
    if (sgn(q) < 0) throw std::invalid_argument("negative probability");
    total += q;
  }
  if (total != 1) throw std::invalid_argument("total mass is " + to_string(total) + ", expected exactly 1");
  std::vector<double> d(pmf_.size());
  for (std::size_t i = 0; i < pmf_.size(); ++i) d[i] = pmf_[i].get_d();
  table_ = ProbTable(shape_, std::move(d));
}

JointDistribution JointDistribution::from_sparse(std::vector<VariableSpec> vars,
                                                 const std::vector<std::pair<Outcome, Rational>>& cells) {
  Shape s(cards_of(vars));
  std::vector<Rational> pmf(s.size(), Rational(0));
  for (const auto& [o, q] : cells) pmf[s.encode(o)] += q;
  return JointDistribution(std::move(vars), std::move(pmf));
}

JointDistribution JointDistribution::from_weights(std::vector<VariableSpec> vars, const std::vector<Rational>& w) {
  Rational total = 0;
  for (const auto& q : w) {
    if (sgn(q) < 0) throw std::invalid_argument("negative weight");
    total += q;
  }
  if (sgn(total) == 0) throw std::invalid_argument("weights sum to zero");
  std::vector<Rational> pmf(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    pmf[i] = w[i] / total;
    pmf[i].canonicalize();
  }
  return JointDistribution(std::move(vars), std::move(pmf));
}

JointDistribution JointDistribution::from_weights(std::vector<VariableSpec> vars, const std::vector<double>& w) {
  std::vector<Rational> q(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) q[i] = rational_from_double(std::max(w[i], 0.0));
  return from_weights(std::move(vars), q);
}

JointDistribution JointDistribution::point_mass(std::vector<VariableSpec> vars, const Outcome& at) {
  Shape s(cards_of(vars));
  std::vector<Rational> pmf(s.size(), Rational(0));
  pmf[s.encode(at)] = 1;
  return JointDistribution(std::move(vars), std::move(pmf));
}

std::vector<std::size_t> JointDistribution::support() const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < pmf_.size(); ++i)
    if (sgn(pmf_[i]) > 0) s.push_back(i);
  return s;
}

Rational JointDistribution::mass() const {
  Rational t = 0;
  for (const auto& q : pmf_) t += q;
  return t;
}

void JointDistribution::check_index_set(const IndexSet& s, const char* what) const {
  std::set<int> seen;
  for (int v : s) {
    if (v < 0 || static_cast<std::size_t>(v) >= vars_.size())
      throw std::out_of_range(std::string(what) + ": variable index " + std::to_string(v) + " out of range");
    if (!seen.insert(v).second) throw std::invalid_argument(std::string(what) + ": repeated variable index");
  }
}

JointDistribution JointDistribution::marginal(const IndexSet& keep) const {
  check_index_set(keep, "marginalize");
  if (keep.empty()) throw std::invalid_argument("marginalize: keep set is empty");
  std::vector<VariableSpec> sub;
  for (int v : keep) sub.push_back(vars_[static_cast<std::size_t>(v)]);
  Shape s(cards_of(sub));
  std::vector<Rational> out(s.size(), Rational(0));
  auto proj = table_.projection(keep);
  for (std::size_t i = 0; i < pmf_.size(); ++i)
    if (sgn(pmf_[i]) != 0) out[proj[i]] += pmf_[i];
  return JointDistribution(std::move(sub), std::move(out));
}

JointDistribution JointDistribution::condition(const IndexSet& on, const Outcome& values) const {
  check_index_set(on, "condition");
  if (on.size() != values.size()) throw std::invalid_argument("condition: outcome arity mismatch");
  for (std::size_t k = 0; k < on.size(); ++k)
    if (values[k] < 0 || values[k] >= vars_[static_cast<std::size_t>(on[k])].cardinality)
      throw std::out_of_range("condition: outcome outside cardinality");
  IndexSet rest;
  for (int v = 0; v < static_cast<int>(vars_.size()); ++v)
    if (std::find(on.begin(), on.end(), v) == on.end()) rest.push_back(v);
  if (rest.empty()) throw std::invalid_argument("condition: nothing left after conditioning");

  std::vector<VariableSpec> sub;
  for (int v : rest) sub.push_back(vars_[static_cast<std::size_t>(v)]);
  Shape s(cards_of(sub));
  std::vector<Rational> out(s.size(), Rational(0));
  auto proj = table_.projection(rest);
  Rational event = 0;
  for (std::size_t i = 0; i < pmf_.size(); ++i) {
    if (sgn(pmf_[i]) == 0) continue;
    bool match = true;
    for (std::size_t k = 0; k < on.size() && match; ++k)
      match = shape_.digit(i, static_cast<std::size_t>(on[k])) == values[k];
    if (!match) continue;
    out[proj[i]] += pmf_[i];
    event += pmf_[i];
  }
  if (sgn(event) == 0) throw std::domain_error("condition: conditioning event has zero probability");
  for (auto& q : out) {
    q /= event;
    q.canonicalize();
  }
  return JointDistribution(std::move(sub), std::move(out));
}

JointDistribution JointDistribution::coarsen(const std::vector<IndexSet>& groups,
                                             const std::vector<std::string>& names) const {
  if (groups.empty()) throw std::invalid_argument("coarsen: no groups");
  std::vector<VariableSpec> out_vars;
  std::vector<Shape> group_shapes;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    check_index_set(groups[g], "coarsen");
    if (groups[g].empty()) throw std::invalid_argument("coarsen: empty group");
    std::vector<int> gc;
    std::string default_name;
    for (int v : groups[g]) {
      gc.push_back(vars_[static_cast<std::size_t>(v)].cardinality);
      default_name += vars_[static_cast<std::size_t>(v)].name;
    }
    Shape gs(gc);
    std::vector<std::string> labels;
    labels.reserve(gs.size());
    for (std::size_t j = 0; j < gs.size(); ++j) {
      std::string l;
      for (std::size_t k = 0; k < groups[g].size(); ++k) {
        if (k) l += ":";
        l += vars_[static_cast<std::size_t>(groups[g][k])].labels[static_cast<std::size_t>(gs.digit(j, k))];
      }
      labels.push_back(std::move(l));
    }
    std::string name = g < names.size() ? names[g] : default_name;
    // keep names distinct even when two groups coincide
    for (const auto& prev : out_vars)
      if (prev.name == name) name += "#" + std::to_string(g);
    out_vars.emplace_back(name, std::move(labels));
    group_shapes.push_back(std::move(gs));
  }
  Shape s(cards_of(out_vars));
  std::vector<Rational> out(s.size(), Rational(0));
  for (std::size_t i = 0; i < pmf_.size(); ++i) {
    if (sgn(pmf_[i]) == 0) continue;
    std::size_t j = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      std::size_t local = 0;
      for (std::size_t k = 0; k < groups[g].size(); ++k)
        local += group_shapes[g].stride(k) * static_cast<std::size_t>(shape_.digit(i, static_cast<std::size_t>(groups[g][k])));
      j += s.stride(g) * local;
    }
    out[j] += pmf_[i];
  }
  return JointDistribution(std::move(out_vars), std::move(out));
}

JointDistribution JointDistribution::permute_variables(const IndexSet& order) const {
  if (order.size() != vars_.size()) throw std::invalid_argument("permute_variables: need a full permutation");
  return marginal(order);
}

bool JointDistribution::operator==(const JointDistribution& other) const {
  if (vars_.size() != other.vars_.size()) return false;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name != other.vars_[i].name || vars_[i].labels != other.vars_[i].labels) return false;
  return pmf_ == other.pmf_;
}

JointDistribution marginalize(const JointDistribution& d, const IndexSet& keep) { return d.marginal(keep); }

JointDistribution condition(const JointDistribution& d, const IndexSet& on, const Outcome& values) {
  return d.condition(on, values);
}

}  // namespace pidwb
