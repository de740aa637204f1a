#include "pidwb/gates.hpp"

#include <random>
#include <stdexcept>

namespace pidwb {

namespace {

std::vector<VariableSpec> bits(const std::vector<std::string>& names) {
  std::vector<VariableSpec> v;
  for (const auto& n : names) v.emplace_back(n, 2);
  return v;
}

// Uniform bit sources with a deterministic target; rows enumerate the source bits.
SystemSpec deterministic_bits(int n, const std::function<int(const std::vector<int>&)>& f, VariableSpec target,
                              const std::string& name) {
  std::vector<VariableSpec> vars;
  for (int i = 0; i < n; ++i) vars.emplace_back("X" + std::to_string(i + 1), 2);
  vars.push_back(std::move(target));
  std::vector<std::pair<Outcome, Rational>> cells;
  for (int m = 0; m < (1 << n); ++m) {
    Outcome o;
    for (int i = 0; i < n; ++i) o.push_back((m >> (n - 1 - i)) & 1);
    o.push_back(f(o));
    cells.push_back({o, Rational(1, 1 << n)});
  }
  std::vector<IndexSet> sources;
  for (int i = 0; i < n; ++i) sources.push_back({i});
  return SystemSpec(JointDistribution::from_sparse(std::move(vars), cells), sources, {n}, name);
}

}  // namespace

SystemSpec tbc(const Rational& correlation) {
  if (correlation < 0 || correlation > 1) throw std::invalid_argument("tbc correlation must lie in [0, 1]");
  Rational same = (1 + correlation) / 4, diff = (1 - correlation) / 4;
  std::vector<VariableSpec> vars = bits({"X1", "X2"});
  vars.emplace_back("Y", std::vector<std::string>{"A", "B", "C", "D"});
  std::vector<std::pair<Outcome, Rational>> cells = {
      {{0, 0, 0}, same}, {{0, 1, 1}, diff}, {{1, 0, 2}, diff}, {{1, 1, 3}, same}};
  return SystemSpec(JointDistribution::from_sparse(std::move(vars), cells), {{0}, {1}}, {2},
                    "tbc:" + to_string(correlation));
}

SystemSpec xor_gate() {
  return deterministic_bits(2, [](const std::vector<int>& o) { return o[0] ^ o[1]; }, VariableSpec("Y", 2), "xor");
}

SystemSpec and_gate() {
  return deterministic_bits(2, [](const std::vector<int>& o) { return o[0] & o[1]; }, VariableSpec("Y", 2), "and");
}

SystemSpec copy_single() {
  return deterministic_bits(1, [](const std::vector<int>& o) { return o[0]; }, VariableSpec("Y", 2), "copy");
}

SystemSpec xor_source_copy() {
  std::vector<VariableSpec> vars = bits({"X1", "X2", "X3"});
  std::vector<std::string> labels;
  for (int m = 0; m < 4; ++m) {
    int a = m >> 1, b = m & 1;
    labels.push_back(std::to_string(a) + std::to_string(b) + std::to_string(a ^ b));
  }
  vars.emplace_back("Y", labels);
  std::vector<std::pair<Outcome, Rational>> cells;
  for (int m = 0; m < 4; ++m) {
    int a = m >> 1, b = m & 1;
    cells.push_back({{a, b, a ^ b, m}, Rational(1, 4)});
  }
  return SystemSpec(JointDistribution::from_sparse(std::move(vars), cells), {{0}, {1}, {2}}, {3}, "xor_source_copy");
}

SystemSpec rdn_gate() {
  std::vector<std::pair<Outcome, Rational>> cells = {{{0, 0, 0}, Rational(1, 2)}, {{1, 1, 1}, Rational(1, 2)}};
  return SystemSpec(JointDistribution::from_sparse(bits({"X1", "X2", "Y"}), cells), {{0}, {1}}, {2}, "rdn");
}

SystemSpec unq_gate() {
  return deterministic_bits(2, [](const std::vector<int>& o) { return o[0]; }, VariableSpec("Y", 2), "unq");
}

SystemSpec noisy_copy_pair(const Rational& flip) {
  if (flip < 0 || flip > 1) throw std::invalid_argument("flip probability must lie in [0, 1]");
  std::vector<std::pair<Outcome, Rational>> cells;
  for (int b = 0; b < 2; ++b) {
    cells.push_back({{b, b, b}, (1 - flip) / 2});
    cells.push_back({{b, b, 1 - b}, flip / 2});
  }
  return SystemSpec(JointDistribution::from_sparse(bits({"X1", "X2", "Y"}), cells), {{0}, {1}}, {2},
                    "noisy_copy:" + to_string(flip));
}

SystemSpec sum_gate() {
  return deterministic_bits(2, [](const std::vector<int>& o) { return o[0] + o[1]; }, VariableSpec("Y", 3), "sum");
}

SystemSpec three_copy() {
  std::vector<std::pair<Outcome, Rational>> cells = {{{0, 0, 0, 0}, Rational(1, 2)}, {{1, 1, 1, 1}, Rational(1, 2)}};
  return SystemSpec(JointDistribution::from_sparse(bits({"X1", "X2", "X3", "Y"}), cells), {{0}, {1}, {2}}, {3},
                    "three_copy");
}

SystemSpec and3_gate() {
  return deterministic_bits(3, [](const std::vector<int>& o) { return o[0] & o[1] & o[2]; }, VariableSpec("Y", 2), "and3");
}

SystemSpec two_target_copy() {
  std::vector<std::pair<Outcome, Rational>> cells;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) cells.push_back({{a, b, a, b}, Rational(1, 4)});
  return SystemSpec(JointDistribution::from_sparse(bits({"X1", "X2", "Y1", "Y2"}), cells), {{0}, {1}}, {2, 3},
                    "two_target_copy");
}

SystemSpec two_target_xor() {
  std::vector<std::pair<Outcome, Rational>> cells;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) cells.push_back({{a, b, a, a ^ b}, Rational(1, 4)});
  return SystemSpec(JointDistribution::from_sparse(bits({"X1", "X2", "Y1", "Y2"}), cells), {{0}, {1}}, {2, 3},
                    "two_target_xor");
}

SystemSpec random_system(int n_sources, const std::vector<int>& cards, std::uint64_t seed, int weight_floor) {
  if (n_sources < 1 || n_sources > 3) throw std::invalid_argument("random systems have 1 to 3 sources");
  if (static_cast<int>(cards.size()) != n_sources + 1) throw std::invalid_argument("cards must list every source and the target");
  for (int c : cards)
    if (c < 1 || c > 4) throw std::invalid_argument("random system cardinalities must lie in [1, 4]");
  if (weight_floor < 0 || weight_floor > 100) throw std::invalid_argument("weight floor must lie in [0, 100]");
  std::vector<VariableSpec> vars;
  for (int i = 0; i < n_sources; ++i) vars.emplace_back("X" + std::to_string(i + 1), cards[static_cast<std::size_t>(i)]);
  vars.emplace_back("Y", cards.back());
  std::size_t size = 1;
  for (int c : cards) size *= static_cast<std::size_t>(c);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> w(weight_floor, 100);
  std::vector<Rational> weights(size);
  bool any = false;
  for (auto& x : weights) {
    x = w(rng);
    any = any || sgn(x) > 0;
  }
  if (!any) weights[0] = 1;
  std::vector<IndexSet> sources;
  for (int i = 0; i < n_sources; ++i) sources.push_back({i});
  return SystemSpec(JointDistribution::from_weights(std::move(vars), weights), sources, {n_sources},
                    "random:" + std::to_string(n_sources) + ":" + std::to_string(seed));
}

const std::vector<GateInfo>& gate_catalog() {
  static const std::vector<GateInfo> cat = {
      {"tbc", "two-bit copy with independent sources (tbc:<c> sets the source correlation)", [] { return tbc(0); }},
      {"xor", "Y = X1 xor X2", xor_gate},
      {"and", "Y = X1 and X2", and_gate},
      {"copy", "single source copied to the target", copy_single},
      {"xor_source_copy", "three pairwise independent sources, X3 = X1 xor X2, Y copies all", xor_source_copy},
      {"rdn", "X1 = X2 = Y", rdn_gate},
      {"unq", "Y = X1, X2 independent noise", unq_gate},
      {"noisy_copy", "X1 = X2 = B, Y is B through a channel flipping with probability 1/10",
       [] { return noisy_copy_pair(Rational(1, 10)); }},
      {"sum", "Y = X1 + X2", sum_gate},
      {"three_copy", "X1 = X2 = X3 = Y", three_copy},
      {"and3", "Y = X1 and X2 and X3", and3_gate},
      {"two_target_copy", "targets Y1 = X1, Y2 = X2", two_target_copy},
      {"two_target_xor", "targets Y1 = X1, Y2 = X1 xor X2", two_target_xor},
  };
  return cat;
}

SystemSpec make_gate(const std::string& id) {
  auto colon = id.find(':');
  std::string head = id.substr(0, colon);
  if (colon != std::string::npos) {
    std::string arg = id.substr(colon + 1);
    if (head == "tbc") return tbc(parse_rational(arg));
    if (head == "noisy_copy") return noisy_copy_pair(parse_rational(arg));
    if (head == "random") {
      auto c2 = arg.find(':');
      if (c2 == std::string::npos) throw std::invalid_argument("expected random:<n>:<seed>");
      int n = std::stoi(arg.substr(0, c2));
      auto seed = static_cast<std::uint64_t>(std::stoull(arg.substr(c2 + 1)));
      return random_system(n, std::vector<int>(static_cast<std::size_t>(n) + 1, 2), seed);
    }
    throw std::invalid_argument("gate '" + head + "' takes no parameter");
  }
  for (const auto& g : gate_catalog())
    if (g.id == id) return g.make();
  throw std::invalid_argument("unknown gate '" + id + "'");
}

}  // namespace pidwb
