#include "pidwb/logic.hpp"

#include "pidwb/axioms.hpp"

#include <algorithm>
#include <bit>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pidwb {

namespace {

constexpr int kMaxAtoms = 24;  // 2^24 assignments stays well under a second

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

TheoremWeb TheoremWeb::parse(const std::string& text) {
  TheoremWeb w;
  for (const auto& p : property_catalog()) w.atoms_.push_back(p.id);
  w.property_count_ = static_cast<int>(w.atoms_.size());

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("web line " + std::to_string(lineno) + ": " + why);
  };
  auto expand = [&](const std::string& name, std::vector<int>& into) {
    if (name == "LP") {
      into.push_back(w.atom("LP0"));
      into.push_back(w.atom("LP1"));
      return;
    }
    auto it = std::find(w.atoms_.begin(), w.atoms_.end(), name);
    if (it == w.atoms_.end()) fail("unknown atom '" + name + "'");
    into.push_back(static_cast<int>(it - w.atoms_.begin()));
  };

  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    Clause c;
    if (tok.back() == "@n=2") {
      c.bivariate_only = true;
      tok.pop_back();
    }
    std::ostringstream txt;
    for (std::size_t i = 0; i < tok.size(); ++i) txt << (i ? " " : "") << tok[i];
    c.text = txt.str();
    if (tok[0] == "ATOM") {
      if (tok.size() != 2) fail("ATOM takes one name");
      if (std::find(w.atoms_.begin(), w.atoms_.end(), tok[1]) != w.atoms_.end() || tok[1] == "LP") fail("duplicate atom");
      w.atoms_.push_back(tok[1]);
      if (w.atoms_.size() > kMaxAtoms) fail("too many atoms");
      continue;
    }
    if (tok[0] == "IMPLIES") {
      auto arrow = std::find(tok.begin(), tok.end(), "->");
      if (arrow == tok.end() || arrow == tok.begin() + 1 || arrow + 2 != tok.end()) fail("expected IMPLIES a b ... -> c");
      c.kind = Clause::Kind::Implies;
      for (auto it = tok.begin() + 1; it != arrow; ++it) {
        c.members.push_back(*it);
        expand(*it, c.antecedent);
      }
      std::vector<int> cons;
      expand(*(arrow + 1), cons);
      if (cons.size() != 1) fail("the consequent must be a single atom");
      c.consequent = cons[0];
    } else if (tok[0] == "UNSAT") {
      if (tok.size() < 2) fail("UNSAT needs at least one atom");
      c.kind = Clause::Kind::Unsat;
      for (auto it = tok.begin() + 1; it != tok.end(); ++it) {
        c.members.push_back(*it);
        expand(*it, c.antecedent);
      }
    } else {
      fail("unknown directive '" + tok[0] + "'");
    }
    std::sort(c.antecedent.begin(), c.antecedent.end());
    c.antecedent.erase(std::unique(c.antecedent.begin(), c.antecedent.end()), c.antecedent.end());
    w.clauses_.push_back(std::move(c));
  }
  return w;
}

TheoremWeb TheoremWeb::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open web file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string TheoremWeb::default_path() {
  for (const char* dir : {PIDWB_BUILD_DATA_DIR, PIDWB_INSTALL_DATA_DIR}) {
    std::filesystem::path p = std::filesystem::path(dir) / "web.txt";
    if (std::filesystem::exists(p)) return p.string();
  }
  return (std::filesystem::path(PIDWB_INSTALL_DATA_DIR) / "web.txt").string();
}

TheoremWeb TheoremWeb::shipped() { return load(default_path()); }

int TheoremWeb::atom(const std::string& name) const {
  auto it = std::find(atoms_.begin(), atoms_.end(), name);
  if (it == atoms_.end()) throw std::invalid_argument("unknown atom '" + name + "'");
  return static_cast<int>(it - atoms_.begin());
}

std::uint32_t TheoremWeb::mask_of(const std::vector<std::string>& names) const {
  std::uint32_t m = 0;
  for (const auto& n : names) {
    if (n == "LP")
      m |= (1u << atom("LP0")) | (1u << atom("LP1"));
    else
      m |= 1u << atom(n);
  }
  return m;
}

std::vector<std::string> TheoremWeb::names_of(std::uint32_t mask, bool properties_only) const {
  std::vector<std::string> out;
  const int limit = properties_only ? property_count_ : static_cast<int>(atoms_.size());
  for (int i = 0; i < limit; ++i)
    if (mask & (1u << i)) out.push_back(atoms_[static_cast<std::size_t>(i)]);
  return out;
}

namespace {

std::uint32_t bits(const std::vector<int>& atoms) {
  std::uint32_t m = 0;
  for (int a : atoms) m |= 1u << a;
  return m;
}

bool clause_holds(const Clause& c, std::uint32_t a) {
  const std::uint32_t ante = bits(c.antecedent);
  if ((a & ante) != ante) return true;
  return c.kind == Clause::Kind::Implies && (a >> c.consequent & 1u);
}

// Clause masks precomputed for the brute-force sweep.
struct CompiledWeb {
  std::vector<std::uint32_t> ante;
  std::vector<std::int32_t> cons;  // -1 for incompatibilities
  int natoms = 0;

  explicit CompiledWeb(const TheoremWeb& w) : natoms(static_cast<int>(w.atoms().size())) {
    for (const auto& c : w.clauses()) {
      ante.push_back(bits(c.antecedent));
      cons.push_back(c.kind == Clause::Kind::Implies ? c.consequent : -1);
    }
  }

  bool sat(std::uint32_t a) const {
    for (std::size_t i = 0; i < ante.size(); ++i)
      if ((a & ante[i]) == ante[i] && (cons[i] < 0 || !(a >> cons[i] & 1u))) return false;
    return true;
  }

  // First model with every atom in `on` true and every atom in `off` false.
  std::optional<std::uint32_t> find(std::uint32_t on, std::uint32_t off) const {
    const std::uint32_t total = 1u << natoms;
    const std::uint32_t free = (total - 1) & ~on & ~off;
    // iterate subsets of the free atoms
    std::uint32_t sub = 0;
    for (std::uint32_t count = 0; count < (1u << std::popcount(free)); ++count) {
      std::uint32_t a = on | sub;
      if (sat(a)) return a;
      sub = (sub - free) & free;
    }
    return std::nullopt;
  }
};

}  // namespace

bool TheoremWeb::satisfies(std::uint32_t assignment) const { return violated_clause(assignment) == nullptr; }

const Clause* TheoremWeb::violated_clause(std::uint32_t assignment) const {
  for (const auto& c : clauses_)
    if (!clause_holds(c, assignment)) return &c;
  return nullptr;
}

ConsistencyResult is_consistent(const std::vector<std::string>& asserted, const TheoremWeb& web) {
  CompiledWeb cw(web);
  auto m = cw.find(web.mask_of(asserted), 0);
  return {m.has_value(), m};
}

std::vector<std::string> implication_closure(const std::vector<std::string>& asserted, const TheoremWeb& web) {
  if (!is_consistent(asserted, web).consistent) throw std::invalid_argument("implication_closure: asserted set is inconsistent");
  std::uint32_t m = web.mask_of(asserted);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& c : web.clauses()) {
      if (c.kind != Clause::Kind::Implies) continue;
      const std::uint32_t ante = bits(c.antecedent);
      if ((m & ante) == ante && !(m >> c.consequent & 1u)) {
        m |= 1u << c.consequent;
        changed = true;
      }
    }
  }
  return web.names_of(m);
}

std::vector<std::vector<std::string>> maximal_compatible_sets(const std::vector<std::string>& base, const TheoremWeb& web) {
  CompiledWeb cw(web);
  const int np = web.property_count();
  const std::uint32_t pmask = (1u << np) - 1;
  // compatible[S]: some model makes every property in S true
  std::vector<char> compatible(std::size_t{1} << np, 0);
  for (std::uint32_t a = 0; a < (1u << cw.natoms); ++a)
    if (cw.sat(a)) compatible[a & pmask] = 1;
  for (int b = 0; b < np; ++b)
    for (std::uint32_t s = 0; s <= pmask; ++s)
      if (!(s >> b & 1u) && compatible[s | (1u << b)]) compatible[s] = 1;

  const std::uint32_t need = web.mask_of(base) & pmask;
  std::vector<std::uint32_t> found;
  for (std::uint32_t s = 0; s <= pmask; ++s) {
    if (!compatible[s] || (s & need) != need) continue;
    bool maximal = true;
    for (int b = 0; b < np && maximal; ++b)
      if (!(s >> b & 1u) && compatible[s | (1u << b)]) maximal = false;
    if (maximal) found.push_back(s);
  }
  std::vector<std::vector<std::string>> out;
  for (auto s : found) out.push_back(web.names_of(s, true));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() > b.size() : a < b;
  });
  return out;
}

ProfileCheck validate_profile(const std::map<std::string, bool>& profile, const TheoremWeb& web) {
  std::uint32_t on = 0, off = 0;
  for (const auto& [name, value] : profile) (value ? on : off) |= web.mask_of({name});
  if (on & off) return {false, "LP asserted with LP0 or LP1 denied"};
  CompiledWeb cw(web);
  if (cw.find(on, off)) return {true, ""};

  ProfileCheck r;
  for (const auto& c : web.clauses()) {
    const std::uint32_t ante = bits(c.antecedent);
    if ((on & ante) != ante) continue;
    if (c.kind == Clause::Kind::Unsat || (off >> c.consequent & 1u)) {
      r.violated = c.text;
      return r;
    }
  }
  // No single clause fails on the fixed atoms; report what the implications force.
  auto closure = web.mask_of(implication_closure(web.names_of(on), web));
  for (const auto& name : web.names_of(closure & off)) {
    r.violated = "implications force " + name + " which the profile denies";
    return r;
  }
  r.violated = "no model extends the profile";
  return r;
}

std::vector<EntailmentReport> check_implications(const TheoremWeb& web) {
  CompiledWeb cw(web);
  std::vector<EntailmentReport> out;
  for (const auto& c : web.clauses()) {
    if (c.kind != Clause::Kind::Implies) continue;
    out.push_back({c.text, !cw.find(bits(c.antecedent), 1u << c.consequent).has_value()});
  }
  return out;
}

std::vector<MinimalityReport> check_incompatibilities(const TheoremWeb& web) {
  std::vector<MinimalityReport> out;
  for (const auto& c : web.clauses()) {
    if (c.kind != Clause::Kind::Unsat) continue;
    MinimalityReport r{c.text, !is_consistent(c.members, web).consistent, {}};
    for (std::size_t i = 0; i < c.members.size(); ++i) {
      std::vector<std::string> rest = c.members;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      if (!is_consistent(rest, web).consistent) r.removable.push_back(c.members[i]);
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace pidwb
