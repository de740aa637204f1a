#include "pidwb/info.hpp"
#include "pidwb/measures.hpp"

#include <cmath>
#include <limits>
#include <map>

namespace pidwb {

namespace {

using MeasureFn = RedundancyValue (*)(const JointDistribution&, const MeasureConfig&);

struct Entry {
  MeasureDescriptor descriptor;
  MeasureFn fn;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = {
      {{"min", "I_min", 4, false, false}, &i_min},
      {{"mmi", "I_MMI", 4, false, false}, &i_mmi},
      {{"broja", "I_BROJA", 2, false, true}, &i_broja},
      {{"rav", "I_RAV", 4, false, true}, &i_rav},
      {{"ct", "I_CT", 2, false, false}, &i_ct},
      {{"rr", "I_RR", 2, false, false}, &i_rr},
      {{"dep", "I_DEP", 2, false, false}, &i_dep},
      {{"ccs", "I_CCS", 4, true, false}, &i_ccs},
      {{"pm", "I_PM", 4, true, false}, &i_pm},
      {{"sx", "I_SX", 4, true, false}, &i_sx},
      {{"mes", "I_MES", 2, false, false}, &i_mes},
      {{"do", "I_do", 2, false, false}, &i_do},
      {{"wedge", "I_wedge", 4, false, false}, &i_wedge},
      {{"alpha", "I_alpha", 4, false, true}, &i_alpha},
      {{"prec", "I_prec", 4, false, true}, &i_prec},
  };
  return table;
}

const Entry& entry(const std::string& id) {
  for (const auto& e : entries())
    if (e.descriptor.id == id) return e;
  throw std::invalid_argument("unknown measure '" + id + "'");
}

std::vector<IndexSet> as_collection(const Antichain& a) {
  std::vector<IndexSet> c;
  for (const auto& el : a.elements) c.push_back(IndexSet(el.begin(), el.end()));
  return c;
}

}  // namespace

const std::vector<MeasureDescriptor>& measure_catalog() {
  static const std::vector<MeasureDescriptor> cat = [] {
    std::vector<MeasureDescriptor> out;
    for (const auto& e : entries()) out.push_back(e.descriptor);
    return out;
  }();
  return cat;
}

const MeasureDescriptor& describe_measure(const std::string& id) { return entry(id).descriptor; }

RedundancyValue redundancy(const std::string& measure_id, const JointDistribution& view, const MeasureConfig& cfg) {
  const Entry& e = entry(measure_id);
  int k = static_cast<int>(view.num_variables()) - 1;
  if (k > e.descriptor.max_sources)
    throw UnsupportedArity(measure_id + " accepts at most " + std::to_string(e.descriptor.max_sources) +
                           " elements per collection");
  return e.fn(view, cfg);
}

RedundancyValue redundancy(const std::string& measure_id, const SystemSpec& s, const Antichain& alpha,
                           const MeasureConfig& cfg) {
  entry(measure_id);  // rejects unknown ids before any work
  auto collection = as_collection(alpha);
  JointDistribution view = s.view(collection);
  if (collection.size() == 1) {
    // self-redundancy holds by construction for every measure
    RedundancyValue r;
    r.value = mutual_information(view, {0}, {1});
    r.report.objective_value = r.value;
    return r;
  }
  return redundancy(measure_id, view, cfg);
}

Decomposition decompose(const std::string& measure_id, const SystemSpec& s, const MeasureConfig& cfg) {
  const MeasureDescriptor& desc = describe_measure(measure_id);
  const int n = static_cast<int>(s.n_sources());
  if (n < 1 || n > 4) throw UnsupportedArity("decompositions are available for 1 to 4 sources, got " + std::to_string(n));
  if (n > desc.max_sources)
    throw UnsupportedArity(measure_id + " is defined for at most " + std::to_string(desc.max_sources) + " sources");
  Decomposition d;
  d.measure_id = measure_id;
  d.system_name = s.name;
  d.lattice = lattice_for(n);
  d.icap.resize(d.lattice->size());
  d.notes.resize(d.lattice->size());
  for (std::size_t i = 0; i < d.lattice->size(); ++i) {
    try {
      auto r = redundancy(measure_id, s, d.lattice->node(i), cfg);
      d.icap[i] = r.value;
      d.notes[i] = {r.report.residual, r.report.approximate, r.report.note};
    } catch (const SolverFailure& ex) {
      d.icap[i] = std::numeric_limits<double>::quiet_NaN();
      d.notes[i] = {std::numeric_limits<double>::infinity(), true, std::string("solver failure: ") + ex.what()};
    }
  }
  d.atoms = moebius_atoms(*d.lattice, d.icap);
  return d;
}

}  // namespace pidwb
