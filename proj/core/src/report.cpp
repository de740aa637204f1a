#include "pidwb/report.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <type_traits>

namespace pidwb {

using Json = nlohmann::ordered_json;

Format parse_format(const std::string& s) {
  if (s == "table") return Format::Table;
  if (s == "csv") return Format::Csv;
  if (s == "json-lines" || s == "jsonl") return Format::JsonLines;
  throw std::invalid_argument("unknown format '" + s + "' (expected table, csv or json-lines)");
}

std::string format_name(Format f) {
  switch (f) {
    case Format::Table: return "table";
    case Format::Csv: return "csv";
    case Format::JsonLines: return "json-lines";
  }
  return "?";
}

std::string format_number(double x, int digits) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  std::string s = buf;
  // "-0.000..." reads as noise; print it as zero
  if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

namespace {

std::string cell_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_number(v.get<double>());
  if (v.is_null()) return "";
  return v.dump();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

// Writes rows in the requested format. Every row has one value per header entry.
void emit(std::ostream& out, const std::vector<std::string>& header, const std::vector<std::vector<Json>>& rows,
          Format f) {
  switch (f) {
    case Format::JsonLines:
      for (const auto& r : rows) {
        Json obj = Json::object();
        for (std::size_t i = 0; i < header.size(); ++i) {
          const Json& v = r[i];
          // non-finite numbers have no JSON form; keep them as strings
          if (v.is_number_float() && !std::isfinite(v.get<double>()))
            obj[header[i]] = cell_text(v);
          else
            obj[header[i]] = v;
        }
        out << obj.dump() << '\n';
      }
      return;
    case Format::Csv:
      for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << csv_field(header[i]);
      out << '\n';
      for (const auto& r : rows) {
        for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << csv_field(cell_text(r[i]));
        out << '\n';
      }
      return;
    case Format::Table: {
      std::vector<std::size_t> width(header.size());
      std::vector<std::vector<std::string>> text;
      for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
      for (const auto& r : rows) {
        text.emplace_back();
        for (std::size_t i = 0; i < header.size(); ++i) {
          text.back().push_back(cell_text(r[i]));
          width[i] = std::max(width[i], text.back().back().size());
        }
      }
      auto line = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t i = 0; i < cells.size(); ++i) {
          if (i) s += "  ";
          s += cells[i];
          if (i + 1 < cells.size()) s.append(width[i] - cells[i].size(), ' ');
        }
        out << s << '\n';
      };
      line(header);
      std::vector<std::string> rule;
      for (auto w : width) rule.emplace_back(w, '-');
      line(rule);
      for (const auto& t : text) line(t);
      return;
    }
  }
}

Json to_json(const ReportValue& v) {
  return std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>)
          return nullptr;
        else
          return x;
      },
      v);
}

}  // namespace

void write_rows(std::ostream& out, const std::vector<std::string>& header, const std::vector<ReportRow>& rows,
                Format f) {
  std::vector<std::vector<Json>> js;
  for (const auto& r : rows) {
    if (r.size() != header.size()) throw std::invalid_argument("write_rows: row width differs from the header");
    js.emplace_back();
    for (const auto& v : r) js.back().push_back(to_json(v));
  }
  emit(out, header, js, f);
}

void write_decompositions(std::ostream& out, const std::vector<Decomposition>& ds, Format f) {
  std::vector<std::vector<Json>> rows;
  for (const auto& d : ds)
    for (std::size_t i = 0; i < d.lattice->size(); ++i) {
      const NodeNote note = i < d.notes.size() ? d.notes[i] : NodeNote{};
      rows.push_back({d.measure_id, d.system_name, d.lattice->node(i).str(), d.icap[i], d.atoms[i], note.residual,
                      note.approximate});
    }
  emit(out, {"measure", "system", "node", "redundancy", "atom", "residual", "approximate"}, rows, f);
}

void write_decomposition(std::ostream& out, const Decomposition& d, Format f) { write_decompositions(out, {d}, f); }

void write_grid(std::ostream& out, const Grid& g, const GoldenTable* golden, Format f) {
  std::vector<std::string> header = {"measure", "property", "status", "tested", "skipped", "witness", "detail",
                                     "lhs", "rhs"};
  if (golden) {
    header.insert(header.begin() + 3, "expected");
    header.insert(header.begin() + 4, "diff");
  }
  std::vector<GoldenDiff> diffs;
  if (golden) diffs = compare_with_golden(g, *golden);
  std::vector<std::vector<Json>> rows;
  for (const auto& c : g.cells) {
    std::vector<Json> r = {c.measure_id, c.property_id, status_name(c.status), c.systems_tested, c.probes_skipped};
    if (c.witness)
      r.insert(r.end(), {c.witness->probe.description, c.witness->failed.what, c.witness->failed.lhs,
                         c.witness->failed.rhs});
    else
      r.insert(r.end(), {"", "", nullptr, nullptr});
    if (golden) {
      auto e = golden->lookup(c.measure_id, c.property_id);
      auto it = std::find_if(diffs.begin(), diffs.end(), [&](const GoldenDiff& d) {
        return d.measure == c.measure_id && d.property == c.property_id;
      });
      r.insert(r.begin() + 3, e ? expectation_name(*e) : "");
      r.insert(r.begin() + 4, it != diffs.end() ? diff_kind_name(it->kind) : "");
    }
    rows.push_back(std::move(r));
  }
  emit(out, header, rows, f);
}

void write_diffs(std::ostream& out, const std::vector<GoldenDiff>& diffs, Format f) {
  std::vector<std::vector<Json>> rows;
  for (const auto& d : diffs)
    rows.push_back({d.measure, d.property, diff_kind_name(d.kind), expectation_name(d.expected), status_name(d.found)});
  emit(out, {"measure", "property", "kind", "expected", "found"}, rows, f);
}

std::string grid_markdown(const Grid& g, const GoldenTable* golden) {
  std::ostringstream md;
  md << "| property |";
  for (const auto& m : g.measures) md << ' ' << m << " |";
  md << "\n|---|";
  for (std::size_t i = 0; i < g.measures.size(); ++i) md << ":-:|";
  md << '\n';
  for (const auto& p : g.properties) {
    md << "| " << p << " |";
    for (const auto& m : g.measures) {
      const auto& c = g.at(m, p);
      std::string mark = c.status == VerdictStatus::Counterexample     ? "no"
                         : c.status == VerdictStatus::NoCounterexample ? "yes"
                                                                       : "n.a.";
      if (golden) {
        auto e = golden->lookup(m, p);
        if (e == Expectation::Yes && c.status == VerdictStatus::Counterexample) mark += "!";
      }
      md << ' ' << mark << " |";
    }
    md << '\n';
  }
  return md.str();
}

}  // namespace pidwb
