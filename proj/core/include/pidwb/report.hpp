#pragma once

#include "pidwb/axioms.hpp"
#include "pidwb/lattice.hpp"

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace pidwb {

enum class Format { Table, Csv, JsonLines };
Format parse_format(const std::string& s);  // "table", "csv", "json-lines"; throws std::invalid_argument
std::string format_name(Format f);

// Fixed-precision rendering shared by every writer, so repeated runs are byte-identical.
std::string format_number(double x, int digits = 10);

// A table cell. Numbers keep their type in JSON output.
using ReportValue = std::variant<std::monostate, std::string, long long, double, bool>;
using ReportRow = std::vector<ReportValue>;

// Generic writer: aligned columns, CSV with a header line, or one JSON object per row.
void write_rows(std::ostream& out, const std::vector<std::string>& header, const std::vector<ReportRow>& rows,
                Format f);

// One row per lattice node: node, redundancy, atom, residual and approximation flag.
void write_decomposition(std::ostream& out, const Decomposition& d, Format f);
void write_decompositions(std::ostream& out, const std::vector<Decomposition>& ds, Format f);

// One row per grid cell. With a golden table the expectation and the diff kind are included.
void write_grid(std::ostream& out, const Grid& g, const GoldenTable* golden, Format f);

void write_diffs(std::ostream& out, const std::vector<GoldenDiff>& diffs, Format f);

// Properties as rows and measures as columns: "yes" where no counterexample was found, "no" with a
// counterexample, "n.a." otherwise. Contradicted cells are marked with '!'.
std::string grid_markdown(const Grid& g, const GoldenTable* golden = nullptr);

}  // namespace pidwb
