// output.hpp — deterministic CSV/JSON table emission with atomic writes

#pragma once

#include <string>
#include <vector>

namespace dephase::io {

// One output table: named columns, numeric rows, plus '#'-prefixed comment
// lines (config echo, derived scalars) and optional string cells rendered
// verbatim. Floats are written with 12 significant digits so identical runs
// produce byte-identical files.
struct Table {
    std::vector<std::string> comments;       // without the leading '#'
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::string format_double(double v);  // %.12g, canonical for table output

std::string render_csv(const Table& table);
std::string render_json(const Table& table);

// Write via temp file + rename in the target directory.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace dephase::io
