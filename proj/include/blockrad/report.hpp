#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "blockrad/harness.hpp"

namespace blockrad {

// Table with a fixed column order. Cells are stored as text; numbers use fmt_number.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row);  // throws DomainError on a column-count mismatch
  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
};

// %.10g, with "inf" / "nan" spelled out.
std::string fmt_number(double v);

// RFC 4180 style: comma separated, fields with commas, quotes or newlines quoted.
void write_csv(const CsvTable& t, std::ostream& out);
CsvTable read_csv(std::istream& in);
void save_csv(const CsvTable& t, const std::string& path);
CsvTable load_csv(const std::string& path);

struct PlotSeries {
  std::string label;
  std::vector<double> x, y;
};

struct LogLogPlot {
  std::string title, xlabel, ylabel;
  std::vector<PlotSeries> series;
};

// Deterministic SVG text (fixed layout, %.6g coordinates); nonpositive samples are skipped.
std::string svg_loglog(const LogLogPlot& plot);

// Riesz diagram over (1/p, 1/q) in [0,1]^2: one cell per probed point coloured by trend, with
// the region's pentagon drawn from the exact corners.
std::string svg_riesz(const RieszProbeReport& report);

void save_text_file(const std::string& path, const std::string& text);

}  // namespace blockrad
