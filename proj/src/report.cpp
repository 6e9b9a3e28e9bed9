#include "blockrad/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "blockrad/errors.hpp"

namespace blockrad {

void CsvTable::add(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw DomainError("CsvTable: row width does not match the header");
  rows.push_back(std::move(row));
}

std::size_t CsvTable::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw DomainError("CsvTable: no column " + name);
  return std::size_t(it - columns.begin());
}

double CsvTable::number(std::size_t row, const std::string& name) const {
  const std::string& s = rows.at(row).at(column(name));
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  if (s == "nan") return NAN;
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw DomainError("CsvTable: not a number: " + s);
  return v;
}

std::string fmt_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) {
    if (c == '"') o += '"';
    o += c;
  }
  return o + "\"";
}

void write_row(const std::vector<std::string>& r, std::ostream& out) {
  if (r.size() == 1 && r[0].empty()) {  // otherwise indistinguishable from a blank line
    out << "\"\"\n";
    return;
  }
  for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << quote(r[i]);
  out << '\n';
}

// One record; false at end of input.
bool read_record(std::istream& in, std::vector<std::string>& rec) {
  rec.clear();
  if (in.peek() == EOF) return false;
  std::string cell;
  bool quoted = false;
  for (int c; (c = in.get()) != EOF;) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') cell += char(in.get());
        else quoted = false;
      } else {
        cell += char(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      rec.push_back(std::move(cell));
      cell.clear();
    } else if (c == '\n') {
      break;
    } else if (c != '\r') {
      cell += char(c);
    }
  }
  if (quoted) throw DomainError("read_csv: unterminated quoted field");
  rec.push_back(std::move(cell));
  return true;
}

std::string num6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string o;
  for (char c : s) {
    switch (c) {
      case '<': o += "&lt;"; break;
      case '>': o += "&gt;"; break;
      case '&': o += "&amp;"; break;
      case '"': o += "&quot;"; break;
      default: o += c;
    }
  }
  return o;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

}  // namespace

void write_csv(const CsvTable& t, std::ostream& out) {
  write_row(t.columns, out);
  for (const auto& r : t.rows) write_row(r, out);
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::vector<std::string> rec;
  if (!read_record(in, rec)) throw DomainError("read_csv: missing header");
  t.columns = rec;
  while (read_record(in, rec)) t.add(rec);
  return t;
}

void save_csv(const CsvTable& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw CoverageError("cannot write " + path);
  write_csv(t, out);
}

CsvTable load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CoverageError("cannot read " + path);
  return read_csv(in);
}

std::string svg_loglog(const LogLogPlot& plot) {
  const double W = 640, H = 420, L = 70, Rm = 150, T = 40, B = 50;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : plot.series)
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
      if (s.x[i] > 0 && s.y[i] > 0 && std::isfinite(s.x[i]) && std::isfinite(s.y[i])) {
        x0 = std::min(x0, std::log10(s.x[i])), x1 = std::max(x1, std::log10(s.x[i]));
        y0 = std::min(y0, std::log10(s.y[i])), y1 = std::max(y1, std::log10(s.y[i]));
      }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  x0 = std::floor(x0), x1 = std::max(std::ceil(x1), x0 + 1);
  y0 = std::floor(y0), y1 = std::max(std::ceil(y1), y0 + 1);
  auto px = [&](double v) { return L + (std::log10(v) - x0) / (x1 - x0) * (W - L - Rm); };
  auto py = [&](double v) { return H - B - (std::log10(v) - y0) / (y1 - y0) * (H - T - B); };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << escape_xml(plot.title) << "</text>\n";
  o << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - Rm << "\" height=\"" << H - T - B
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int e = int(x0); e <= int(x1); ++e) {
    const double x = px(std::pow(10.0, e));
    o << "<line x1=\"" << num6(x) << "\" y1=\"" << T << "\" x2=\"" << num6(x) << "\" y2=\"" << H - B
      << "\" stroke=\"#ddd\"/><text x=\"" << num6(x) << "\" y=\"" << H - B + 15 << "\" text-anchor=\"middle\">1e" << e << "</text>\n";
  }
  for (int e = int(y0); e <= int(y1); ++e) {
    const double y = py(std::pow(10.0, e));
    o << "<line x1=\"" << L << "\" y1=\"" << num6(y) << "\" x2=\"" << W - Rm << "\" y2=\"" << num6(y)
      << "\" stroke=\"#ddd\"/><text x=\"" << L - 5 << "\" y=\"" << num6(y + 4) << "\" text-anchor=\"end\">1e" << e << "</text>\n";
  }
  o << "<text x=\"" << (L + W - Rm) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">" << escape_xml(plot.xlabel) << "</text>\n";
  o << "<text x=\"15\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 " << (T + H - B) / 2
    << ")\">" << escape_xml(plot.ylabel) << "</text>\n";
  for (std::size_t s = 0; s < plot.series.size(); ++s) {
    const auto& S = plot.series[s];
    const char* col = kPalette[s % 8];
    std::string pts;
    for (std::size_t i = 0; i < std::min(S.x.size(), S.y.size()); ++i)
      if (S.x[i] > 0 && S.y[i] > 0 && std::isfinite(S.x[i]) && std::isfinite(S.y[i]))
        pts += num6(px(S.x[i])) + "," + num6(py(S.y[i])) + " ";
    if (!pts.empty()) pts.pop_back();
    o << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"" << pts << "\"/>\n";
    const double ly = T + 14 + 16 * double(s);
    o << "<line x1=\"" << W - Rm + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << W - Rm + 28 << "\" y2=\"" << ly - 4
      << "\" stroke=\"" << col << "\" stroke-width=\"2\"/><text x=\"" << W - Rm + 32 << "\" y=\"" << ly << "\">"
      << escape_xml(S.label) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string svg_riesz(const RieszProbeReport& rep) {
  const double S = 400, M = 50;
  auto px = [&](double v) { return M + v * S; };
  auto py = [&](double v) { return M + (1.0 - v) * S; };
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << S + 2 * M + 140 << "\" height=\"" << S + 2 * M
    << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << M + S / 2 << "\" y=\"25\" text-anchor=\"middle\" font-size=\"14\">Riesz diagram d=" << rep.d
    << " k=" << rep.k << " (" << escape_xml(rep.family) << ")</text>\n";
  o << "<rect x=\"" << M << "\" y=\"" << M << "\" width=\"" << S << "\" height=\"" << S << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double v = 0.25 * i;
    o << "<text x=\"" << num6(px(v)) << "\" y=\"" << M + S + 15 << "\" text-anchor=\"middle\">" << num6(v) << "</text>"
      << "<text x=\"" << M - 5 << "\" y=\"" << num6(py(v) + 4) << "\" text-anchor=\"end\">" << num6(v) << "</text>\n";
  }
  o << "<text x=\"" << M + S / 2 << "\" y=\"" << M + S + 35 << "\" text-anchor=\"middle\">1/p</text>\n";
  o << "<text x=\"15\" y=\"" << M + S / 2 << "\" transform=\"rotate(-90 15 " << M + S / 2 << ")\" text-anchor=\"middle\">1/q</text>\n";

  // Cells: a point probed by several family members shows its worst trend.
  auto rank = [](Trend t) { return t == Trend::divergent ? 2 : t == Trend::inconclusive ? 1 : 0; };
  std::map<std::pair<double, double>, Trend> worst;
  for (const auto& p : rep.points) {
    const auto key = std::make_pair(p.p_inv, p.q_inv);
    const auto it = worst.find(key);
    if (it == worst.end() || rank(p.trend) > rank(it->second)) worst[key] = p.trend;
  }
  const double cell = 10;
  for (const auto& [pq, t] : worst) {
    const char* col = t == Trend::bounded ? "#2ca02c" : t == Trend::divergent ? "#d62728" : "#bbbbbb";
    o << "<rect x=\"" << num6(px(pq.first) - cell / 2) << "\" y=\"" << num6(py(pq.second) - cell / 2) << "\" width=\"" << cell
      << "\" height=\"" << cell << "\" fill=\"" << col << "\" fill-opacity=\"0.8\"/>\n";
  }
  const RieszCorners c = riesz_corners(rep.d, rep.k);
  std::string poly;
  for (const auto& v : {c.A, c.B, c.D, c.Dp, c.Bp})
    poly += num6(px(v.first.value())) + "," + num6(py(v.second.value())) + " ";
  poly.pop_back();
  o << "<polygon points=\"" << poly << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  const char* names[] = {"A", "B", "D", "D'", "B'"};
  int n = 0;
  for (const auto& v : {c.A, c.B, c.D, c.Dp, c.Bp})
    o << "<text x=\"" << num6(px(v.first.value()) + 4) << "\" y=\"" << num6(py(v.second.value()) - 4) << "\">" << names[n++]
      << "</text>\n";
  const char* legend[][2] = {{"#2ca02c", "bounded-trend"}, {"#d62728", "divergent-trend"}, {"#bbbbbb", "inconclusive"}};
  for (int i = 0; i < 3; ++i)
    o << "<rect x=\"" << M + S + 15 << "\" y=\"" << M + 16 * i << "\" width=\"10\" height=\"10\" fill=\"" << legend[i][0]
      << "\"/><text x=\"" << M + S + 30 << "\" y=\"" << M + 16 * i + 9 << "\">" << legend[i][1] << "</text>\n";
  o << "</svg>\n";
  return o.str();
}

void save_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw CoverageError("cannot write " + path);
  out << text;
}

}  // namespace blockrad
