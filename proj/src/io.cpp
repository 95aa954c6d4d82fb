#include "mstkit/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "mstkit/error.hpp"

namespace mstkit {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  fail(ErrorCode::Parse, "line " + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& raw, std::size_t line, const std::string& column, bool allow_inf = false) {
  const std::string s = trim(raw);
  if (allow_inf) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  double x = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, x);
  if (s.empty() || ec != std::errc() || ptr != last || !std::isfinite(x))
    parse_error(line, "column '" + column + "': '" + s + "' is not a finite number");
  return x;
}

std::size_t parse_index(const std::string& raw, std::size_t line, const std::string& column) {
  const std::string s = trim(raw);
  std::size_t x = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    parse_error(line, "column '" + column + "': '" + s + "' is not a vertex index");
  return x;
}

// Reads data lines, skipping blanks and '#' comments; returns false at EOF.
bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    return true;
  }
  return false;
}

void write_provenance(std::ostream& out, const std::string& provenance) {
  if (!provenance.empty()) out << "# " << provenance << '\n';
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open '" + path + "' for reading");
  return in;
}

template <class Fn>
void with_out_file(const std::string& path, Fn&& fn) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
  fn(out);
  out.flush();
  if (!out) fail(ErrorCode::Io, "write to '" + path + "' failed");
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

PointSet read_events(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no)) fail(ErrorCode::Parse, "event file has no header row");

  const auto header = split(line);
  std::vector<std::string> features;
  std::vector<std::size_t> feature_cols;
  std::optional<std::size_t> weight_col, label_col;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string name = trim(header[c]);
    if (name.empty()) parse_error(line_no, "empty column name in header");
    if (name == "weight") {
      if (weight_col) parse_error(line_no, "duplicate 'weight' column");
      weight_col = c;
    } else if (name == "label") {
      if (label_col) parse_error(line_no, "duplicate 'label' column");
      label_col = c;
    } else {
      if (std::find(features.begin(), features.end(), name) != features.end())
        parse_error(line_no, "duplicate column '" + name + "'");
      features.push_back(name);
      feature_cols.push_back(c);
    }
  }
  if (features.empty()) parse_error(line_no, "header names no feature columns");

  PointSet ps(features.size(), features);
  std::vector<double> coords(features.size());
  while (next_line(in, line, line_no)) {
    const auto fields = split(line);
    if (fields.size() != header.size())
      parse_error(line_no, "expected " + std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()));
    for (std::size_t a = 0; a < feature_cols.size(); ++a)
      coords[a] = parse_double(fields[feature_cols[a]], line_no, features[a]);
    double w = 1.0;
    if (weight_col) {
      w = parse_double(fields[*weight_col], line_no, "weight");
      if (w < 0.0) parse_error(line_no, "negative weight");
    }
    std::optional<std::string> label;
    if (label_col) {
      std::string l = trim(fields[*label_col]);
      if (!l.empty()) label = std::move(l);
    }
    ps.add(coords, w, std::move(label));
  }
  if (ps.empty()) fail(ErrorCode::Parse, "event file contains no events");
  return ps;
}

PointSet read_events_file(const std::string& path) {
  auto in = open_in(path);
  try {
    return read_events(in);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Parse) fail(ErrorCode::Parse, path + ": " + e.what());
    throw;
  }
}

void write_events(std::ostream& out, const PointSet& ps, const std::string& provenance) {
  write_provenance(out, provenance);
  const bool labels = ps.has_labels();
  for (std::size_t a = 0; a < ps.dimension(); ++a) out << ps.feature_name(a) << ',';
  out << "weight" << (labels ? ",label" : "") << '\n';
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t a = 0; a < ps.dimension(); ++a) out << format_double(ps.coord(i, a)) << ',';
    out << format_double(ps.weight(i));
    if (labels) out << ',' << ps.label(i).value_or("");
    out << '\n';
  }
}

void write_events_file(const std::string& path, const PointSet& ps, const std::string& provenance) {
  with_out_file(path, [&](std::ostream& out) { write_events(out, ps, provenance); });
}

void write_tree(std::ostream& out, const Tree& t, const std::string& provenance) {
  std::vector<Edge> edges = t.edges();
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  write_provenance(out, provenance);
  out << "u,v,length,weight\n";
  for (const auto& e : edges)
    out << e.u << ',' << e.v << ',' << format_double(e.length) << ',' << format_double(e.weight) << '\n';
}

void write_tree_file(const std::string& path, const Tree& t, const std::string& provenance) {
  with_out_file(path, [&](std::ostream& out) { write_tree(out, t, provenance); });
}

std::vector<Edge> read_tree(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no) || trim(line) != "u,v,length,weight")
    fail(ErrorCode::Parse, "tree file must start with header 'u,v,length,weight'");
  std::vector<Edge> edges;
  while (next_line(in, line, line_no)) {
    const auto f = split(line);
    if (f.size() != 4) parse_error(line_no, "expected 4 fields, got " + std::to_string(f.size()));
    Edge e{parse_index(f[0], line_no, "u"), parse_index(f[1], line_no, "v"), parse_double(f[2], line_no, "length"),
           parse_double(f[3], line_no, "weight")};
    edges.push_back(e);
  }
  return edges;
}

std::vector<Edge> read_tree_file(const std::string& path) {
  auto in = open_in(path);
  return read_tree(in);
}

void write_histogram(std::ostream& out, const Histogram& h, const std::string& provenance) {
  write_provenance(out, provenance);
  out << "bin_lo,bin_hi,content\n";
  for (std::size_t i = 0; i < h.bin_count(); ++i)
    out << format_double(h.bin_lo(i)) << ',' << format_double(h.bin_hi(i)) << ',' << format_double(h.content(i))
        << '\n';
  out << "overflow,," << format_double(h.overflow()) << '\n';
  out << "underflow,," << format_double(h.underflow()) << '\n';
}

void write_histogram_file(const std::string& path, const Histogram& h, const std::string& provenance) {
  with_out_file(path, [&](std::ostream& out) { write_histogram(out, h, provenance); });
}

Histogram read_histogram(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no) || trim(line) != "bin_lo,bin_hi,content")
    fail(ErrorCode::Parse, "histogram file must start with header 'bin_lo,bin_hi,content'");
  std::vector<double> lows, highs, contents;
  double overflow = 0.0, underflow = 0.0;
  bool saw_over = false, saw_under = false;
  while (next_line(in, line, line_no)) {
    const auto f = split(line);
    if (f.size() != 3) parse_error(line_no, "expected 3 fields, got " + std::to_string(f.size()));
    const std::string key = trim(f[0]);
    if (key == "overflow") {
      overflow = parse_double(f[2], line_no, "content");
      saw_over = true;
    } else if (key == "underflow") {
      underflow = parse_double(f[2], line_no, "content");
      saw_under = true;
    } else {
      if (saw_over || saw_under) parse_error(line_no, "bin row after overflow/underflow rows");
      lows.push_back(parse_double(f[0], line_no, "bin_lo"));
      highs.push_back(parse_double(f[1], line_no, "bin_hi", true));
      contents.push_back(parse_double(f[2], line_no, "content"));
    }
  }
  if (lows.empty()) fail(ErrorCode::Parse, "histogram file has no bins");
  const bool folded = std::isinf(highs.back());
  double hi = highs.back();
  if (folded) hi = lows.size() > 1 ? lows.back() + (lows[1] - lows[0]) : lows.back() + 1.0;
  if (lows.size() == 1 && folded) fail(ErrorCode::Parse, "single folded bin has no recoverable width");
  return Histogram::from_contents(lows.front(), hi, folded, std::move(contents), underflow, overflow);
}

Histogram read_histogram_file(const std::string& path) {
  auto in = open_in(path);
  try {
    return read_histogram(in);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Parse) fail(ErrorCode::Parse, path + ": " + e.what());
    throw;
  }
}

void write_comparison(std::ostream& out, const ComparisonResult& r, const std::string& provenance) {
  write_provenance(out, provenance);
  out << "vertex,nearest,c,r,weight\n";
  for (const auto& rec : r.records)
    out << rec.vertex << ',' << rec.nearest << ',' << format_double(rec.c) << ','
        << (r.has_ratios ? format_double(rec.r) : std::string()) << ',' << format_double(rec.weight) << '\n';
}

void write_comparison_file(const std::string& path, const ComparisonResult& r, const std::string& provenance) {
  with_out_file(path, [&](std::ostream& out) { write_comparison(out, r, provenance); });
}

void write_text_file(const std::string& path, const std::string& contents) {
  with_out_file(path, [&](std::ostream& out) { out << contents; });
}

}  // namespace mstkit
