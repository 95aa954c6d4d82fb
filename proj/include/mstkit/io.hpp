#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mstkit/geometry.hpp"
#include "mstkit/histogram.hpp"
#include "mstkit/mst.hpp"
#include "mstkit/tree_compare.hpp"

namespace mstkit {

/// Shortest decimal that parses back to the same double ("inf"/"-inf"/"nan"
/// for non-finite values).
std::string format_double(double x);

/// Event files are comma-separated text with a header row. Columns named
/// `weight` and `label` are special, every other column is a numeric feature.
/// Lines starting with '#' are comments (provenance headers). Fields are not
/// quoted, so labels cannot contain commas.
PointSet read_events(std::istream& in);
PointSet read_events_file(const std::string& path);
void write_events(std::ostream& out, const PointSet& ps, const std::string& provenance = {});
void write_events_file(const std::string& path, const PointSet& ps, const std::string& provenance = {});

/// Tree file: header `u,v,length,weight`, one edge per row sorted by (u, v).
void write_tree(std::ostream& out, const Tree& t, const std::string& provenance = {});
void write_tree_file(const std::string& path, const Tree& t, const std::string& provenance = {});
std::vector<Edge> read_tree(std::istream& in);
std::vector<Edge> read_tree_file(const std::string& path);

/// Histogram CSV: header `bin_lo,bin_hi,content`, one row per bin, then
/// `overflow,,x` and `underflow,,x`. A folded overflow bin is written with
/// bin_hi = inf.
void write_histogram(std::ostream& out, const Histogram& h, const std::string& provenance = {});
void write_histogram_file(const std::string& path, const Histogram& h, const std::string& provenance = {});
Histogram read_histogram(std::istream& in);
Histogram read_histogram_file(const std::string& path);

/// Per-vertex comparison table: `vertex,nearest,c,r,weight`.
void write_comparison(std::ostream& out, const ComparisonResult& r, const std::string& provenance = {});
void write_comparison_file(const std::string& path, const ComparisonResult& r, const std::string& provenance = {});

/// Writes `contents` to `path`, raising an Io error on failure.
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace mstkit
