#pragma once

#include <optional>
#include <string>
#include <vector>

#include "peq/diagnostics.hpp"
#include "peq/field.hpp"
#include "peq/grid.hpp"
#include "peq/params.hpp"
#include "peq/state.hpp"

namespace peq {

// %.17g; round-trips every finite double.
std::string format_double(double x);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::optional<double>>> rows;  // empty cell = nullopt

  // Index of a column, or -1.
  int column(const std::string& name) const;
};

std::string table_csv(const Table& t);
Table parse_csv(const std::string& text);

Table diag_table(const std::vector<DiagRecord>& records);
std::string timeseries_csv(const std::vector<DiagRecord>& records);

// All writers throw IoError naming the path.
void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);
void write_timeseries(const std::string& path, const std::vector<DiagRecord>& records);
void write_table(const std::string& path, const Table& t);
Table read_table(const std::string& path);

// PEQ1 layout: "PEQ1", nx ny nz as u32 LE, then f64 LE interiors (x-fastest)
// of v1, v2, T, w and p_s (nx*ny values).
struct Snapshot {
  Field3D v1, v2, T, w;
  Field2D p_s;
};
std::string snapshot_bytes(const State& s);
Snapshot parse_snapshot(const std::string& bytes);
void write_snapshot(const std::string& path, const State& s);
Snapshot read_snapshot(const std::string& path);

struct PlotSeries {
  std::string name;
  std::vector<double> t, y;
  bool dashed = false;
};

struct PlotSpec {
  std::string title;
  std::vector<PlotSeries> series;
  int width = 800, height = 500;
};

// Log-scale y axis; non-positive and non-finite points are skipped.
std::string plot_svg(const PlotSpec& spec);

// gronwall_T_envelope sampled at `times`, measured from times.front().
PlotSeries envelope_series(const std::vector<double>& times, double l2_T0, double l2_Q, const PhysParams& p);

}  // namespace peq
