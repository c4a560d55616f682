#include "peq/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "peq/errors.hpp"

namespace peq {

std::string format_double(double x) {
  char buf[40];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf, static_cast<std::size_t>(n));
}

int Table::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

std::string table_csv(const Table& t) {
  std::string out;
  for (std::size_t c = 0; c < t.header.size(); ++c) {
    if (c) out += ',';
    out += t.header[c];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      if (row[c]) out += format_double(*row[c]);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  cells.push_back(cur);
  return cells;
}

std::optional<double> parse_cell(const std::string& s, int line) {
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    // from_chars rejects "inf"/"nan" spellings produced by printf on some builds
    if (s == "inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
    if (s == "nan" || s == "-nan") return std::nan("");
    throw IoError("csv line " + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v;
}

}  // namespace

Table parse_csv(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (n == 1) {
      t.header = split(line);
      continue;
    }
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != t.header.size())
      throw IoError("csv line " + std::to_string(n) + ": expected " + std::to_string(t.header.size()) + " cells");
    std::vector<std::optional<double>> row;
    for (const auto& c : cells) row.push_back(parse_cell(c, n));
    t.rows.push_back(std::move(row));
  }
  if (n == 0) throw IoError("csv: empty input");
  return t;
}

Table diag_table(const std::vector<DiagRecord>& records) {
  Table t;
  t.header = diag_columns();
  for (const auto& r : records) t.rows.push_back(diag_values(r));
  return t;
}

std::string timeseries_csv(const std::vector<DiagRecord>& records) { return table_csv(diag_table(records)); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed: " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path);
  return ss.str();
}

void write_timeseries(const std::string& path, const std::vector<DiagRecord>& records) {
  write_text(path, timeseries_csv(records));
}

void write_table(const std::string& path, const Table& t) { write_text(path, table_csv(t)); }

Table read_table(const std::string& path) {
  try {
    return parse_csv(read_text(path));
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out += static_cast<char>((v >> (8 * b)) & 0xffu);
}

void put_f64(std::string& out, double x) {
  const auto v = std::bit_cast<std::uint64_t>(x);
  for (int b = 0; b < 8; ++b) out += static_cast<char>((v >> (8 * b)) & 0xffu);
}

std::uint64_t get_le(const std::string& in, std::size_t& pos, int bytes) {
  if (pos + static_cast<std::size_t>(bytes) > in.size()) throw IoError("snapshot truncated");
  std::uint64_t v = 0;
  for (int b = 0; b < bytes; ++b)
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + static_cast<std::size_t>(b)])) << (8 * b);
  pos += static_cast<std::size_t>(bytes);
  return v;
}

}  // namespace

std::string snapshot_bytes(const State& s) {
  const int nx = s.v1.nx(), ny = s.v1.ny(), nz = s.v1.nz();
  std::string out = "PEQ1";
  put_u32(out, static_cast<std::uint32_t>(nx));
  put_u32(out, static_cast<std::uint32_t>(ny));
  put_u32(out, static_cast<std::uint32_t>(nz));
  for (const Field3D* f : {&s.v1, &s.v2, &s.T, &s.w}) {
    if (f->empty()) {
      for (long c = 0; c < static_cast<long>(nx) * ny * nz; ++c) put_f64(out, 0.0);
      continue;
    }
    for (double v : f->interior()) put_f64(out, v);
  }
  if (s.p_s.empty()) {
    for (long c = 0; c < static_cast<long>(nx) * ny; ++c) put_f64(out, 0.0);
  } else {
    for (double v : s.p_s.interior()) put_f64(out, v);
  }
  return out;
}

Snapshot parse_snapshot(const std::string& bytes) {
  if (bytes.size() < 16 || bytes.compare(0, 4, "PEQ1") != 0) throw IoError("not a PEQ1 snapshot");
  std::size_t pos = 4;
  const auto nx = static_cast<int>(get_le(bytes, pos, 4));
  const auto ny = static_cast<int>(get_le(bytes, pos, 4));
  const auto nz = static_cast<int>(get_le(bytes, pos, 4));
  if (nx <= 0 || ny <= 0 || nz <= 0) throw IoError("snapshot has invalid dimensions");
  const std::size_t n3 = static_cast<std::size_t>(nx) * ny * nz, n2 = static_cast<std::size_t>(nx) * ny;
  if (bytes.size() != 16 + 8 * (4 * n3 + n2)) throw IoError("snapshot size does not match its dimensions");
  Snapshot snap;
  std::vector<double> buf;
  for (Field3D* f : {&snap.v1, &snap.v2, &snap.T, &snap.w}) {
    buf.resize(n3);
    for (double& v : buf) v = std::bit_cast<double>(get_le(bytes, pos, 8));
    *f = Field3D(nx, ny, nz);
    f->set_interior(buf);
  }
  buf.resize(n2);
  for (double& v : buf) v = std::bit_cast<double>(get_le(bytes, pos, 8));
  snap.p_s = Field2D(nx, ny);
  snap.p_s.set_interior(buf);
  return snap;
}

void write_snapshot(const std::string& path, const State& s) { write_text(path, snapshot_bytes(s)); }

Snapshot read_snapshot(const std::string& path) {
  try {
    return parse_snapshot(read_text(path));
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string esc(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '<') o += "&lt;";
    else if (c == '>') o += "&gt;";
    else if (c == '&') o += "&amp;";
    else if (c == '"') o += "&quot;";
    else o += c;
  }
  return o;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string plot_svg(const PlotSpec& spec) {
  double t0 = HUGE_VAL, t1 = -HUGE_VAL, y0 = HUGE_VAL, y1 = -HUGE_VAL;
  for (const auto& s : spec.series)
    for (std::size_t n = 0; n < std::min(s.t.size(), s.y.size()); ++n) {
      if (!(s.y[n] > 0.0) || !std::isfinite(s.y[n]) || !std::isfinite(s.t[n])) continue;
      t0 = std::min(t0, s.t[n]);
      t1 = std::max(t1, s.t[n]);
      y0 = std::min(y0, std::log10(s.y[n]));
      y1 = std::max(y1, std::log10(s.y[n]));
    }
  if (t0 > t1) {
    t0 = 0;
    t1 = 1;
    y0 = 0;
    y1 = 1;
  }
  if (t1 == t0) t1 = t0 + 1;
  y0 = std::floor(y0);
  y1 = std::ceil(y1);
  if (y1 == y0) y1 = y0 + 1;
  const double W = spec.width, H = spec.height, ml = 70, mr = 160, mt = 40, mb = 50;
  const double pw = W - ml - mr, ph = H - mt - mb;
  auto X = [&](double t) { return ml + (t - t0) / (t1 - t0) * pw; };
  auto Y = [&](double ly) { return mt + (y1 - ly) / (y1 - y0) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\"" << spec.height
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << num(W / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << esc(spec.title)
    << "</text>\n";
  o << "<rect x=\"" << num(ml) << "\" y=\"" << num(mt) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  const int decades = static_cast<int>(y1 - y0);
  const int step = std::max(1, decades / 10);
  for (int d = static_cast<int>(y0); d <= static_cast<int>(y1); d += step) {
    const double yy = Y(d);
    o << "<line x1=\"" << num(ml) << "\" x2=\"" << num(ml + pw) << "\" y1=\"" << num(yy) << "\" y2=\"" << num(yy)
      << "\" stroke=\"#ddd\"/>\n";
    o << "<text x=\"" << num(ml - 6) << "\" y=\"" << num(yy + 4) << "\" text-anchor=\"end\">1e" << d << "</text>\n";
  }
  for (int n = 0; n <= 5; ++n) {
    const double t = t0 + (t1 - t0) * n / 5.0;
    o << "<text x=\"" << num(X(t)) << "\" y=\"" << num(mt + ph + 18) << "\" text-anchor=\"middle\">"
      << format_double(std::round(t * 1000) / 1000).substr(0, 8) << "</text>\n";
  }
  o << "<text x=\"" << num(ml + pw / 2) << "\" y=\"" << num(H - 10) << "\" text-anchor=\"middle\">t</text>\n";
  for (std::size_t si = 0; si < spec.series.size(); ++si) {
    const auto& s = spec.series[si];
    const char* colour = kPalette[si % (sizeof kPalette / sizeof *kPalette)];
    std::string pts;
    for (std::size_t n = 0; n < std::min(s.t.size(), s.y.size()); ++n) {
      if (!(s.y[n] > 0.0) || !std::isfinite(s.y[n]) || !std::isfinite(s.t[n])) continue;
      pts += num(X(s.t[n])) + "," + num(Y(std::log10(s.y[n]))) + " ";
    }
    o << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\"" 
      << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"" << pts << "\"/>\n";
    const double ly = mt + 16 + 18.0 * static_cast<double>(si);
    o << "<line x1=\"" << num(ml + pw + 10) << "\" x2=\"" << num(ml + pw + 34) << "\" y1=\"" << num(ly - 4)
      << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << colour << "\" stroke-width=\"2\""
      << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
    o << "<text x=\"" << num(ml + pw + 40) << "\" y=\"" << num(ly) << "\">" << esc(s.name) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

PlotSeries envelope_series(const std::vector<double>& times, double l2_T0, double l2_Q, const PhysParams& p) {
  PlotSeries s;
  s.name = "envelope";
  s.dashed = true;
  s.t = times;
  const double start = times.empty() ? 0.0 : times.front();
  for (double t : times) s.y.push_back(gronwall_T_envelope(t - start, l2_T0, l2_Q, p));
  return s;
}

}  // namespace peq
