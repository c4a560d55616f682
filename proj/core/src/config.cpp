#include "peq/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "peq/errors.hpp"
#include "peq/io.hpp"

namespace peq {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& v) {
  double x = 0.0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || ptr != end || !std::isfinite(x)) throw ConfigError("'" + v + "' is not a finite number");
  return x;
}

long long to_integer(const std::string& v) {
  long long x = 0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || ptr != end) throw ConfigError("'" + v + "' is not an integer");
  return x;
}

bool to_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("'" + v + "' is not a boolean");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(v);
  while (std::getline(in, cur, ',')) {
    cur = trim(cur);
    if (cur.empty()) throw ConfigError("empty list entry in '" + v + "'");
    out.push_back(cur);
  }
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

struct Key {
  std::string section, name;
  std::function<void(const std::string&)> set;
  std::function<std::string()> get;
};

std::string qualified(const Key& k) { return k.section + "." + k.name; }

void require(bool ok, const std::string& name, const char* what) {
  if (!ok) throw ConfigError(name + " " + what);
}

Key positive(const char* sec, const char* name, double& ref) {
  const std::string n = name;
  return {sec, name, [&ref, n](const std::string& v) {
            const double x = to_double(v);
            require(x > 0.0, n, "must be positive");
            ref = x;
          },
          [&ref] { return format_double(ref); }};
}

Key nonnegative(const char* sec, const char* name, double& ref) {
  const std::string n = name;
  return {sec, name, [&ref, n](const std::string& v) {
            const double x = to_double(v);
            require(x >= 0.0, n, "must be non-negative");
            ref = x;
          },
          [&ref] { return format_double(ref); }};
}

Key real(const char* sec, const char* name, double& ref) {
  return {sec, name, [&ref](const std::string& v) { ref = to_double(v); }, [&ref] { return format_double(ref); }};
}

Key integer(const char* sec, const char* name, int& ref, int min) {
  const std::string n = name;
  return {sec, name, [&ref, n, min](const std::string& v) {
            const long long x = to_integer(v);
            if (x < min || x > std::numeric_limits<int>::max())
              throw ConfigError(n + " must be an integer >= " + std::to_string(min));
            ref = static_cast<int>(x);
          },
          [&ref] { return std::to_string(ref); }};
}

Key boolean(const char* sec, const char* name, bool& ref) {
  return {sec, name, [&ref](const std::string& v) { ref = to_bool(v); },
          [&ref] { return std::string(ref ? "true" : "false"); }};
}

Key text(const char* sec, const char* name, std::string& ref) {
  return {sec, name, [&ref](const std::string& v) { ref = v; }, [&ref] { return ref; }};
}

void add_blob(std::vector<Key>& keys, const char* sec, BlobSpec& b) {
  keys.push_back(real(sec, "cx", b.cx));
  keys.push_back(real(sec, "cy", b.cy));
  keys.push_back(real(sec, "cz", b.cz));
  keys.push_back(positive(sec, "width", b.width));
  keys.push_back(real(sec, "amplitude", b.amplitude));
}

std::vector<Key> key_table(RunConfig& c) {
  std::vector<Key> k;
  PhysParams& p = c.scenario.phys;
  for (auto [name, ref] : {std::pair<const char*, double*>{"re1", &p.re1}, {"re2", &p.re2}, {"rt1", &p.rt1},
                           {"rt2", &p.rt2}, {"ro", &p.ro}})
    k.push_back(positive("physics", name, *ref));
  k.push_back(real("physics", "f0", p.f0));
  k.push_back(real("physics", "beta", p.beta));
  k.push_back(positive("physics", "alpha", p.alpha));
  k.push_back(positive("physics", "h", p.h));
  k.push_back(positive("physics", "l", p.l));
  k.push_back(positive("physics", "lx", p.lx));

  k.push_back(integer("grid", "nx", c.scenario.nx, kMinCells));
  k.push_back(integer("grid", "ny", c.scenario.ny, kMinCells));
  k.push_back(integer("grid", "nz", c.scenario.nz, kMinCells));

  StepConfig& s = c.scenario.step;
  k.push_back(positive("time", "dt", s.dt));
  k.push_back(nonnegative("time", "t_end", s.t_end));
  k.push_back(integer("time", "output_every", s.output_every, 1));
  k.push_back(positive("time", "cfl_target", s.cfl_target));
  k.push_back(positive("time", "dt_max", s.dt_max));
  k.push_back(boolean("time", "frozen_velocity", s.frozen_velocity));
  k.push_back(positive("time", "diffusion_tol", s.diffusion_tol));
  k.push_back(positive("time", "poisson_tol", s.poisson.tolerance));
  k.push_back(integer("time", "poisson_max_iter", s.poisson.max_iter, 1));
  k.push_back({"time", "poisson_method",
               [&s](const std::string& v) {
                 if (v == "auto") s.poisson.method = PoissonSolve::Method::automatic;
                 else if (v == "direct") s.poisson.method = PoissonSolve::Method::direct;
                 else if (v == "cg") s.poisson.method = PoissonSolve::Method::cg;
                 else throw ConfigError("poisson_method must be auto, direct or cg");
               },
               [&s] {
                 switch (s.poisson.method) {
                   case PoissonSolve::Method::direct: return std::string("direct");
                   case PoissonSolve::Method::cg: return std::string("cg");
                   default: return std::string("auto");
                 }
               }});

  InitialSpec& in = c.scenario.initial;
  k.push_back({"initial", "preset",
               [&in](const std::string& v) {
                 const auto kind = initial_kind_from(v);
                 if (!kind) throw ConfigError("initial preset must be zero, gaussian-blob or mms");
                 in.kind = *kind;
               },
               [&in] { return std::string(to_string(in.kind)); }});
  add_blob(k, "initial", in.blob);
  k.push_back(real("initial", "velocity_amplitude", in.velocity_amplitude));

  SourceSpec& src = c.scenario.source;
  k.push_back({"forcing", "preset",
               [&src](const std::string& v) {
                 const auto kind = source_kind_from(v);
                 if (!kind) throw ConfigError("forcing preset must be zero, gaussian-blob or file");
                 src.kind = *kind;
               },
               [&src] { return std::string(to_string(src.kind)); }});
  add_blob(k, "forcing", src.blob);
  k.push_back(text("forcing", "file", src.path));

  k.push_back(text("output", "dir", c.output.dir));
  k.push_back(boolean("output", "snapshot", c.output.snapshot));
  k.push_back(boolean("output", "plot", c.output.plot));

  CheckConfig& ch = c.scenario.checks;
  k.push_back(real("checks", "poincare_tol", ch.poincare_tol));
  k.push_back(real("checks", "envelope_tol", ch.envelope_tol));
  k.push_back(real("checks", "div_tol", ch.div_tol));
  k.push_back(real("checks", "energy_slack", ch.energy_slack));
  k.push_back(boolean("checks", "energy", ch.energy));

  TailConfig& t = c.tail;
  k.push_back({"tail", "radii",
               [&t](const std::string& v) {
                 std::vector<double> r;
                 for (const auto& e : split_list(v)) r.push_back(to_double(e));
                 t.radii = r;
               },
               [&t] {
                 std::string o;
                 for (std::size_t n = 0; n < t.radii.size(); ++n) o += (n ? ", " : "") + format_double(t.radii[n]);
                 return o;
               }});
  k.push_back(positive("tail", "epsilon", t.epsilon));
  k.push_back(nonnegative("tail", "tau_probe", t.tau_probe));
  k.push_back({"tail", "pair_seed",
               [&t](const std::string& v) {
                 std::uint64_t x = 0;
                 const char* end = v.data() + v.size();
                 auto [ptr, ec] = std::from_chars(v.data(), end, x);
                 if (ec != std::errc() || ptr != end) throw ConfigError("pair_seed must be a non-negative integer");
                 t.pair_seed = x;
               },
               [&t] { return std::to_string(t.pair_seed); }});

  k.push_back(real("contract", "perturbation", c.contract.perturbation));
  k.push_back(boolean("contract", "require_monotone", c.contract.require_monotone));

  k.push_back(integer("truncate", "levels", c.truncate.levels, 2));
  k.push_back(integer("truncate", "factor", c.truncate.factor, 2));
  k.push_back(positive("truncate", "max_rel_diff", c.truncate.max_rel_diff));

  MmsStudyConfig& m = c.mms;
  k.push_back({"mms", "levels",
               [&m](const std::string& v) {
                 std::vector<int> lv;
                 for (const auto& e : split_list(v)) {
                   const long long n = to_integer(e);
                   if (n < kMinCells || n > 256) throw ConfigError("mms levels must lie in [4, 256]");
                   lv.push_back(static_cast<int>(n));
                 }
                 m.levels = lv;
               },
               [&m] {
                 std::string o;
                 for (std::size_t n = 0; n < m.levels.size(); ++n) o += (n ? ", " : "") + std::to_string(m.levels[n]);
                 return o;
               }});
  k.push_back(positive("mms", "dt", m.dt));
  k.push_back(integer("mms", "steps", m.steps, 1));
  k.push_back(real("mms", "order_min", m.order_min));
  k.push_back(real("mms", "order_max", m.order_max));
  MmsSpec& ms = c.scenario.initial.mms;
  k.push_back(real("mms", "a1", ms.a1));
  k.push_back(real("mms", "a2", ms.a2));
  k.push_back(real("mms", "aT", ms.aT));
  k.push_back(real("mms", "ap", ms.ap));

  AbsorbingConfig& a = c.absorbing;
  k.push_back(positive("absorbing", "scale", a.scale));
  k.push_back(positive("absorbing", "radius2", a.radius2));
  k.push_back(nonnegative("absorbing", "horizon_factor", a.horizon_factor));
  k.push_back(nonnegative("absorbing", "dwell_kappas", a.dwell_kappas));
  return k;
}

}  // namespace

void RunConfig::validate() const {
  scenario.phys.validate();
  scenario.grid();
  scenario.step.validate();
  scenario.initial.blob.validate("initial");
  scenario.source.blob.validate("forcing");
  if (scenario.source.kind == SourceKind::file && scenario.source.path.empty())
    throw ConfigError("forcing preset file needs forcing.file");
  // the lx bound on tail radii is checked when the tail experiment runs
  PhysParams unbounded = scenario.phys;
  unbounded.lx = std::numeric_limits<double>::infinity();
  tail.validate(unbounded);
  if (mms.levels.size() < 2) throw ConfigError("mms levels needs at least two entries");
  if (!(mms.order_min <= mms.order_max)) throw ConfigError("mms order_min must not exceed order_max");
  absorbing.validate();
  if (output.dir.empty()) throw ConfigError("output dir must not be empty");
}

RunConfig parse_config(const std::string& textin) {
  RunConfig c;
  std::vector<Key> keys = key_table(c);
  std::map<std::string, std::size_t> index;
  std::map<std::string, bool> sections;
  for (std::size_t n = 0; n < keys.size(); ++n) {
    index[qualified(keys[n])] = n;
    sections[keys[n].section] = true;
  }
  std::map<std::string, int> seen;
  std::istringstream in(textin);
  std::string raw, section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError("malformed section header '" + s + "'", line);
      section = trim(s.substr(1, s.size() - 2));
      if (!sections.count(section)) throw ConfigError("unknown section [" + section + "]", line);
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value', got '" + s + "'", line);
    const std::string key = trim(s.substr(0, eq)), value = trim(s.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key before '='", line);
    if (section.empty()) throw ConfigError("key '" + key + "' appears before any [section]", line);
    const std::string q = section + "." + key;
    const auto it = index.find(q);
    if (it == index.end()) throw ConfigError("unknown key '" + key + "' in [" + section + "]", line);
    if (const auto prev = seen.find(q); prev != seen.end())
      throw ConfigError("duplicate key '" + q + "' (lines " + std::to_string(prev->second) + " and " +
                            std::to_string(line) + ")",
                        line);
    seen[q] = line;
    if (value.empty()) throw ConfigError("key '" + key + "' has no value", line);
    try {
      keys[it->second].set(value);
    } catch (const ConfigError& e) {
      throw ConfigError(e.what(), line);
    }
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::string text;
  try {
    text = read_text(path);
  } catch (const IoError& e) {
    throw ConfigError(e.what());
  }
  try {
    return parse_config(text);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string serialize_config(const RunConfig& cin) {
  RunConfig c = cin;
  const std::vector<Key> keys = key_table(c);
  std::string out, section;
  for (const Key& k : keys) {
    if (k.section != section) {
      if (!section.empty()) out += '\n';
      section = k.section;
      out += "[" + section + "]\n";
    }
    out += k.name + " = " + k.get() + "\n";
  }
  return out;
}

}  // namespace peq
