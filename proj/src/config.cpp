#include "rotgpe/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "rotgpe/functionals.hpp"
#include "rotgpe/random_field.hpp"

namespace rotgpe {
namespace {

struct Entry {
  std::string value;
  int line;
};

using Section = std::map<std::string, Entry>;

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"params", {"gamma", "gamma0", "v0", "omega", "k3", "rho", "test_mode"}},
      {"grid", {"half_width", "n"}},
      {"evolve", {"dt", "t_end", "log_every", "linear_mode", "initial", "perturbation"}},
      {"flow", {"tau", "tol_energy", "tol_residual", "max_iter", "seed"}},
      {"stability", {"delta", "t_end", "dt", "sample_every"}},
      {"run", {"seed", "out_dir"}},
  };
  return s;
}

class Reader {
 public:
  Reader(std::map<std::string, Section> sections, std::map<std::string, int> header_lines)
      : sec_(std::move(sections)), header_(std::move(header_lines)) {}

  bool has_section(const std::string& s) const { return sec_.count(s) > 0; }

  const Entry* find(const std::string& s, const std::string& k) const {
    auto it = sec_.find(s);
    if (it == sec_.end()) return nullptr;
    auto e = it->second.find(k);
    return e == it->second.end() ? nullptr : &e->second;
  }

  const Entry& require(const std::string& s, const std::string& k) const {
    if (const Entry* e = find(s, k)) return *e;
    auto h = header_.find(s);
    throw ConfigError(s + "." + k, h == header_.end() ? 0 : h->second, "missing required key");
  }

  double number(const std::string& s, const std::string& k, const Entry& e) const {
    double v = 0.0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) throw ConfigError(s + "." + k, e.line, "not a number: '" + e.value + "'");
    if (!std::isfinite(v)) throw ConfigError(s + "." + k, e.line, "value must be finite");
    return v;
  }

  double num_or(const std::string& s, const std::string& k, double dflt) const {
    const Entry* e = find(s, k);
    return e ? number(s, k, *e) : dflt;
  }

  double num_req(const std::string& s, const std::string& k) const { return number(s, k, require(s, k)); }

  long integer(const std::string& s, const std::string& k, long dflt) const {
    const Entry* e = find(s, k);
    if (!e) return dflt;
    long v = 0;
    auto [ptr, ec] = std::from_chars(e->value.data(), e->value.data() + e->value.size(), v);
    if (ec != std::errc() || ptr != e->value.data() + e->value.size())
      throw ConfigError(s + "." + k, e->line, "not an integer: '" + e->value + "'");
    return v;
  }

  bool boolean(const std::string& s, const std::string& k, bool dflt) const {
    const Entry* e = find(s, k);
    if (!e) return dflt;
    if (e->value == "true" || e->value == "1") return true;
    if (e->value == "false" || e->value == "0") return false;
    throw ConfigError(s + "." + k, e->line, "expected true or false");
  }

  int line_of(const std::string& s, const std::string& k) const {
    const Entry* e = find(s, k);
    if (e) return e->line;
    auto h = header_.find(s);
    return h == header_.end() ? 0 : h->second;
  }

 private:
  std::map<std::string, Section> sec_;
  std::map<std::string, int> header_;
};

Reader tokenize(const std::string& text) {
  std::map<std::string, Section> sections;
  std::map<std::string, int> headers;
  std::istringstream is(text);
  std::string raw, current;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const auto hash = raw.find_first_of("#;");
    std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError("", line, "malformed section header");
      current = trim(s.substr(1, s.size() - 2));
      if (!schema().count(current)) throw ConfigError(current, line, "unknown section");
      if (headers.count(current)) throw ConfigError(current, line, "duplicate section");
      headers[current] = line;
      sections[current];
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("", line, "expected key = value");
    const std::string key = trim(s.substr(0, eq)), value = trim(s.substr(eq + 1));
    if (current.empty()) throw ConfigError(key, line, "key outside of any section");
    if (!schema().at(current).count(key)) throw ConfigError(current + "." + key, line, "unknown key");
    if (sections[current].count(key)) throw ConfigError(current + "." + key, line, "duplicate key");
    if (value.empty()) throw ConfigError(current + "." + key, line, "empty value");
    sections[current][key] = {value, line};
  }
  return Reader(std::move(sections), std::move(headers));
}

SeedKind seed_from(const Reader& r, const std::string& s, const std::string& k, const SeedKind& dflt) {
  const Entry* e = r.find(s, k);
  if (!e) return dflt;
  try {
    return SeedKind::parse(e->value);
  } catch (const Error& err) {
    throw ConfigError(s + "." + k, e->line, err.what());
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  const Reader r = tokenize(text);
  RunConfig c;
  if (!r.has_section("params")) throw ConfigError("params", 0, "missing required section");

  Params& p = c.params;
  p.test_mode = r.boolean("params", "test_mode", false);
  p.gamma = r.num_req("params", "gamma");
  p.gamma0 = r.num_req("params", "gamma0");
  p.v0 = r.num_req("params", "v0");
  const Entry& om = r.require("params", "omega");
  // the keyword assigns gamma itself so that the regime test sees exact equality
  p.omega_rot = om.value == "critical" ? p.gamma : r.number("params", "omega", om);
  p.k3 = r.num_req("params", "k3");
  p.rho = r.num_req("params", "rho");
  auto check = [&](bool ok, const char* key, const char* msg) {
    if (!ok) throw ConfigError(std::string("params.") + key, r.line_of("params", key), msg);
  };
  check(p.test_mode ? p.gamma >= 0.0 : p.gamma > 0.0, "gamma", "gamma must be > 0 (set test_mode to allow 0)");
  check(p.gamma0 > 0.0, "gamma0", "gamma0 must be > 0");
  check(p.v0 >= 0.0, "v0", "v0 must be >= 0");
  check(p.omega_rot >= 0.0, "omega", "omega must be >= 0");
  check(p.k3 >= 0.0, "k3", "k3 must be >= 0");
  check(p.rho > 0.0, "rho", "rho must be > 0");

  const double hw = r.num_or("grid", "half_width", 12.0);
  const long n = r.integer("grid", "n", 256);
  try {
    c.grid = GridSpec::make(hw, static_cast<int>(n));
  } catch (const Error& e) {
    const bool bad_n = n < 8 || (n & (n - 1)) != 0;
    throw ConfigError(bad_n ? "grid.n" : "grid.half_width", r.line_of("grid", bad_n ? "n" : "half_width"), e.what());
  }

  if (r.has_section("evolve")) {
    EvolveConfig e;
    e.dt = r.num_or("evolve", "dt", 1e-3);
    e.t_end = r.num_req("evolve", "t_end");
    e.log_every = static_cast<int>(r.integer("evolve", "log_every", 1));
    e.linear_mode = r.boolean("evolve", "linear_mode", false);
    if (!(e.dt > 0.0)) throw ConfigError("evolve.dt", r.line_of("evolve", "dt"), "dt must be > 0");
    if (!(e.t_end >= 0.0)) throw ConfigError("evolve.t_end", r.line_of("evolve", "t_end"), "t_end must be >= 0");
    if (e.log_every < 1) throw ConfigError("evolve.log_every", r.line_of("evolve", "log_every"), "must be >= 1");
    c.evolve = e;
    c.initial.shape = seed_from(r, "evolve", "initial", SeedKind{});
    c.initial.perturbation = r.num_or("evolve", "perturbation", 0.0);
    if (c.initial.perturbation < 0.0)
      throw ConfigError("evolve.perturbation", r.line_of("evolve", "perturbation"), "must be >= 0");
  }

  if (r.has_section("flow")) {
    FlowConfig f;
    f.tau = r.num_or("flow", "tau", f.tau);
    f.tol_energy = r.num_or("flow", "tol_energy", f.tol_energy);
    f.tol_residual = r.num_or("flow", "tol_residual", f.tol_residual);
    f.max_iter = static_cast<int>(r.integer("flow", "max_iter", f.max_iter));
    f.seed = seed_from(r, "flow", "seed", f.seed);
    try {
      f.validate();
    } catch (const Error& e) {
      throw ConfigError("flow", r.line_of("flow", "tau"), e.what());
    }
    c.flow = f;
  }

  c.stability.delta = r.num_or("stability", "delta", c.stability.delta);
  c.stability.t_end = r.num_or("stability", "t_end", c.stability.t_end);
  c.stability.dt = r.num_or("stability", "dt", c.stability.dt);
  c.stability.sample_every = static_cast<int>(r.integer("stability", "sample_every", c.stability.sample_every));
  if (c.stability.delta < 0.0) throw ConfigError("stability.delta", r.line_of("stability", "delta"), "must be >= 0");
  if (!(c.stability.dt > 0.0)) throw ConfigError("stability.dt", r.line_of("stability", "dt"), "must be > 0");
  if (c.stability.sample_every < 1)
    throw ConfigError("stability.sample_every", r.line_of("stability", "sample_every"), "must be >= 1");

  const long seed = r.integer("run", "seed", 1);
  if (seed < 0) throw ConfigError("run.seed", r.line_of("run", "seed"), "must be >= 0");
  c.seed = static_cast<std::uint64_t>(seed);
  if (const Entry* e = r.find("run", "out_dir")) c.out_dir = e->value;
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("", 0, "cannot open config file " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

std::string to_ini(const RunConfig& c) {
  std::ostringstream os;
  const Params& p = c.params;
  os << "[params]\n"
     << "gamma = " << fmt(p.gamma) << "\n"
     << "gamma0 = " << fmt(p.gamma0) << "\n"
     << "v0 = " << fmt(p.v0) << "\n"
     << "omega = " << (p.regime() == Regime::Critical ? std::string("critical") : fmt(p.omega_rot)) << "\n"
     << "k3 = " << fmt(p.k3) << "\n"
     << "rho = " << fmt(p.rho) << "\n"
     << "test_mode = " << (p.test_mode ? "true" : "false") << "\n"
     << "# regime: " << to_string(p.regime()) << "\n\n"
     << "[grid]\n"
     << "half_width = " << fmt(c.grid.half_width) << "\n"
     << "n = " << c.grid.n << "\n";
  if (c.evolve) {
    os << "\n[evolve]\n"
       << "dt = " << fmt(c.evolve->dt) << "\n"
       << "t_end = " << fmt(c.evolve->t_end) << "\n"
       << "log_every = " << c.evolve->log_every << "\n"
       << "linear_mode = " << (c.evolve->linear_mode ? "true" : "false") << "\n"
       << "initial = " << c.initial.shape.str() << "\n"
       << "perturbation = " << fmt(c.initial.perturbation) << "\n";
  }
  if (c.flow) {
    os << "\n[flow]\n"
       << "tau = " << fmt(c.flow->tau) << "\n"
       << "tol_energy = " << fmt(c.flow->tol_energy) << "\n"
       << "tol_residual = " << fmt(c.flow->tol_residual) << "\n"
       << "max_iter = " << c.flow->max_iter << "\n"
       << "seed = " << c.flow->seed.str() << "\n";
  }
  os << "\n[stability]\n"
     << "delta = " << fmt(c.stability.delta) << "\n"
     << "t_end = " << fmt(c.stability.t_end) << "\n"
     << "dt = " << fmt(c.stability.dt) << "\n"
     << "sample_every = " << c.stability.sample_every << "\n\n"
     << "[run]\n"
     << "seed = " << c.seed << "\n"
     << "out_dir = " << c.out_dir << "\n";
  return os.str();
}

ComplexField initial_field(const RunConfig& c) {
  ComplexField f = seed_field(c.initial.shape, c.params, c.grid);
  if (c.initial.perturbation > 0.0) {
    const ComplexField g = random_band_limited(c.grid, c.seed);
    const double s = c.initial.perturbation * std::sqrt(mass(f) / mass(g));
    for (std::size_t k = 0; k < f.values.size(); ++k) f.values[k] += s * g.values[k];
  }
  const double m = mass(f);
  if (m > 0.0) f *= std::sqrt(c.params.rho / m);
  return f;
}

}  // namespace rotgpe
