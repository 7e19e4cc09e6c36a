#include "gnls/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "gnls/error.hpp"

namespace gnls {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

int parse_int(const std::string& t) {
  char* end = nullptr;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size() || v < -1000000000L || v > 1000000000L) {
    throw InvalidArgument("expected an integer, found '" + t + "'");
  }
  return static_cast<int>(v);
}

bool parse_bool(const std::string& t) {
  if (t == "true" || t == "yes" || t == "1") return true;
  if (t == "false" || t == "no" || t == "0") return false;
  throw InvalidArgument("expected true or false, found '" + t + "'");
}

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"problem", {"symbol", "s", "mu", "m", "gamma", "split", "v", "omega", "sigma", "axis"}},
      {"grid", {"n", "N", "sizes", "L"}},
      {"solver", {"tol", "max_iter", "width", "boost_phase"}},
      {"verify", {"tau", "s1", "s2", "modrearr", "minkowski", "phase_residual"}},
      {"sweep", {"param", "from", "to", "count"}},
      {"run", {"seed", "out"}},
  };
  return keys;
}

}  // namespace

double parse_number(const std::string& raw) {
  std::string t = trim(raw);
  double factor = 1.0;
  if (t.size() >= 2 && t.compare(t.size() - 2, 2, "pi") == 0) {
    factor = std::numbers::pi;
    t = trim(t.substr(0, t.size() - 2));
    if (t.empty() || t == "+") return factor;
    if (t == "-") return -factor;
  }
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v)) {
    throw InvalidArgument("expected a number, found '" + trim(raw) + "'");
  }
  return v * factor;
}

Symbol RunConfig::make_symbol() const {
  const auto& k = symbol.kind;
  Symbol sym = [&] {
    if (k == "fractional") return Symbol::fractional(symbol.s);
    if (k == "biharmonic") return Symbol::biharmonic(symbol.mu);
    if (k == "sqrt_klein_gordon") return Symbol::sqrt_klein_gordon(symbol.m);
    if (k == "half_wave") return Symbol::half_wave();
    if (k == "anisotropic_hws") return Symbol::anisotropic_hws(symbol.gamma, symbol.split);
    throw InvalidArgument("unknown symbol kind '" + k + "'");
  }();
  return sym.with_axis(axis);
}

Grid RunConfig::make_grid() const {
  std::vector<int> sz = sizes;
  if (sz.size() == 1 && dim > 1) sz.assign(dim, sz[0]);
  std::vector<double> hl = half_lengths;
  if (hl.empty()) hl.assign(dim, 20.0 * std::numbers::pi);
  if (hl.size() == 1 && dim > 1) hl.assign(dim, hl[0]);
  if (static_cast<int>(sz.size()) != dim || static_cast<int>(hl.size()) != dim) {
    throw InvalidArgument("grid sizes and L must give one entry per axis (or a single shared value)");
  }
  return Grid(dim, sz, hl);
}

std::vector<double> RunConfig::velocity() const {
  if (v.empty()) return std::vector<double>(dim, 0.0);
  if (v.size() == 1 && dim > 1) {
    std::vector<double> vel(dim, 0.0);
    vel[axis] = v[0];
    return vel;
  }
  return v;
}

Problem RunConfig::make_problem() const {
  const Grid g = make_grid();
  if (axis < 0 || axis >= g.dim()) throw InvalidArgument("axis must index a grid axis");
  return gnls::make_problem({make_symbol(), velocity()}, omega, sigma, g);
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  std::set<std::string> seen;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", lineno);
      section = trim(line.substr(1, line.size() - 2));
      if (!known_keys().count(section)) throw ConfigError("unknown section [" + section + "]", lineno);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", lineno);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) throw ConfigError("key '" + key + "' appears before any [section]", lineno);
    if (!known_keys().at(section).count(key)) {
      throw ConfigError("unknown key '" + key + "' in [" + section + "]", lineno);
    }
    if (!seen.insert(section + "." + key).second) {
      throw ConfigError("duplicate key '" + key + "' in [" + section + "]", lineno);
    }
    if (value.empty()) throw ConfigError("empty value for '" + key + "'", lineno);

    try {
      if (section == "problem") {
        if (key == "symbol") {
          static const std::set<std::string> kinds{"fractional", "biharmonic", "sqrt_klein_gordon", "half_wave",
                                                   "anisotropic_hws"};
          if (!kinds.count(value)) throw InvalidArgument("unknown symbol kind '" + value + "'");
          cfg.symbol.kind = value;
        } else if (key == "s") cfg.symbol.s = parse_number(value);
        else if (key == "mu") cfg.symbol.mu = parse_number(value);
        else if (key == "m") cfg.symbol.m = parse_number(value);
        else if (key == "gamma") cfg.symbol.gamma = parse_number(value);
        else if (key == "split") cfg.symbol.split = parse_int(value);
        else if (key == "v") {
          cfg.v.clear();
          for (const auto& item : split_list(value)) cfg.v.push_back(parse_number(item));
        } else if (key == "omega") cfg.omega = parse_number(value);
        else if (key == "sigma") cfg.sigma = parse_int(value);
        else if (key == "axis") cfg.axis = parse_int(value);
      } else if (section == "grid") {
        if (key == "n") cfg.dim = parse_int(value);
        else if (key == "N" || key == "sizes") {
          cfg.sizes.clear();
          for (const auto& item : split_list(value)) cfg.sizes.push_back(parse_int(item));
        } else if (key == "L") {
          cfg.half_lengths.clear();
          for (const auto& item : split_list(value)) cfg.half_lengths.push_back(parse_number(item));
        }
      } else if (section == "solver") {
        if (key == "tol") cfg.solver.tol = parse_number(value);
        else if (key == "max_iter") cfg.solver.max_iter = parse_int(value);
        else if (key == "width") cfg.solver.width = parse_number(value);
        else if (key == "boost_phase") cfg.solver.boost_phase = parse_bool(value);
      } else if (section == "verify") {
        const double x = parse_number(value);
        if (key == "tau") cfg.thresholds.tau = x;
        else if (key == "s1") cfg.thresholds.s1 = x;
        else if (key == "s2") cfg.thresholds.s2 = x;
        else if (key == "modrearr") cfg.thresholds.modrearr = x;
        else if (key == "minkowski") cfg.thresholds.minkowski = x;
        else if (key == "phase_residual") cfg.thresholds.phase_residual = x;
      } else if (section == "sweep") {
        if (key == "param") {
          if (value != "v" && value != "omega") throw InvalidArgument("sweep param must be v or omega");
          cfg.sweep.param = value;
        } else if (key == "from") cfg.sweep.from = parse_number(value);
        else if (key == "to") cfg.sweep.to = parse_number(value);
        else if (key == "count") cfg.sweep.count = parse_int(value);
      } else if (section == "run") {
        if (key == "seed") {
          const int s = parse_int(value);
          if (s < 0) throw InvalidArgument("seed must be nonnegative");
          cfg.seed = static_cast<std::uint64_t>(s);
        } else if (key == "out") cfg.out_dir = value;
      }
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what(), lineno);
    }
  }

  try {
    (void)cfg.make_grid();
    (void)cfg.make_symbol();
    if (cfg.axis < 0 || cfg.axis >= cfg.dim) throw InvalidArgument("axis must index a grid axis");
    if (!cfg.v.empty() && cfg.v.size() != 1 && static_cast<int>(cfg.v.size()) != cfg.dim) {
      throw InvalidArgument("v must have one component per axis (or a single speed along the axis)");
    }
    if (!(cfg.solver.tol > 0.0) || cfg.solver.max_iter < 1) throw InvalidArgument("solver tol and max_iter must be positive");
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what(), 0);
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'", 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace gnls
