#include "gnls/cli.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include "gnls/error.hpp"
#include "gnls/field_io.hpp"
#include "gnls/functionals.hpp"
#include "gnls/props.hpp"
#include "gnls/rearrange.hpp"

namespace gnls {
namespace {

namespace fs = std::filesystem;

fs::path output_path(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.out_dir);
  return fs::path(cfg.out_dir) / name;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error("cannot open '" + p.string() + "' for writing");
  return f;
}

std::string join_doubles(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s;
}

// Runs `body` and maps the toolkit's exceptions onto exit codes.
template <class Fn>
int guarded(std::ostream& err, Fn&& body) {
  try {
    return body();
  } catch (const DisconnectedSupport& e) {
    err << "error: " << e.what() << '\n';
    return kExitDisconnected;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

void write_report(std::ostream& os, const Problem& prob, const SolveReport& rep) {
  const Grid& g = prob.grid;
  std::vector<double> sizes, lengths;
  for (int a = 0; a < g.dim(); ++a) {
    sizes.push_back(g.size(a));
    lengths.push_back(g.half_length(a));
  }
  const ElResidual el = el_residual(prob, rep.Q);
  const EnergyMass em = energy_mass(rep.Q, prob.bsym.base, prob.sigma);
  os << "symbol = " << prob.bsym.base.name() << '\n'
     << "order = " << format_double(prob.bsym.base.order()) << '\n'
     << "n = " << g.dim() << '\n'
     << "sizes = " << join_doubles(sizes) << '\n'
     << "L = " << join_doubles(lengths) << '\n'
     << "v = " << join_doubles(prob.bsym.v) << '\n'
     << "omega = " << format_double(prob.omega) << '\n'
     << "sigma = " << prob.sigma << '\n'
     << "Sigma_v = " << format_double(prob.sigma_v) << '\n'
     << "converged = " << (rep.converged ? "true" : "false") << '\n'
     << "iterations = " << rep.iterations << '\n'
     << "J = " << format_double(rep.J) << '\n'
     << "residual = " << format_double(rep.residual) << '\n'
     << "residual_unit = " << format_double(el.unit) << '\n'
     << "E = " << format_double(em.energy) << '\n'
     << "M = " << format_double(em.mass) << '\n';
}

}  // namespace

void apply_overrides(RunConfig& cfg, const CliOverrides& o) {
  if (o.out) cfg.out_dir = *o.out;
  if (o.seed) cfg.seed = *o.seed;
  if (o.tol) {
    if (!(*o.tol > 0.0)) throw ConfigError("--tol must be positive", 0);
    cfg.solver.tol = *o.tol;
  }
}

std::string exit_code_help() {
  return "Exit codes:\n"
         "  0  success\n"
         "  1  configuration, hypothesis or I/O error\n"
         "  2  solver did not converge\n"
         "  3  disconnected Fourier support\n"
         "  4  property or threshold failure\n";
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Problem prob = cfg.make_problem();
    const SolveReport rep = minimize(prob, cfg.solver);
    write_gnf(output_path(cfg, "Q.gnf").string(), rep.Q);
    {
      auto f = open_out(output_path(cfg, "trace.csv"));
      f << "iter,J,residual,Mk\n";
      for (const auto& row : rep.trace) {
        f << row.iter << ',' << format_double(row.J) << ',' << format_double(row.residual) << ','
          << format_double(row.M) << '\n';
      }
    }
    {
      auto f = open_out(output_path(cfg, "report.txt"));
      write_report(f, prob, rep);
    }
    out << (rep.converged ? "converged" : "not converged") << " after " << rep.iterations
        << " iterations: J = " << format_double(rep.J) << ", residual = " << format_double(rep.residual) << '\n';
    return rep.converged ? kExitOk : kExitNotConverged;
  });
}

int cmd_verify(const RunConfig& cfg, const std::string& field_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Field Q = read_gnf(field_path);
    if (cfg.axis >= Q.grid().dim()) throw InvalidArgument("axis exceeds the field dimension");
    const SymmetryReport rep = symmetry_report(Q, cfg.axis, cfg.sigma, cfg.thresholds);
    const std::string name = fs::path(field_path).stem().string();
    {
      auto f = open_out(output_path(cfg, "symmetry.csv"));
      f << "case,s1,s2,modrearr,connected,minkowski,alpha";
      for (int a = 0; a < Q.grid().dim(); ++a) f << ",beta_" << a;
      f << ",residual\n";
      f << name << ',' << format_double(rep.s1_defect) << ',' << format_double(rep.s2_defect) << ','
        << format_double(rep.modulus_rearranged_defect) << ',' << (rep.connected ? "true" : "false") << ','
        << format_double(rep.minkowski_defect) << ',' << format_double(rep.phase.alpha);
      for (double b : rep.phase.beta) f << ',' << format_double(b);
      f << ',' << format_double(rep.phase.residual) << '\n';
    }
    out << "s1 defect          " << format_double(rep.s1_defect) << '\n'
        << "s2 defect          " << format_double(rep.s2_defect) << '\n'
        << "modulus defect     " << format_double(rep.modulus_rearranged_defect) << '\n'
        << "connected          " << (rep.connected ? "yes" : "no") << '\n'
        << "minkowski defect   " << format_double(rep.minkowski_defect) << '\n'
        << "phase alpha        " << format_double(rep.phase.alpha) << '\n'
        << "phase beta         " << join_doubles(rep.phase.beta) << '\n'
        << "phase residual     " << format_double(rep.phase.residual) << '\n';
    if (Q.grid().dim() == 1) out << "support shape      " << to_string(rep.shape) << '\n';
    out << (rep.pass ? "PASS" : "FAIL " + rep.failures) << '\n';
    if (!rep.connected) return static_cast<int>(kExitDisconnected);
    return rep.pass ? static_cast<int>(kExitOk) : static_cast<int>(kExitPropertyFailure);
  });
}

int cmd_rearrange(const RunConfig& cfg, const std::string& field_path, const std::string& mode,
                  std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Field f = read_gnf(field_path);
    Field r;
    if (mode == "sharp") r = fourier_rearrange(f, FourierMode::Sharp);
    else if (mode == "sharp_e") r = fourier_rearrange(f, FourierMode::SharpAxis, cfg.axis);
    else if (mode == "bullet") r = fourier_rearrange(f, FourierMode::Bullet);
    else if (mode == "schwarz") r = schwarz(f);
    else if (mode == "steiner") r = steiner_codim(f, cfg.axis);
    else throw InvalidArgument("unknown rearrangement mode '" + mode + "'");
    write_gnf(output_path(cfg, "rearranged.gnf").string(), r);
    out << "L2 norm  " << format_double(norm_L2(f)) << " -> " << format_double(norm_L2(r)) << '\n'
        << "Linf     " << format_double(norm_Lp(f, kInfinity)) << " -> " << format_double(norm_Lp(r, kInfinity))
        << '\n';
    return static_cast<int>(kExitOk);
  });
}

int cmd_sweep(const RunConfig& cfg, int jobs, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SweepSpec& sw = cfg.sweep;
    if (sw.param != "v" && sw.param != "omega") throw ConfigError("[sweep] param must be v or omega", 0);
    if (sw.count < 1) throw ConfigError("[sweep] range is empty (count < 1)", 0);
    std::vector<double> values(sw.count);
    for (int i = 0; i < sw.count; ++i) {
      values[i] = sw.count == 1 ? sw.from : sw.from + (sw.to - sw.from) * i / (sw.count - 1);
    }

    struct Row {
      double J = std::nan(""), residual = std::nan(""), s2 = std::nan(""), modrearr = std::nan("");
      double E = std::nan(""), M = std::nan("");
      std::string status;
    };
    std::vector<Row> rows(values.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < values.size(); i = next++) {
        Row& row = rows[i];
        try {
          RunConfig c = cfg;
          if (sw.param == "v") {
            c.v.assign(c.dim, 0.0);
            c.v[c.axis] = values[i];
          } else {
            c.omega = values[i];
          }
          const Problem prob = c.make_problem();
          const SolveReport rep = minimize(prob, c.solver);
          row.J = rep.J;
          row.residual = rep.residual;
          const EnergyMass em = energy_mass(rep.Q, prob.bsym.base, prob.sigma);
          row.E = em.energy;
          row.M = em.mass;
          const SymmetryReport sym = symmetry_report(rep.Q, c.axis, c.sigma, c.thresholds);
          row.s2 = sym.s2_defect;
          row.modrearr = sym.modulus_rearranged_defect;
          row.status = rep.converged ? "converged" : "not_converged";
        } catch (const std::exception& e) {
          std::string msg = e.what();
          std::replace(msg.begin(), msg.end(), ',', ';');
          std::replace(msg.begin(), msg.end(), '\n', ' ');
          row.status = "error: " + msg;
        }
      }
    };
    const int threads = std::clamp(jobs, 1, static_cast<int>(values.size()));
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    auto f = open_out(output_path(cfg, "sweep.csv"));
    f << "param,J,residual,s2_defect,modrearr_defect,E,M,status\n";
    int converged = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Row& r = rows[i];
      f << format_double(values[i]) << ',' << format_double(r.J) << ',' << format_double(r.residual) << ','
        << format_double(r.s2) << ',' << format_double(r.modrearr) << ',' << format_double(r.E) << ','
        << format_double(r.M) << ',' << r.status << '\n';
      converged += r.status == "converged" ? 1 : 0;
    }
    out << converged << " of " << rows.size() << " sweep points converged\n";
    return converged > 0 ? static_cast<int>(kExitOk) : static_cast<int>(kExitNotConverged);
  });
}

int cmd_props(std::uint64_t seed, const std::string& suite, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<PropertyResult> results;
    auto add = [&](std::vector<PropertyResult> r) { results.insert(results.end(), r.begin(), r.end()); };
    if (suite == "rearrange" || suite == "all") add(run_rearrange_suite(seed));
    if (suite == "convolution" || suite == "all") add(run_convolution_suite(seed));
    if (suite == "setops" || suite == "all") add(run_setops_suite(seed));
    if (results.empty()) throw InvalidArgument("unknown suite '" + suite + "' (rearrange, convolution, setops, all)");
    bool ok = true;
    for (const auto& r : results) {
      out << (r.passed() ? "PASS " : "FAIL ") << r.name << "  cases=" << r.cases << " violations=" << r.violations
          << " worst=" << format_double(r.worst);
      if (!r.note.empty()) out << "  (" << r.note << ")";
      out << '\n';
      if (!r.passed()) {
        ok = false;
        if (!r.counterexample.empty()) out << "  counterexample: " << r.counterexample << '\n';
      }
    }
    return ok ? static_cast<int>(kExitOk) : static_cast<int>(kExitPropertyFailure);
  });
}

int cmd_sigma(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const double sv = sigma_v({cfg.make_symbol(), cfg.velocity()});
    out << "Sigma_v = " << format_double(sv) << '\n'
        << "omega > -Sigma_v: " << (cfg.omega > -sv ? "yes" : "no") << '\n';
    return static_cast<int>(kExitOk);
  });
}

}  // namespace gnls
