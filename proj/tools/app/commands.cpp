#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <mutex>
#include <thread>
#include <vector>

#include "config.hpp"
#include "json.hpp"
#include "solitwave/collocation.hpp"
#include "solitwave/errors.hpp"
#include "solitwave/functionals.hpp"
#include "solitwave/io.hpp"
#include "solitwave/petviashvili.hpp"
#include "solitwave/propagator.hpp"
#include "solitwave/version.hpp"

namespace solitwave::app {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

std::mutex g_log_mutex;

void log(bool enabled, const std::string& msg) {
  if (!enabled) return;
  std::lock_guard lock(g_log_mutex);
  std::cerr << msg << '\n';
}

void report_error(const std::string& msg) {
  std::lock_guard lock(g_log_mutex);
  std::cerr << "error: " << msg << '\n';
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Shortest representation that round-trips, for directory names and labels.
std::string short_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

int exit_code_for(const std::exception_ptr& ep, std::string& message) {
  try {
    std::rethrow_exception(ep);
  } catch (const ValidationError& e) {
    message = e.what();
    return kExitConfig;
  } catch (const NumericalError& e) {
    message = e.what();
    return kExitNumerical;
  } catch (const UnsupportedFunctionalError& e) {
    message = e.what();
    return kExitNumerical;
  } catch (const std::exception& e) {
    message = e.what();
    return kExitOther;
  }
}

ojson functional_json(const FunctionalReport& r) { return ojson::parse(io::functional_report_json(r)); }

ojson warnings_json(const std::vector<std::string>& w) {
  ojson a = ojson::array();
  for (const auto& s : w) a.push_back(s);
  return a;
}

// Collects what a run writes into one output directory; the manifest is
// written last, exactly once per directory.
class Run {
 public:
  Run(std::string command, const RunConfig& cfg, fs::path dir)
      : command_(std::move(command)), config_(cfg.resolved()), dir_(std::move(dir)), started_(utc_now()) {
    fs::create_directories(dir_);
    inputs_.push_back(cfg.source.string());
  }

  const fs::path& dir() const { return dir_; }
  void add_input(const fs::path& p) { inputs_.push_back(p.string()); }
  fs::path output(const std::string& relative) {
    outputs_.push_back(relative);
    return dir_ / relative;
  }
  ojson& summary() { return summary_; }

  int finish(int code, const std::string& error = {}) {
    ojson m;
    m["command"] = command_;
    m["version"] = kVersion;
    m["started_at"] = started_;
    m["finished_at"] = utc_now();
    m["config"] = config_;
    m["inputs"] = inputs_;
    std::sort(outputs_.begin(), outputs_.end());
    m["outputs"] = outputs_;
    m["status"] = code == kExitOk ? "ok" : "failed";
    m["exit_code"] = code;
    if (!error.empty()) m["error"] = error;
    m["summary"] = summary_;
    io::write_text(dir_ / "manifest.json", m.dump(2) + "\n");
    return code;
  }

 private:
  std::string command_;
  ojson config_;
  fs::path dir_;
  std::string started_;
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  ojson summary_ = ojson::object();
};

struct PointOutcome {
  int exit_code = kExitOther;
  bool converged = false;
  bool in_regime = false;
  int iterations = 0;
  double residual = std::numeric_limits<double>::quiet_NaN();
  FunctionalReport functionals{};
  bool have_functionals = false;
};

// Runs fn inside a Run, mapping exceptions to exit codes and recording them in the manifest.
template <class Fn>
int guarded(Run& run, Fn&& fn) {
  int code = kExitOther;
  std::string error;
  try {
    code = fn();
  } catch (...) {
    code = exit_code_for(std::current_exception(), error);
    report_error(error);
  }
  return run.finish(code, error);
}

PointOutcome solve_homogeneous_into(const RunConfig& cfg, const fs::path& dir, bool verbose) {
  Run run("solve-homogeneous", cfg, dir);
  PointOutcome out;
  out.exit_code = guarded(run, [&] {
    if (cfg.kind != NonlinearityKind::Homogeneous) {
      throw ConfigError(cfg.source.string() + ": nonlinearity.kind must be homogeneous for this command");
    }
    const ModelParams params = cfg.params();
    out.in_regime = check_velocity_in_regime(params);
    const WaveProfile initial = gaussian_initial(cfg.grid(), cfg.psi0, cfg.v0);
    log(verbose, "solve-homogeneous: omega = " + short_double(cfg.omega) + ", p = " + std::to_string(cfg.p) +
                     ", N = " + std::to_string(cfg.n));
    const PetviashviliResult res = petviashvili_solve(initial, params, cfg.nonlinearity(), cfg.petviashvili);
    const SolveReport& r = res.report;
    for (std::size_t i = 0; i < r.history.size(); ++i) {
      if (i % 50 == 0 || i + 1 == r.history.size()) {
        const auto& h = r.history[i];
        log(verbose, "  iter " + std::to_string(i + 1) + ": change " + short_double(h.relative_change) + ", M_s " +
                         short_double(h.m_s) + ", N_s " + short_double(h.n_s));
      }
    }

    io::write_profile_csv(run.output("profile.csv"), res.profile);
    io::write_functional_report(run.output("functionals.json"), r.final);
    io::write_petviashvili_history(run.output("history.csv"), r);

    out.converged = r.converged;
    out.iterations = r.iterations;
    out.residual = r.final.relative_residual_inf();
    out.functionals = r.final;
    out.have_functionals = true;

    ojson& s = run.summary();
    s["termination"] = to_string(r.termination);
    s["converged"] = r.converged;
    s["iterations"] = r.iterations;
    s["in_regime"] = r.in_regime;
    s["sign_degenerate"] = r.sign_degenerate;
    s["final_m_s"] = r.final_factors.m_s;
    s["final_n_s"] = r.final_factors.n_s;
    s["relative_residual_inf"] = r.final.relative_residual_inf();
    s["amplitude"] = r.final.amplitude;
    s["functionals"] = functional_json(r.final);
    s["warnings"] = warnings_json(r.warnings);
    log(verbose, std::string("  ") + to_string(r.termination) + " after " + std::to_string(r.iterations) +
                     " iterations, relative residual " + short_double(out.residual));
    return r.converged ? kExitOk : kExitNumerical;
  });
  return out;
}

PointOutcome solve_nonhomogeneous_into(const RunConfig& cfg, const fs::path& dir, bool verbose) {
  Run run("solve-nonhomogeneous", cfg, dir);
  PointOutcome out;
  out.exit_code = guarded(run, [&] {
    const ModelParams params = cfg.params();
    const Nonlinearity nl = cfg.nonlinearity();
    out.in_regime = check_velocity_in_regime(params);
    const double l = cfg.length / 2.0;
    const CosineExpansion initial = gaussian_expansion(l, cfg.n, cfg.psi0, cfg.v0);
    log(verbose, "solve-nonhomogeneous: omega = " + short_double(cfg.omega) + ", N = " + std::to_string(cfg.n));
    const NewtonResult res = newton_solve(initial, params, nl, cfg.newton);
    const NewtonReport& r = res.report;
    for (std::size_t i = 0; i < r.history.size(); ++i) {
      const auto& h = r.history[i];
      log(verbose, "  iter " + std::to_string(i + 1) + ": step " + short_double(h.step_norm) + ", residual " +
                       short_double(h.residual_inf) + ", damping " + short_double(h.damping));
    }

    const WaveProfile profile = resample(res.expansion, cfg.n);
    const FunctionalReport fr = eval_all(profile, params, nl);
    io::write_expansion(run.output("expansion.json"), res.expansion);
    io::write_profile_csv(run.output("profile.csv"), profile);
    io::write_functional_report(run.output("functionals.json"), fr);
    io::write_newton_history(run.output("history.csv"), r);

    const bool ok = r.converged && r.termination == Termination::Converged;
    out.converged = ok;
    out.iterations = r.iterations;
    out.residual = fr.relative_residual_inf();
    out.functionals = fr;
    out.have_functionals = true;

    ojson& s = run.summary();
    s["termination"] = to_string(r.termination);
    s["converged"] = ok;
    s["iterations"] = r.iterations;
    s["in_regime"] = r.in_regime;
    s["initial_residual"] = r.initial_residual;
    s["final_residual_inf"] = r.history.empty() ? r.initial_residual : r.history.back().residual_inf;
    s["convergence_constant"] = r.convergence_constant;
    s["max_coefficient"] = res.expansion.max_coefficient();
    s["relative_residual_inf"] = fr.relative_residual_inf();
    s["functionals"] = functional_json(fr);
    s["warnings"] = warnings_json(r.warnings);
    if (r.termination == Termination::CollapsedToZero) report_error("Newton iteration collapsed to the zero state");
    log(verbose, std::string("  ") + to_string(r.termination) + " after " + std::to_string(r.iterations) + " iterations");
    return ok ? kExitOk : kExitNumerical;
  });
  return out;
}

RunConfig load_or_report(const Options& opts, int& code) {
  try {
    code = kExitOk;
    return load_config(opts.config);
  } catch (const ValidationError& e) {
    report_error(e.what());
    code = kExitConfig;
  }
  return {};
}

}  // namespace

fs::path output_dir(const Options& opts, const std::string& command) {
  if (opts.out) return *opts.out;
  const char* root = std::getenv("SOLITWAVE_OUTPUT_ROOT");
  const fs::path base = root && *root ? fs::path(root) : fs::path("runs");
  return base / (opts.config.stem().string() + "-" + command);
}

int cmd_solve_homogeneous(const Options& opts) {
  int code = kExitOk;
  const RunConfig cfg = load_or_report(opts, code);
  if (code != kExitOk) return code;
  if (cfg.kind != NonlinearityKind::Homogeneous) {
    report_error(opts.config.string() + ": nonlinearity.kind must be homogeneous for solve-homogeneous");
    return kExitConfig;
  }
  const fs::path dir = output_dir(opts, "solve-homogeneous");
  const PointOutcome r = solve_homogeneous_into(cfg, dir, opts.verbose);
  std::cout << "solve-homogeneous: " << (r.converged ? "converged" : "not converged") << ", " << r.iterations
            << " iterations, output in " << dir.string() << "\n";
  return r.exit_code;
}

int cmd_solve_nonhomogeneous(const Options& opts) {
  int code = kExitOk;
  const RunConfig cfg = load_or_report(opts, code);
  if (code != kExitOk) return code;
  const fs::path dir = output_dir(opts, "solve-nonhomogeneous");
  const PointOutcome r = solve_nonhomogeneous_into(cfg, dir, opts.verbose);
  std::cout << "solve-nonhomogeneous: " << (r.converged ? "converged" : "not converged") << ", " << r.iterations
            << " iterations, output in " << dir.string() << "\n";
  return r.exit_code;
}

int cmd_propagate(const Options& opts) {
  int code = kExitOk;
  const RunConfig cfg = load_or_report(opts, code);
  if (code != kExitOk) return code;
  if (!opts.profile) {
    report_error("propagate needs --profile");
    return kExitConfig;
  }
  const fs::path dir = output_dir(opts, "propagate");
  Run run("propagate", cfg, dir);
  run.add_input(*opts.profile);
  code = guarded(run, [&] {
    const Grid grid = cfg.grid();
    WaveProfile initial(grid);
    if (opts.profile->extension() == ".json") {
      const CosineExpansion e = io::read_expansion(*opts.profile);
      if (std::abs(2.0 * e.l - cfg.length) > 1e-12 * cfg.length) {
        throw ValidationError("expansion period 2l = " + short_double(2.0 * e.l) + " does not match L = " +
                              short_double(cfg.length));
      }
      initial = resample(e, cfg.n);
    } else {
      initial = io::read_profile_csv(*opts.profile, grid);
    }
    const ModelParams params = cfg.params();
    log(opts.verbose, "propagate: dt = " + short_double(cfg.propagation.dt) + ", t_final = " +
                          short_double(cfg.propagation.t_final) + ", theta = " + short_double(cfg.propagation.theta));
    const PropagationResult res = propagate(initial, params, cfg.nonlinearity(), cfg.propagation);

    ojson index;
    index["times"] = ojson::array();
    index["files"] = ojson::array();
    for (std::size_t i = 0; i < res.snapshots.size(); ++i) {
      char name[48];
      std::snprintf(name, sizeof name, "snapshots/snapshot_%05zu.csv", i);
      io::write_snapshot_csv(run.output(name), res.snapshots[i].state);
      index["times"].push_back(res.snapshots[i].t);
      index["files"].push_back(std::string(name).substr(10));
    }
    io::write_text(run.output("snapshots/index.json"), index.dump(2) + "\n");

    const double t = cfg.propagation.t_final;
    const TranslationErrors e = verify_translation(res.final_state, initial, cfg.omega, t);
    ojson table;
    table["t"] = t;
    table["shift"] = cfg.omega * t;
    table["relative_inf_u"] = e.inf_u;
    table["relative_inf_eta"] = e.inf_eta;
    table["relative_l2_u"] = e.l2_u;
    table["relative_l2_eta"] = e.l2_eta;
    io::write_text(run.output("translation_errors.json"), table.dump(2) + "\n");

    std::string diag = "step,t,max_norm\n";
    const auto& d = res.diagnostics;
    for (std::size_t i = 0; i < d.times.size(); ++i) {
      diag += std::to_string(i) + "," + io::format_double(d.times[i]) + "," + io::format_double(d.max_norm[i]) + "\n";
    }
    io::write_text(run.output("diagnostics.csv"), diag);

    ojson& s = run.summary();
    s["steps"] = d.steps;
    s["partial_step"] = d.partial_step;
    s["final_max_norm"] = d.max_norm.back();
    s["reality_defect"] = d.reality_defect;
    s["translation_errors"] = table;
    std::cout << "propagate: t = " << short_double(t) << ", relative L2 error u " << short_double(e.l2_u) << ", eta "
              << short_double(e.l2_eta) << ", output in " << dir.string() << "\n";
    if (cfg.propagation_tolerance && std::max(e.l2_u, e.l2_eta) > *cfg.propagation_tolerance) {
      report_error("translation error exceeds propagation.tolerance");
      return static_cast<int>(kExitNumerical);
    }
    return static_cast<int>(kExitOk);
  });
  return code;
}

int cmd_sweep(const Options& opts) {
  int code = kExitOk;
  const RunConfig cfg = load_or_report(opts, code);
  if (code != kExitOk) return code;
  if (cfg.sweep_omega.empty()) {
    report_error(opts.config.string() + ": sweep needs a 'sweep' section with a non-empty omega list");
    return kExitConfig;
  }
  if (opts.workers < 1) {
    report_error("--workers must be >= 1");
    return kExitConfig;
  }

  struct Point {
    double omega;
    int p;
    std::string name;
  };
  const bool homogeneous = cfg.kind == NonlinearityKind::Homogeneous;
  const std::vector<int> ps = cfg.sweep_p.empty() ? std::vector<int>{cfg.p} : cfg.sweep_p;
  std::vector<Point> points;
  for (int p : ps) {
    for (double w : cfg.sweep_omega) {
      std::string name = "omega_" + short_double(w);
      if (homogeneous) name += "_p_" + std::to_string(p);
      points.push_back({w, p, name});
    }
  }

  const fs::path dir = output_dir(opts, "sweep");
  Run run("sweep", cfg, dir);
  std::vector<PointOutcome> outcomes(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      RunConfig pc = cfg;
      pc.omega = points[i].omega;
      pc.p = points[i].p;
      pc.sweep_omega.clear();
      pc.sweep_p.clear();
      const fs::path sub = dir / points[i].name;
      try {
        outcomes[i] = homogeneous ? solve_homogeneous_into(pc, sub, opts.verbose)
                                  : solve_nonhomogeneous_into(pc, sub, opts.verbose);
      } catch (const std::exception& e) {
        report_error(points[i].name + ": " + e.what());
        outcomes[i] = PointOutcome{};
      }
      log(opts.verbose, "sweep: finished " + points[i].name);
    }
  };
  {
    const std::size_t n_workers = std::min<std::size_t>(static_cast<std::size_t>(opts.workers), points.size());
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(worker);
    worker();
  }

  return guarded(run, [&] {
    std::string csv = "omega,p,in_regime,converged,iterations,residual,I_omega,J_omega,I2\n";
    std::size_t converged = 0;
    ojson failures = ojson::array();
    for (std::size_t i = 0; i < points.size(); ++i) {
      const PointOutcome& o = outcomes[i];
      const double nan = std::numeric_limits<double>::quiet_NaN();
      const ModelParams pp = cfg.params(points[i].omega);
      csv += short_double(points[i].omega) + ",";
      csv += (homogeneous ? std::to_string(points[i].p) : std::string{}) + ",";
      csv += std::string(check_velocity_in_regime(pp) ? "true" : "false") + ",";
      csv += std::string(o.converged ? "true" : "false") + ",";
      csv += std::to_string(o.iterations) + ",";
      csv += io::format_double(o.residual) + ",";
      csv += io::format_double(o.have_functionals ? o.functionals.i_omega : nan) + ",";
      csv += io::format_double(o.have_functionals ? o.functionals.j_omega : nan) + ",";
      csv += io::format_double(o.have_functionals ? o.functionals.i2 : nan) + "\n";
      run.output(points[i].name);
      if (o.converged) {
        ++converged;
      } else {
        failures.push_back(points[i].name);
      }
    }
    io::write_text(run.output("summary.csv"), csv);
    run.summary()["points"] = points.size();
    run.summary()["converged"] = converged;
    run.summary()["failed"] = failures;
    std::cout << "sweep: " << converged << " of " << points.size() << " points converged, output in " << dir.string()
              << "\n";
    return static_cast<int>(converged == points.size() ? kExitOk : kExitNumerical);
  });
}

}  // namespace solitwave::app
