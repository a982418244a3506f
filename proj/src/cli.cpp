#include "zll/cli.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zll/config.hpp"
#include "zll/constants.hpp"
#include "zll/errors.hpp"
#include "zll/laws.hpp"
#include "zll/plot.hpp"
#include "zll/report.hpp"

namespace zll {
namespace {

std::string kv(const char* key, double v) {
  return std::string(key) + "=" + format_sig17(v);
}

// Advisory single-writer lock plus load/save lifecycle around a cache file.
class CacheSession {
 public:
  explicit CacheSession(const RunConfig& cfg) : cfg_(cfg) {
    lab_ = cfg.make_lab();
    if (!cfg_.cache_path.empty()) {
      const std::string lock_path = cfg_.cache_path.string() + ".lock";
      fd_ = ::open(lock_path.c_str(), O_CREAT | O_RDWR, 0644);
      if (fd_ >= 0 && ::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
        ::close(fd_);
        fd_ = -1;
        throw cache_conflict_error("cache file is locked by another process: " +
                                   cfg_.cache_path.string());
      }
    }
  }
  ~CacheSession() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  CacheSession(const CacheSession&) = delete;
  CacheSession& operator=(const CacheSession&) = delete;

  Lab& lab() { return lab_; }

  void persist() {
    if (!cfg_.cache_path.empty()) cache_save(lab_.cache, cfg_.cache_path);
  }

 private:
  const RunConfig& cfg_;
  Lab lab_;
  int fd_ = -1;
};

std::vector<double> doubling_grid(double top) {
  return {0.25 * top, 0.5 * top, top};
}

std::vector<double> parse_grid(const std::string& csv) {
  std::vector<double> grid;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const auto comma = csv.find(',', pos);
    const std::string tok =
        csv.substr(pos, comma == std::string::npos ? csv.size() - pos
                                                   : comma - pos);
    if (!tok.empty()) grid.push_back(std::strtod(tok.c_str(), nullptr));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (grid.empty()) throw std::invalid_argument("empty grid list");
  return grid;
}

void print_report(const FunctionalReport& report) {
  for (std::size_t i = 0; i < report.grid.size(); ++i) {
    std::cout << "param=" << format_sig17(report.grid[i])
              << " value=" << format_sig17(report.values[i])
              << " target=" << format_sig17(report.target)
              << " residual=" << format_sig17(report.residuals[i]) << "\n";
  }
  std::cout << "resolution_achieved=" << report.resolution_achieved << "\n";
}

struct Emission {
  std::string format = "json";
  std::string out;   // explicit path; empty = derive from output_dir
  bool emit = false;  // write a report file
};

void add_emission_flags(CLI::App* sub, Emission& em) {
  sub->add_option("--format", em.format, "report file format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", em.out, "report file path (implies emission)");
  sub->add_flag("--emit", em.emit, "write the report under the output directory");
}

void finish_report(const FunctionalReport& report, const RunConfig& cfg,
                   const Emission& em) {
  print_report(report);
  const bool want_file = em.emit || !em.out.empty();
  if (want_file) {
    const ReportFormat fmt =
        (em.format == "csv") ? ReportFormat::csv : ReportFormat::json;
    std::filesystem::path path = em.out.empty()
                                     ? cfg.output_dir / (report.name + "." + em.format)
                                     : std::filesystem::path(em.out);
    emit_report(report, fmt, path);
    std::cout << "report_written=" << path.string() << "\n";
  }
  if (cfg.plots) {
    const std::filesystem::path path = cfg.output_dir / (report.name + ".svg");
    emit_plot(report, path);
    std::cout << "plot_written=" << path.string() << "\n";
  }
}

// Pre-scan for --config so file values seed the defaults that CLI flags
// then override.
void apply_config_arg(RunConfig& cfg, const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      cfg = parse_config_file(args[i + 1]);
      return;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      cfg = parse_config_file(args[i].substr(std::string("--config=").size()));
      return;
    }
  }
}

int dispatch(const std::vector<std::string>& args) {
  RunConfig cfg;
  apply_config_arg(cfg, args);
  if (const char* env_cache = std::getenv("ZLL_CACHE"))
    cfg.cache_path = env_cache;

  CLI::App app{"Numerical laboratory for the Hardy Z-function: second-moment "
               "integrals, ladder iterations, signed partitions, and their "
               "limit laws"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may appear after the subcommand

  std::string config_path_unused;
  app.add_option("--config", config_path_unused,
                 "key=value config file (applied before other flags)");
  app.add_option("--cache", cfg.cache_path,
                 "checkpoint cache CSV path (env ZLL_CACHE)");
  app.add_option("--output-dir", cfg.output_dir, "directory for emitted files");
  app.add_flag("--plots", cfg.plots, "also write SVG plots");
  app.add_option("--rs-correction-terms", cfg.evaluator.rs_correction_terms);
  app.add_option("--method-switch-t", cfg.evaluator.method_switch_t);
  app.add_option("--em-terms", cfg.evaluator.em_terms);
  app.add_option("--target-abs-error", cfg.evaluator.target_abs_error);
  app.add_option("--abs-tol", cfg.quad.abs_tol);
  app.add_option("--panel-rule", cfg.quad.panel_rule);
  app.add_option("--refinement-limit", cfg.quad.refinement_limit);
  app.add_option("--c", cfg.consts.c);
  app.add_option("--c0", cfg.consts.c0);
  app.add_option("--root-tol", cfg.consts.root_tol);

  // ---- zeta ----
  double zeta_t = 0.0;
  auto* sub_zeta = app.add_subcommand("zeta", "evaluate Z(t) at one ordinate");
  sub_zeta->add_option("t", zeta_t, "ordinate")->required();
  sub_zeta->callback([&] {
    const CriticalLineSample s = hardy_Z(zeta_t, cfg.evaluator);
    std::cout << kv("t", s.t) << "\n"
              << kv("theta", s.theta) << "\n"
              << kv("z", s.z) << "\n"
              << kv("zeta_sq", s.zeta_sq) << "\n"
              << kv("err_bound", s.err_bound) << "\n";
    if (s.accuracy_warning)
      std::cerr << "warning: error bound exceeds target_abs_error\n";
  });

  // ---- integrate ----
  double int_a = 0.0, int_b = 0.0;
  auto* sub_int = app.add_subcommand("integrate", "integral of Z^2 over [a, b]");
  sub_int->add_option("a", int_a, "lower endpoint")->required();
  sub_int->add_option("b", int_b, "upper endpoint")->required();
  sub_int->callback([&] {
    CacheSession session(cfg);
    const double v = integrate_abs_zeta_sq(int_a, int_b, cfg.evaluator, cfg.quad,
                                           session.lab().cache);
    session.persist();
    std::cout << kv("integral", v) << "\n";
  });

  // ---- j1 ----
  double j1_T = 0.0;
  auto* sub_j1 = app.add_subcommand("j1", "log-balance J1(T) = T ln T - T - J(T)");
  sub_j1->add_option("T", j1_T, "upper limit")->required();
  sub_j1->callback([&] {
    CacheSession session(cfg);
    if (j1_T > 2000.0)
      std::cerr << "extending checkpoint cache to T=" << j1_T << "\n";
    const double j = hardy_littlewood_J(j1_T, cfg.evaluator, cfg.quad,
                                        session.lab().cache);
    const double j1 = j1_T * std::log(j1_T) - j1_T - j;
    session.persist();
    std::cout << kv("J", j) << "\n"
              << kv("J1", j1) << "\n"
              << kv("J1_over_T", j1 / j1_T) << "\n";
  });

  // ---- ladder ----
  auto* sub_ladder = app.add_subcommand("ladder", "phi1 and reverse-iterate towers");
  sub_ladder->require_subcommand(1);
  double lad_T = 0.0;
  int lad_k = 3;
  auto* sub_phi1 = sub_ladder->add_subcommand("phi1", "solve the ladder value");
  sub_phi1->add_option("T", lad_T, "ordinate")->required();
  sub_phi1->callback([&] {
    CacheSession session(cfg);
    const double v = phi1(lad_T, session.lab());
    session.persist();
    std::cout << kv("phi1", v) << "\n" << kv("c0_used", cfg.consts.c0) << "\n";
  });
  auto* sub_tower = sub_ladder->add_subcommand("tower", "reverse-iterate tower");
  sub_tower->add_option("T", lad_T, "base ordinate")->required();
  sub_tower->add_option("k", lad_k, "number of levels")->required();
  sub_tower->callback([&] {
    CacheSession session(cfg);
    const IterationTower tower = build_tower(lad_T, lad_k, session.lab());
    session.persist();
    for (std::size_t r = 0; r < tower.levels.size(); ++r)
      std::cout << "level_" << r << "=" << format_sig17(tower.levels[r]) << "\n";
  });

  // ---- crossings ----
  double cr_T = 0.0, cr_resolution = 0.05;
  bool cr_export = false;
  auto* sub_cross = app.add_subcommand("crossings",
                                       "ordinates where ln t meets Z(t)^2");
  sub_cross->add_option("T", cr_T, "upper limit")->required();
  sub_cross->add_option("--resolution", cr_resolution, "scan resolution");
  sub_cross->add_flag("--export", cr_export, "write crossings.csv");
  sub_cross->callback([&] {
    const SignedPartition part = build_partition(cr_T, cfg.evaluator, cr_resolution);
    for (double t : part.crossings) std::cout << format_sig17(t) << "\n";
    std::cerr << "crossings=" << part.crossings.size()
              << " tangential_warnings=" << part.tangential_warnings.size() << "\n";
    if (cr_export) {
      const std::filesystem::path path = cfg.output_dir / "crossings.csv";
      std::string body;
      for (double t : part.crossings) body += format_sig17(t) + "\n";
      std::ofstream out(path, std::ios::binary);
      if (!out || !(out << body))
        throw std::runtime_error("cannot write " + path.string());
      std::cerr << "crossings_written=" << path.string() << "\n";
    }
  });

  // ---- areas ----
  double ar_T = 0.0, ar_resolution = 0.05;
  bool ar_export = false;
  auto* sub_areas = app.add_subcommand("areas", "signed areas of the partition");
  sub_areas->add_option("T", ar_T, "upper limit")->required();
  sub_areas->add_option("--resolution", ar_resolution, "scan resolution");
  sub_areas->add_flag("--export", ar_export, "write partition.csv");
  sub_areas->callback([&] {
    CacheSession session(cfg);
    const SignedPartition part = build_partition(ar_T, cfg.evaluator, ar_resolution);
    const SignedAreas areas =
        signed_areas(part, cfg.evaluator, cfg.quad, session.lab().cache);
    const double j1 = log_modified_J1(ar_T, cfg.evaluator, cfg.quad,
                                      session.lab().cache);
    session.persist();
    std::cout << kv("area_plus", areas.plus) << "\n"
              << kv("area_minus", areas.minus) << "\n"
              << kv("difference", areas.plus - areas.minus) << "\n"
              << kv("J1", j1) << "\n";
    if (ar_export) {
      const std::filesystem::path path = cfg.output_dir / "partition.csv";
      std::string body;
      for (const SignedSegment& seg : part.segments)
        body += format_sig17(seg.a) + "," + format_sig17(seg.b) + "," +
                (seg.sign > 0 ? "+" : "-") + "\n";
      std::ofstream out(path, std::ios::binary);
      if (!out || !(out << body))
        throw std::runtime_error("cannot write " + path.string());
      std::cout << "partition_written=" << path.string() << "\n";
    }
    if (cfg.plots) {
      const std::filesystem::path path = cfg.output_dir / "partition.svg";
      emit_plot(part, cfg.evaluator, path);
      std::cout << "plot_written=" << path.string() << "\n";
    }
  });

  // ---- law ----
  auto* sub_law = app.add_subcommand("law", "residual and limit functionals");
  sub_law->require_subcommand(1);
  double law_T = 1e4, law_rho = 1e4, law_x = 1.0, law_tau = 1e4;
  double law_eps = 0.3, law_resolution = 0.05;
  int law_r = 1, law_N = 1, law_nmax = 3;
  long long law_zmax = 9;
  long long fr_x = 1, fr_y = 1, fr_z = 1, fr_n = 3;
  std::string law_grid, law_deltas = "0.05,0.02,0.01";
  Emission em;

  auto add_law = [&](const char* name, const char* help) {
    auto* s = sub_law->add_subcommand(name, help);
    add_emission_flags(s, em);
    s->add_option("--grid", law_grid, "comma-separated parameter grid override");
    return s;
  };

  auto grid_or = [&](double top) {
    return law_grid.empty() ? doubling_grid(top) : parse_grid(law_grid);
  };

  auto* s_lemma1 = add_law("lemma1", "almost-exact ladder balance residual");
  s_lemma1->add_option("--T", law_T);
  s_lemma1->add_option("--r", law_r);
  s_lemma1->callback([&] {
    CacheSession session(cfg);
    std::vector<double> grid = grid_or(law_T), values;
    for (double T : grid) values.push_back(lemma1_residual(T, law_r, session.lab()));
    auto report = make_report("lemma1", grid, values, 0.0, session.lab());
    session.persist();
    finish_report(report, cfg, em);
  });

  auto* s_lemma2 = add_law("lemma2", "J1(rho) against (ln2pi - 2c) rho");
  s_lemma2->add_option("--rho", law_rho);
  s_lemma2->callback([&] {
    CacheSession session(cfg);
    std::vector<double> grid = grid_or(law_rho), values;
    for (double rho : grid) values.push_back(lemma2_residual(rho, session.lab()));
    auto report = make_report("lemma2", grid, values, 0.0, session.lab());
    const double j1 = log_modified_J1(law_rho, cfg.evaluator, cfg.quad,
                                      session.lab().cache);
    session.persist();
    std::cout << kv("residual", values.back()) << "\n"
              << kv("ratio", j1 / law_rho) << "\n";
    finish_report(report, cfg, em);
  });

  auto* s_incr = add_law("increment", "segment integral against (1-c) T");
  s_incr->add_option("--T", law_T);
  s_incr->add_option("--r", law_r);
  s_incr->callback([&] {
    CacheSession session(cfg);
    std::vector<double> grid = grid_or(law_T), values;
    for (double T : grid) {
      const double prev = reverse_iter(T, law_r - 1, session.lab());
      values.push_back(increment_integral(T, law_r, session.lab()) /
                       (kOneMinusGamma * prev));
    }
    auto report = make_report("increment", grid, values, 1.0, session.lab());
    session.persist();
    finish_report(report, cfg, em);
  });

  auto* s_scaled = add_law("scaled", "(1/tau) J1 at the rescaled argument");
  s_scaled->add_option("--x", law_x);
  s_scaled->add_option("--tau", law_tau);
  s_scaled->callback([&] {
    CacheSession session(cfg);
    std::vector<double> grid = grid_or(law_tau), values;
    for (double tau : grid)
      values.push_back(scaled_limit_functional(law_x, tau, session.lab()));
    auto report = make_report("scaled", grid, values, law_x, session.lab());
    session.persist();
    finish_report(report, cfg, em);
  });

  auto* s_fermat = add_law("fermat", "scaled functional at a Fermat rational");
  s_fermat->add_option("--fx", fr_x);
  s_fermat->add_option("--fy", fr_y);
  s_fermat->add_option("--fz", fr_z);
  s_fermat->add_option("--fn", fr_n);
  s_fermat->add_option("--tau", law_tau);
  s_fermat->callback([&] {
    CacheSession session(cfg);
    const FermatRational fr{fr_x, fr_y, fr_z, fr_n};
    std::vector<double> grid = grid_or(law_tau), values;
    for (double tau : grid)
      values.push_back(fermat_functional(fr, tau, session.lab()));
    auto report = make_report("fermat", grid, values, fr.value(), session.lab());
    session.persist();
    std::cout << kv("rational", fr.value()) << "\n"
              << kv("distance_from_1", fr.value() - 1.0) << "\n"
              << "separation_possible="
              << (std::abs(fr.value() - 1.0) > 10.0 / law_tau ? "yes" : "no")
              << "\n";
    finish_report(report, cfg, em);
  });

  auto* s_cons = add_law("conservation", "signed-area balance, tends to -c0");
  s_cons->add_option("--T", law_T);
  s_cons->add_option("--r", law_r);
  s_cons->add_option("--resolution", law_resolution);
  s_cons->callback([&] {
    CacheSession session(cfg);
    std::vector<double> grid = law_grid.empty() ? std::vector<double>{law_T}
                                                : parse_grid(law_grid);
    std::vector<double> values;
    for (double T : grid)
      values.push_back(
          conservation_law_residual(T, law_r, session.lab(), law_resolution));
    auto report = make_report("conservation", grid, values, -cfg.consts.c0,
                              session.lab());
    session.persist();
    finish_report(report, cfg, em);
  });

  auto* s_zero = add_law("zero-limit", "consecutive-segment balance, tends to 0");
  s_zero->add_option("--T", law_T);
  s_zero->add_option("--r", law_r);
  s_zero->add_option("--resolution", law_resolution);
  s_zero->callback([&] {
    CacheSession session(cfg);
    std::vector<double> grid = law_grid.empty() ? std::vector<double>{law_T}
                                                : parse_grid(law_grid);
    std::vector<double> values;
    for (double T : grid)
      values.push_back(
          zero_limit_law_residual(T, law_r, session.lab(), law_resolution));
    auto report = make_report("zero-limit", grid, values, 0.0, session.lab());
    session.persist();
    finish_report(report, cfg, em);
  });

  auto* s_seg = add_law("segment", "telescoped scaled functional, tends to N x");
  s_seg->add_option("--x", law_x);
  s_seg->add_option("--N", law_N);
  s_seg->add_option("--tau", law_tau);
  s_seg->callback([&] {
    CacheSession session(cfg);
    std::vector<double> grid = grid_or(law_tau), values;
    for (double tau : grid)
      values.push_back(segment_limit_functional(law_x, law_N, tau, session.lab()));
    auto report = make_report("segment", grid, values, law_N * law_x,
                              session.lab());
    session.persist();
    finish_report(report, cfg, em);
  });

  auto* s_f41 = add_law("formula41", "segment integral up to the reverse iterate");
  s_f41->add_option("--x", law_x);
  s_f41->add_option("--tau", law_tau);
  s_f41->callback([&] {
    CacheSession session(cfg);
    std::vector<double> grid = grid_or(law_tau), values;
    for (double tau : grid)
      values.push_back(formula_4_1_functional(law_x, tau, session.lab()));
    auto report = make_report("formula41", grid, values, law_x, session.lab());
    session.persist();
    finish_report(report, cfg, em);
  });

  auto* s_loc = add_law("localized", "segment functional over near-1 rationals");
  s_loc->add_option("--eps", law_eps);
  s_loc->add_option("--N", law_N);
  s_loc->add_option("--n-max", law_nmax);
  s_loc->add_option("--z-max", law_zmax);
  s_loc->add_option("--tau", law_tau);
  s_loc->callback([&] {
    CacheSession session(cfg);
    auto report = localized_scan(law_eps, law_N, law_nmax, law_zmax, law_tau,
                                 session.lab());
    session.persist();
    finish_report(report, cfg, em);
  });

  auto* s_tower = add_law("tower-asymptotics", "tower steps against (1-c) pi(rT)");
  s_tower->add_option("--T", law_T);
  s_tower->add_option("--k", lad_k);
  s_tower->callback([&] {
    CacheSession session(cfg);
    auto report = tower_asymptotic_report(law_T, lad_k, session.lab());
    session.persist();
    finish_report(report, cfg, em);
  });

  auto* s_c0 = add_law("estimate-c0", "Laplace-transform constant estimate");
  s_c0->add_option("--deltas", law_deltas, "decreasing delta grid");
  s_c0->callback([&] {
    CacheSession session(cfg);
    const std::vector<double> deltas = parse_grid(law_deltas);
    const C0Estimate est = estimate_c0(deltas, session.lab());
    // report grid ascending
    std::vector<double> grid(deltas.rbegin(), deltas.rend());
    std::vector<double> values(est.remainders.rbegin(), est.remainders.rend());
    auto report = make_report("estimate-c0", grid, values, est.value,
                              session.lab());
    report.resolution_achieved +=
        est.low_confidence ? "; LOW CONFIDENCE (spread > 10%)" : "; extrapolation consistent";
    session.persist();
    std::cout << kv("c0", est.value) << "\n"
              << "low_confidence=" << (est.low_confidence ? "yes" : "no") << "\n";
    finish_report(report, cfg, em);
  });

  // ---- cache ----
  auto* sub_cache = app.add_subcommand("cache", "inspect or clear the cache file");
  sub_cache->require_subcommand(1);
  auto* cache_info = sub_cache->add_subcommand("info", "print cache summary");
  cache_info->callback([&] {
    if (cfg.cache_path.empty() || !std::filesystem::exists(cfg.cache_path)) {
      std::cout << "checkpoints=0\ncovered_t=0\nfingerprint=0000000000000000\n";
      return;
    }
    const IntegralCache cache = cache_load(cfg.cache_path, 0);
    char fp[20];
    std::snprintf(fp, sizeof(fp), "%016llx",
                  static_cast<unsigned long long>(cache.cfg_fingerprint));
    std::cout << "checkpoints=" << cache.checkpoint_count() << "\n"
              << "covered_t=" << format_sig17(cache.covered_t()) << "\n"
              << "fingerprint=" << fp << "\n";
  });
  auto* cache_clear = sub_cache->add_subcommand("clear", "delete the cache file");
  cache_clear->callback([&] {
    if (!cfg.cache_path.empty())
      std::filesystem::remove(cfg.cache_path);
    std::cout << "cleared\n";
  });

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("zll");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the parse error
    return code == 0 ? 0 : 1;
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  try {
    return dispatch(args);
  } catch (const cache_conflict_error& e) {
    std::cerr << "cache conflict: " << e.what() << "\n";
    return 3;
  } catch (const numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace zll
