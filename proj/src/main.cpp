#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "expdq/expression.hpp"
#include "expdq/integrator.hpp"
#include "expdq/norms.hpp"
#include "expdq/problem.hpp"
#include "expdq/semidiscrete.hpp"
#include "expdq/stability.hpp"
#include "expdq/weights.hpp"

namespace fs = std::filesystem;
using expdq::State;

namespace {

struct RunConfig {
  std::string problem;  // builtin id or path to a key=value spec file
  double h = 0.0;
  int nx = 11;
  int ny = 11;
  bool h_set = false;
  bool nx_set = false;
  bool ny_set = false;
  double alpha = 0.0;
  double beta = 0.0;
  bool alpha_set = false;
  bool beta_set = false;
  double dt = 0.01;
  double p = 1.0;
  double t_final = 1.0;
  std::vector<double> observe;
  std::vector<int> grids;
  std::string out;
  std::string l2_weight = "hx";
  std::string corner = "ywins";
  bool freeze_stage_time = false;
  bool dump_fields = false;
  bool dump_weights = false;
  bool full_a = false;
  int table_id = 0;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// flat key = value problem description; values are expressions in x, y, t
expdq::TelegraphSpec<double> load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open problem file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": empty key or value");
    if (!kv.emplace(key, value).second)
      throw ConfigError(path + ": duplicate key " + key);
  }

  const std::vector<std::string> faces = {"x_min", "x_max", "y_min", "y_max"};
  std::vector<std::string> known = {"alpha", "beta",  "phi",
                                    "psi",   "exact", "forcing"};
  for (const auto& f : faces) {
    known.push_back(f + ".kind");
    known.push_back(f + ".data");
  }
  for (const auto& [key, value] : kv)
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError(path + ": unknown key " + key);
  for (const char* req : {"alpha", "beta", "phi", "psi", "exact"})
    if (!kv.count(req))
      throw ConfigError(path + ": missing required key " + std::string(req));

  auto parse = [&](const std::string& key) {
    try {
      return expdq::Expression::parse(kv.at(key));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(path + ": " + key + ": " + e.what());
    }
  };

  expdq::TelegraphSpec<double> sp;
  sp.alpha = parse("alpha")(0, 0, 0);
  sp.beta = parse("beta")(0, 0, 0);
  const auto phi = parse("phi");
  const auto psi = parse("psi");
  const auto exact = parse("exact");
  const auto forcing =
      kv.count("forcing") ? parse("forcing") : expdq::Expression::parse("0");
  sp.phi = [phi](double x, double y) { return phi(x, y, 0.0); };
  sp.psi = [psi](double x, double y) { return psi(x, y, 0.0); };
  sp.exact = [exact](double x, double y, double t) { return exact(x, y, t); };
  sp.forcing = [forcing](double x, double y, double t) {
    return forcing(x, y, t);
  };

  auto face = [&](const std::string& name, int axis, double plane) {
    expdq::FaceCondition<double> fc;
    std::string kind = kv.count(name + ".kind") ? kv.at(name + ".kind")
                                                : std::string("dirichlet");
    std::transform(kind.begin(), kind.end(), kind.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (kind == "dirichlet")
      fc.kind = expdq::FaceKind::Dirichlet;
    else if (kind == "neumann")
      fc.kind = expdq::FaceKind::Neumann;
    else
      throw ConfigError(path + ": " + name + ".kind must be dirichlet or neumann");
    if (kv.count(name + ".data")) {
      const auto e = parse(name + ".data");
      fc.data = [e, axis, plane](double s, double t) {
        return axis == 0 ? e(plane, s, t) : e(s, plane, t);
      };
    } else if (fc.kind == expdq::FaceKind::Dirichlet) {
      fc.data = [exact, axis, plane](double s, double t) {
        return axis == 0 ? exact(plane, s, t) : exact(s, plane, t);
      };
    } else {
      throw ConfigError(path + ": " + name + ".data is required for neumann");
    }
    return fc;
  };
  sp.x_min = face("x_min", 0, 0.0);
  sp.x_max = face("x_max", 0, 1.0);
  sp.y_min = face("y_min", 1, 0.0);
  sp.y_max = face("y_max", 1, 1.0);
  return sp;
}

expdq::TelegraphSpec<double> load_problem(const RunConfig& cfg) {
  const bool is_id = !cfg.problem.empty() &&
                     std::all_of(cfg.problem.begin(), cfg.problem.end(),
                                 [](unsigned char c) { return std::isdigit(c); });
  expdq::TelegraphSpec<double> sp;
  if (is_id) {
    const int id = std::atoi(cfg.problem.c_str());
    const expdq::TelegraphSpec<double> defaults = expdq::builtin(id);
    sp = expdq::builtin(id, cfg.alpha_set ? cfg.alpha : defaults.alpha,
                        cfg.beta_set ? cfg.beta : defaults.beta);
  } else {
    sp = load_spec_file(cfg.problem);
    if (cfg.alpha_set) sp.alpha = cfg.alpha;
    if (cfg.beta_set) sp.beta = cfg.beta;
  }
  return sp;
}

expdq::Grid<double> resolve_grid(const RunConfig& cfg) {
  if (cfg.h_set && (cfg.nx_set || cfg.ny_set))
    throw ConfigError("give either --h or --nx/--ny, not both");
  int nx = cfg.nx, ny = cfg.ny;
  if (cfg.h_set) {
    if (!(cfg.h > 0.0) || cfg.h > 0.5) throw ConfigError("--h must be in (0, 0.5]");
    nx = ny = static_cast<int>(std::lround(1.0 / cfg.h)) + 1;
  }
  return expdq::make_grid(nx, ny);
}

fs::path resolve_out(const RunConfig& cfg) {
  fs::path dir = ".";
  if (const char* env = std::getenv("EXPDQ_OUTPUT_DIR"); env && *env) dir = env;
  if (!cfg.out.empty()) dir = cfg.out;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string());
  return dir;
}

expdq::L2Weight resolve_l2(const RunConfig& cfg) {
  if (cfg.l2_weight == "hx") return expdq::L2Weight::Hx;
  if (cfg.l2_weight == "hxhy") return expdq::L2Weight::HxHy;
  throw ConfigError("--l2-weight must be hx or hxhy");
}

expdq::CornerOrder resolve_corner(const RunConfig& cfg) {
  if (cfg.corner == "ywins") return expdq::CornerOrder::YWins;
  if (cfg.corner == "xwins") return expdq::CornerOrder::XWins;
  throw ConfigError("--corner must be ywins or xwins");
}

void require_valid(const expdq::TelegraphSpec<double>& sp,
                   const expdq::Grid<double>& grid) {
  const std::vector<std::string> issues = expdq::validate(sp, grid);
  if (issues.empty()) return;
  for (const auto& msg : issues) std::fprintf(stderr, "problem check: %s\n", msg.c_str());
  throw ConfigError("problem description failed validation");
}

std::string format_time_tag(double t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", t);
  return buf;
}

void write_weights_csv(const fs::path& dir, const char* tag,
                       const expdq::WeightSet<double>& w) {
  for (int order = 1; order <= 2; ++order) {
    const auto& m = order == 1 ? w.order1 : w.order2;
    std::ofstream out(dir / ("weights_" + std::string(tag) + "_order" +
                             std::to_string(order) + ".csv"));
    for (int i = 0; i < m.rows(); ++i) {
      for (int j = 0; j < m.cols(); ++j) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
        out << buf << (j + 1 < m.cols() ? "," : "");
      }
      out << "\n";
    }
  }
}

void write_field_csv(const fs::path& dir, const State<double>& st,
                     const expdq::TelegraphSpec<double>& sp,
                     const expdq::Grid<double>& grid) {
  std::ofstream out(dir / ("field_t" + format_time_tag(st.t) + ".csv"));
  out << "x,y,u,exact\n";
  char buf[160];
  for (int i = 0; i < grid.nx; ++i)
    for (int j = 0; j < grid.ny; ++j) {
      std::snprintf(buf, sizeof(buf), "%.9e,%.9e,%.9e,%.9e\n", grid.x(i),
                    grid.y(j), st.u(i, j),
                    sp.exact(grid.x(i), grid.y(j), st.t));
      out << buf;
    }
}

int cmd_solve(const RunConfig& cfg) {
  const auto sp = load_problem(cfg);
  const auto grid = resolve_grid(cfg);
  require_valid(sp, grid);
  const fs::path dir = resolve_out(cfg);
  const expdq::L2Weight l2w = resolve_l2(cfg);

  const auto wx = expdq::make_weights<double>(grid.x, cfg.p);
  const auto wy = expdq::make_weights<double>(grid.y, cfg.p);
  if (cfg.dump_weights) {
    write_weights_csv(dir, "x", wx);
    write_weights_csv(dir, "y", wy);
  }

  expdq::IntegrateOptions<double> opts;
  opts.observe_times = cfg.observe.empty() ? std::vector<double>{cfg.t_final}
                                           : cfg.observe;
  opts.freeze_stage_times = cfg.freeze_stage_time;
  opts.corner_order = resolve_corner(cfg);

  std::vector<expdq::ErrorReport<double>> reports;
  const auto t0 = std::chrono::steady_clock::now();
  expdq::integrate(
      sp, grid, wx, wy, cfg.dt, cfg.t_final,
      [&](const State<double>& st) {
        auto rep = expdq::error_norms(st, sp, grid, l2w);
        rep.wall_seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - t0)
                               .count();
        reports.push_back(rep);
        if (cfg.dump_fields) write_field_csv(dir, st, sp, grid);
      },
      opts);

  std::ofstream out(dir / "errors.csv");
  out << "t,l2,linf,rel,wall_seconds\n";
  char buf[200];
  for (const auto& rep : reports) {
    std::snprintf(buf, sizeof(buf), "%.9e,%.9e,%.9e,%.9e,%.9e\n", rep.t,
                  rep.l2, rep.linf, rep.rel, rep.wall_seconds);
    out << buf;
  }
  if (!reports.empty())
    std::printf("wrote %s (%zu rows, final linf %.6e)\n",
                (dir / "errors.csv").string().c_str(), reports.size(),
                reports.back().linf);
  return 0;
}

struct TableSpec {
  int problem;
  double h;
  double dt;
  std::vector<double> alphas;
  std::vector<double> betas;
  std::vector<double> ps;
  std::vector<double> times;
};

// one entry per bundled benchmark table; runs are the cross product of
// the listed parameter values, columns laid out in listing order
const std::map<int, TableSpec>& table_manifest() {
  static const std::map<int, TableSpec> m = {
      {1, {1, 0.1, 0.01, {1}, {1}, {1}, {1, 2, 3, 5, 7, 10}}},
      {2, {1, 0.05, 0.001, {1}, {1}, {1, 0.15}, {1, 2, 3, 5, 7, 10}}},
      {3, {2, 0.1, 0.01, {10}, {5}, {1}, {0.5, 1, 2, 3, 5}}},
      {4, {2, 0.05, 0.001, {10}, {5, 0}, {1}, {0.5, 1, 2, 3, 5}}},
      {5, {3, 0.05, 0.001, {10, 50}, {5}, {0.15, 1}, {0.5, 1, 2, 3, 5, 7, 10}}},
      {6, {4, 0.1, 0.01, {1}, {1}, {1}, {1, 2, 3, 5, 7, 10}}},
      {7, {4, 0.05, 0.001, {1}, {1}, {1}, {0.5, 1, 2, 3, 5, 7, 10}}},
      {8, {5, 0.1, 0.01, {1}, {1}, {1, 0.5}, {1, 2, 3, 5, 7, 10}}},
  };
  return m;
}

int cmd_table(const RunConfig& cfg) {
  const auto& manifest = table_manifest();
  const auto it = manifest.find(cfg.table_id);
  if (it == manifest.end())
    throw ConfigError("unknown table id " + std::to_string(cfg.table_id) +
                      " (valid: 1..8)");
  const TableSpec& ts = it->second;
  const fs::path dir = resolve_out(cfg);

  const int n = static_cast<int>(std::lround(1.0 / ts.h)) + 1;
  const auto grid = expdq::make_grid(n, n);

  struct Group {
    std::string label;
    std::vector<expdq::ErrorReport<double>> rows;
  };
  std::vector<Group> groups;
  for (double a : ts.alphas)
    for (double b : ts.betas)
      for (double pp : ts.ps) {
        std::string label;
        char buf[48];
        if (ts.alphas.size() > 1) {
          std::snprintf(buf, sizeof(buf), "alpha=%g", a);
          label += buf;
        }
        if (ts.betas.size() > 1) {
          std::snprintf(buf, sizeof(buf), "%sbeta=%g", label.empty() ? "" : " ", b);
          label += buf;
        }
        if (ts.ps.size() > 1) {
          std::snprintf(buf, sizeof(buf), "%sp=%g", label.empty() ? "" : " ", pp);
          label += buf;
        }
        const auto sp = expdq::builtin(ts.problem, a, b);
        const auto wx = expdq::make_weights<double>(grid.x, pp);
        const auto wy = expdq::make_weights<double>(grid.y, pp);
        expdq::IntegrateOptions<double> opts;
        opts.observe_times = ts.times;
        Group g{label, {}};
        expdq::integrate(
            sp, grid, wx, wy, ts.dt, ts.times.back(),
            [&](const State<double>& st) {
              g.rows.push_back(expdq::error_norms(st, sp, grid));
            },
            opts);
        groups.push_back(std::move(g));
      }

  const fs::path file = dir / ("table_" + std::to_string(cfg.table_id) + ".csv");
  std::ofstream out(file);
  out << "t";
  for (const auto& g : groups) {
    const std::string tag = g.label.empty() ? "" : "[" + g.label + "]";
    out << ",l2" << tag << ",linf" << tag;
  }
  out << "\n";
  char buf[64];
  for (std::size_t r = 0; r < ts.times.size(); ++r) {
    std::snprintf(buf, sizeof(buf), "%.9e", ts.times[r]);
    out << buf;
    for (const auto& g : groups) {
      std::snprintf(buf, sizeof(buf), ",%.9e,%.9e", g.rows[r].l2, g.rows[r].linf);
      out << buf;
    }
    out << "\n";
  }
  std::printf("wrote %s (%zu configurations)\n", file.string().c_str(),
              groups.size());
  return 0;
}

int cmd_stability(const RunConfig& cfg) {
  double alpha = cfg.alpha_set ? cfg.alpha : 1.0;
  double beta = cfg.beta_set ? cfg.beta : 1.0;
  if (!cfg.problem.empty()) {
    const auto sp = load_problem(cfg);
    alpha = sp.alpha;
    beta = sp.beta;
  }
  const auto grid = resolve_grid(cfg);
  const fs::path dir = resolve_out(cfg);
  const long m =
      static_cast<long>(grid.nx - 2) * static_cast<long>(grid.ny - 2);
  if (m > 2000)
    std::fprintf(stderr,
                 "note: %ld interior points give a %ldx%ld eigenproblem; "
                 "this may take a while\n",
                 m, m, m);

  expdq::TelegraphSpec<double> sp;
  sp.alpha = alpha;
  sp.beta = beta;
  const auto rep = expdq::analyze(sp, grid, cfg.p, cfg.dt);

  std::ofstream out(dir / "stability.csv");
  out << "re_lambda,im_lambda\n";
  char buf[160];
  for (const auto& lb : rep.lambda_b) {
    std::snprintf(buf, sizeof(buf), "%.9e,%.9e\n", lb.real(), lb.imag());
    out << buf;
  }
  std::snprintf(buf, sizeof(buf),
                "# {\"max_re\":%.9e,\"max_im\":%.9e,\"verdict\":\"%s\",\"dt_max\":%.6e}\n",
                rep.max_re, rep.max_im, rep.verdict(), rep.dt_max);
  out << buf;

  if (cfg.full_a) {
    const auto wx = expdq::make_weights<double>(grid.x, cfg.p);
    const auto wy = expdq::make_weights<double>(grid.y, cfg.p);
    const auto om = expdq::assemble_B(wx, wy, beta);
    const auto full = expdq::eigenvalues(expdq::full_operator(om.B, alpha));
    std::ofstream fout(dir / "stability_full.csv");
    fout << "re_lambda,im_lambda\n";
    for (const auto& la : full) {
      std::snprintf(buf, sizeof(buf), "%.9e,%.9e\n", la.real(), la.imag());
      fout << buf;
    }
  }

  std::printf("%s max_re=%.6e dt_max=%.6e (%zu eigenvalues)\n", rep.verdict(),
              rep.max_re, rep.dt_max, rep.lambda_b.size());
  return 0;
}

int cmd_convergence(const RunConfig& cfg) {
  const auto sp = load_problem(cfg);
  if (cfg.grids.size() < 2)
    throw ConfigError("--grids needs at least two node counts");
  const fs::path dir = resolve_out(cfg);
  const auto rows = expdq::convergence_study<double>(
      sp, cfg.grids, cfg.dt, cfg.p, cfg.t_final, resolve_l2(cfg));

  std::ofstream out(dir / "convergence.csv");
  out << "h,l2,linf,observed_order\n";
  char buf[120];
  for (const auto& row : rows) {
    if (row.has_order)
      std::snprintf(buf, sizeof(buf), "%.9e,%.9e,%.9e,%.6f\n", row.h, row.l2,
                    row.linf, row.order);
    else
      std::snprintf(buf, sizeof(buf), "%.9e,%.9e,%.9e,\n", row.h, row.l2,
                    row.linf);
    out << buf;
  }
  std::printf("wrote %s (%zu grids)\n", (dir / "convergence.csv").string().c_str(),
              rows.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"exponential B-spline quadrature solver for the damped wave "
               "equation on the unit square"};
  app.require_subcommand(1);
  // -h is taken by the grid-spacing option
  app.set_help_flag("--help", "print usage");

  auto add_grid_flags = [&](CLI::App* sub) {
    sub->set_help_flag("--help", "print usage");
    sub->add_option("--h", cfg.h, "grid spacing (sets nx = ny = 1/h + 1)");
    sub->add_option("--nx", cfg.nx, "node count in x");
    sub->add_option("--ny", cfg.ny, "node count in y");
    sub->add_option("--p", cfg.p, "spline tension parameter")->capture_default_str();
    sub->add_option("--out", cfg.out,
                    "output directory (default: EXPDQ_OUTPUT_DIR or .)");
  };
  auto add_problem_flags = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--problem", cfg.problem,
                                "builtin id (1..6) or problem file path");
    if (required) opt->required();
    sub->add_option("--alpha", cfg.alpha, "damping coefficient override");
    sub->add_option("--beta", cfg.beta, "reaction coefficient override");
  };

  CLI::App* solve = app.add_subcommand("solve", "run one configuration and report errors");
  add_problem_flags(solve, true);
  add_grid_flags(solve);
  solve->add_option("--dt", cfg.dt, "time step")->capture_default_str();
  solve->add_option("--tfinal", cfg.t_final, "end time")->capture_default_str();
  solve->add_option("--observe", cfg.observe, "comma-separated report times")
      ->delimiter(',');
  solve->add_option("--l2-weight", cfg.l2_weight, "l2 sum weight: hx or hxhy")
      ->capture_default_str();
  solve->add_option("--corner", cfg.corner, "corner ownership: ywins or xwins")
      ->capture_default_str();
  solve->add_flag("--freeze-stage-time", cfg.freeze_stage_time,
                  "close boundaries at the step start time in every stage");
  solve->add_flag("--dump-fields", cfg.dump_fields,
                  "write field_t<t>.csv at each report time");
  solve->add_flag("--dump-weights", cfg.dump_weights,
                  "write the quadrature weight matrices as CSV");

  CLI::App* table = app.add_subcommand("table", "rerun a bundled benchmark table");
  table->add_option("id", cfg.table_id, "table id (1..8)")->required();
  table->add_option("--out", cfg.out,
                    "output directory (default: EXPDQ_OUTPUT_DIR or .)");

  CLI::App* stability = app.add_subcommand("stability", "spectrum and step-size analysis");
  add_problem_flags(stability, false);
  add_grid_flags(stability);
  stability->add_option("--dt", cfg.dt, "time step to test")->capture_default_str();
  stability->add_flag("--full-a", cfg.full_a,
                      "also write the doubled companion-form spectrum");

  CLI::App* convergence = app.add_subcommand("convergence", "error decay across grids");
  add_problem_flags(convergence, true);
  convergence->add_option("--grids", cfg.grids, "comma-separated node counts")
      ->delimiter(',')
      ->required();
  convergence->add_option("--dt", cfg.dt, "time step")->capture_default_str();
  convergence->add_option("--p", cfg.p, "spline tension parameter")
      ->capture_default_str();
  convergence->add_option("--tfinal", cfg.t_final, "end time")->capture_default_str();
  convergence->add_option("--l2-weight", cfg.l2_weight, "l2 sum weight: hx or hxhy")
      ->capture_default_str();
  convergence->add_option("--out", cfg.out,
                          "output directory (default: EXPDQ_OUTPUT_DIR or .)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  cfg.h_set = solve->count("--h") || stability->count("--h");
  cfg.nx_set = solve->count("--nx") || stability->count("--nx");
  cfg.ny_set = solve->count("--ny") || stability->count("--ny");
  cfg.alpha_set = cfg.beta_set = false;
  for (CLI::App* sub : {solve, stability, convergence}) {
    if (sub->count("--alpha")) cfg.alpha_set = true;
    if (sub->count("--beta")) cfg.beta_set = true;
  }

  try {
    if (solve->parsed()) return cmd_solve(cfg);
    if (table->parsed()) return cmd_table(cfg);
    if (stability->parsed()) return cmd_stability(cfg);
    if (convergence->parsed()) return cmd_convergence(cfg);
  } catch (const expdq::NonFinite& e) {
    std::fprintf(stderr, "blow-up: %s\n", e.what());
    return 3;
  } catch (const expdq::NoConvergence& e) {
    std::fprintf(stderr, "failed: %s\n", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const expdq::DegenerateShape& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const expdq::NotDominant& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const expdq::SingularClosure& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const expdq::NoExactSolution& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "failed: %s\n", e.what());
    return 1;
  }
  return 2;
}
