// Command-line front end: simulate | bound | verify | fit | sweep.
// Exit codes: 0 success, 1 verification/runtime failure, 2 configuration error.
// Errors are reported as one JSON object on stderr.

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kin/errors.hpp"
#include "kin/runner.hpp"

using nlohmann::json;

namespace {

json bound_to_json(const kin::rates::RateBound& rb) {
  json j;
  j["schema_version"] = 1;
  j["theorem"] = kin::rates::theorem_name(rb.theorem);
  j["lambda"] = static_cast<double>(rb.lambda);
  j["Lambda"] = static_cast<double>(rb.Lambda);
  j["eps_star"] = static_cast<double>(rb.eps_star);
  if (rb.eta_star)
    j["eta_star"] = static_cast<double>(*rb.eta_star);
  else
    j["eta_star"] = nullptr;
  json c;
  for (const auto& [k, v] : rb.constants) c[k] = static_cast<double>(v);
  j["constants"] = c;
  return j;
}

void emit_error(const std::string& kind, const std::string& message) {
  json j;
  j["error"] = {{"kind", kind}, {"message", message}};
  std::cerr << j.dump() << "\n";
}

int effective_workers(int requested) {
  const char* force = std::getenv("KIN_FORCE_SINGLE_THREAD");
  if (force && std::string(force) == "1") return 1;
  return requested;
}

kin::SimConfig load_config(const std::string& path, int workers) {
  kin::SimConfig cfg = kin::parse_config(path);
  cfg.workers = effective_workers(workers);
  kin::validate(cfg);
  return cfg;
}

int cmd_simulate(const std::string& path, int workers) {
  kin::SimConfig cfg = load_config(path, workers);
  kin::RunResult res = kin::run(cfg);
  if (cfg.csv_path.empty()) kin::write_csv(std::cout, res.table);
  if (!cfg.certificate_path.empty() && res.bound) {
    std::ofstream out(cfg.certificate_path);
    out << bound_to_json(*res.bound).dump(2) << "\n";
  }
  std::cerr << "simulate: " << res.table.rows.size() << " records to "
            << (cfg.csv_path.empty() ? "<stdout>" : cfg.csv_path) << "\n";
  return 0;
}

int cmd_bound(const std::string& path, const std::string& out_path) {
  kin::SimConfig cfg = load_config(path, 1);
  const kin::InteractionModel model = cfg.model.build(cfg.dim);
  kin::Grid grid = kin::Grid::make(cfg.dim, cfg.n);
  auto [state, stats] = kin::init_state(kin::build_initial(cfg.initial, grid), cfg.c);
  (void)state;
  auto bound = kin::certificate_for(cfg, stats, model);
  if (!bound) throw kin::NoCertificateError("no-certificate: [rates] theorem = none");
  const json j = bound_to_json(*bound);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << j.dump(2) << "\n";
  } else if (!cfg.certificate_path.empty()) {
    std::ofstream out(cfg.certificate_path);
    out << j.dump(2) << "\n";
  } else {
    std::cout << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_verify(const std::string& path, int workers) {
  kin::SimConfig cfg = load_config(path, workers);
  kin::RunResult res;
  kin::VerifyReport rep = kin::verify(cfg, &res);
  for (const auto& c : rep.checks)
    std::cout << (c.pass ? "ok   " : "FAIL ") << c.name << ": " << c.detail << "\n";
  if (!rep.all_pass()) {
    emit_error("verify", "one or more checks failed");
    return 1;
  }
  if (!cfg.certificate_path.empty() && res.bound) {
    std::ofstream out(cfg.certificate_path);
    out << bound_to_json(*res.bound).dump(2) << "\n";
  }
  return 0;
}

int cmd_fit(const std::string& csv, double lo, double hi) {
  kin::TimeSeriesTable table = kin::read_csv(csv);
  const auto fit = kin::rates::fit_empirical_rate(table.column_t(), table.column_dist_sq(),
                                                  static_cast<kin::Real>(lo),
                                                  static_cast<kin::Real>(hi));
  json j;
  j["lambda_emp"] = static_cast<double>(fit.lambda_emp);
  j["window"] = {static_cast<double>(fit.window_lo), static_cast<double>(fit.window_hi)};
  j["r_squared"] = static_cast<double>(fit.r_squared);
  std::cout << j.dump(2) << "\n";
  return 0;
}

struct GridAxis {
  std::string key;
  std::vector<std::string> values;
};

int cmd_sweep(const std::string& path, const std::vector<std::string>& grid_specs,
              const std::string& out_path, int workers) {
  kin::SimConfig base = load_config(path, 1);
  std::vector<GridAxis> axes;
  for (const std::string& spec : grid_specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos)
      throw kin::ConfigError("sweep: --grid expects key=v1,v2,... got '" + spec + "'");
    GridAxis axis;
    axis.key = spec.substr(0, eq);
    std::stringstream ss(spec.substr(eq + 1));
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) axis.values.push_back(item);
    if (axis.values.empty()) throw kin::ConfigError("sweep: empty value list for " + axis.key);
    axes.push_back(std::move(axis));
  }
  if (axes.empty()) throw kin::ConfigError("sweep: at least one --grid axis is required");

  // Cartesian product of the axes.
  std::vector<std::vector<std::string>> points{{}};
  for (const auto& axis : axes) {
    std::vector<std::vector<std::string>> next;
    for (const auto& p : points)
      for (const auto& v : axis.values) {
        auto q = p;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    points = std::move(next);
  }

  struct Row {
    std::vector<std::string> params;
    double lambda = 0, lambda_emp = 0, r2 = 0;
    std::string error;
  };
  std::vector<Row> rows(points.size());

  const int nw = effective_workers(workers);
  std::atomic<std::size_t> cursor{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= points.size()) return;
      Row& row = rows[i];
      row.params = points[i];
      try {
        kin::SimConfig cfg = base;
        cfg.csv_path.clear();
        cfg.checkpoint_path.clear();
        cfg.certificate_path.clear();
        cfg.workers = 1;  // run points concurrently, each single-threaded
        for (std::size_t a = 0; a < axes.size(); ++a)
          kin::apply_override(cfg, axes[a].key, points[i][a]);
        kin::validate(cfg);
        kin::RunResult res = kin::run(cfg);
        if (!res.bound) throw kin::NoCertificateError("sweep point without certificate");
        const auto fit = kin::rates::fit_empirical_rate(
            res.table.column_t(), res.table.column_dist_sq(), cfg.t_end / 4, cfg.t_end);
        row.lambda = static_cast<double>(res.bound->lambda);
        row.lambda_emp = static_cast<double>(fit.lambda_emp);
        row.r2 = static_cast<double>(fit.r_squared);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };
  if (nw <= 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < nw; ++w) threads.emplace_back(work);
    for (auto& t : threads) t.join();
  }

  std::ostringstream csv;
  for (const auto& axis : axes) csv << axis.key << ',';
  csv << "lambda,lambda_emp,r_squared\n";
  bool any_error = false;
  for (const auto& row : rows) {
    if (!row.error.empty()) {
      any_error = true;
      emit_error("sweep", row.error);
      continue;
    }
    for (const auto& p : row.params) csv << p << ',';
    csv << row.lambda << ',' << row.lambda_emp << ',' << row.r2 << "\n";
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << csv.str();
  } else {
    std::cout << csv.str();
  }
  return any_error ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-velocity kinetic solver and decay-certificate checker"};
  app.require_subcommand(1);

  std::string config_path, csv_path, out_path;
  std::vector<std::string> grid_specs;
  int workers = 1;
  double win_lo = 0, win_hi = 0;

  auto* sim = app.add_subcommand("simulate", "run a config, write CSV time series");
  sim->add_option("config", config_path, "config file")->required();
  sim->add_option("--workers", workers, "worker threads");

  auto* bound = app.add_subcommand("bound", "compute the decay certificate only");
  bound->add_option("config", config_path, "config file")->required();
  bound->add_option("--out", out_path, "certificate output path");

  auto* verify = app.add_subcommand("verify", "run + check certificate and invariants");
  verify->add_option("config", config_path, "config file")->required();
  verify->add_option("--workers", workers, "worker threads");

  auto* fit = app.add_subcommand("fit", "fit the decay rate of a CSV time series");
  fit->add_option("csv", csv_path, "time series")->required();
  fit->add_option("--window", [&win_lo, &win_hi](const std::vector<std::string>& vals) {
       if (vals.size() != 2) return false;
       win_lo = std::stod(vals[0]);
       win_hi = std::stod(vals[1]);
       return true;
     }, "fit window: t_lo t_hi")->expected(2)->required();

  auto* sweep = app.add_subcommand("sweep", "one run per grid point, aggregate rates");
  sweep->add_option("config", config_path, "base config file")->required();
  sweep->add_option("--grid", grid_specs, "axis as section.key=v1,v2,...")->required();
  sweep->add_option("--out", out_path, "aggregate CSV path");
  sweep->add_option("--workers", workers, "concurrent runs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(config_path, workers);
    if (bound->parsed()) return cmd_bound(config_path, out_path);
    if (verify->parsed()) return cmd_verify(config_path, workers);
    if (fit->parsed()) return cmd_fit(csv_path, win_lo, win_hi);
    if (sweep->parsed()) return cmd_sweep(config_path, grid_specs, out_path, workers);
  } catch (const kin::ConfigError& e) {
    emit_error("config", e.what());
    return 2;
  } catch (const kin::NoCertificateError& e) {
    emit_error("no-certificate", e.what());
    return 1;
  } catch (const kin::RunAbort& e) {
    emit_error("run-abort", e.what());
    return 1;
  } catch (const std::exception& e) {
    emit_error("error", e.what());
    return 1;
  }
  return 0;
}
