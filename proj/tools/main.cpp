// Command-line interface: instance generation, solving, verification
// suites, and benchmark runs emitting machine-readable convergence data.

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "dualnup/history.hpp"
#include "dualnup/instance_io.hpp"
#include "dualnup/oracle.hpp"
#include "dualnup/solvers.hpp"
#include "dualnup/verify.hpp"

namespace {

using namespace dualnup;

nlohmann::ordered_json matrix_rows(const Mat& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

void write_solution_json(const Solution& sol, const std::string& path) {
  nlohmann::ordered_json j;
  j["J"] = sol.J;
  j["converged"] = sol.converged;
  j["iters"] = sol.iters;
  j["status"] = sol.status;
  nlohmann::ordered_json x1 = nlohmann::ordered_json::array();
  for (int i = 0; i < sol.x1_hat.size(); ++i) x1.push_back(sol.x1_hat(i));
  j["x1_hat"] = x1;
  j["u_hat"] = matrix_rows(sol.u_hat);
  j["y_hat"] = matrix_rows(sol.y_hat);
  j["z_tilde_hat"] = matrix_rows(sol.z_tilde_hat);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
}

int thread_budget(std::size_t cells) {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("DUAL_NUP_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return static_cast<int>(std::min<std::size_t>(n, std::max<std::size_t>(cells, 1)));
}

struct BenchCell {
  std::string solver;
  std::uint64_t seed = 0;
};

int run_bench(const GeneratorDims& dims, int reps, std::uint64_t seed0,
              const std::vector<std::string>& solvers, const SolverConfig& cfg,
              const std::string& reference, const std::string& out_path) {
  std::vector<BenchCell> cells;
  for (const auto& s : solvers)
    for (int r = 0; r < reps; ++r) cells.push_back({s, seed0 + static_cast<std::uint64_t>(r)});

  // Reference objective per seed: the exact oracle at desk scale, a tightly
  // converged solve otherwise.
  std::vector<std::uint64_t> seeds;
  for (int r = 0; r < reps; ++r) seeds.push_back(seed0 + static_cast<std::uint64_t>(r));
  std::mutex ref_mutex;
  std::map<std::uint64_t, double> ref_J;
  auto reference_for = [&](std::uint64_t seed, const ProblemInstance& inst) -> std::optional<double> {
    if (reference == "none") return std::nullopt;
    {
      std::lock_guard<std::mutex> lock(ref_mutex);
      auto it = ref_J.find(seed);
      if (it != ref_J.end()) return it->second;
    }
    double J;
    if (inst.constraints.size() <= 20)
      J = oracle::active_set_qp(inst).J;
    else if (reference == "oracle")
      throw std::runtime_error("oracle: enumeration bound exceeded");
    else {
      SolverConfig tight = cfg;
      tight.tol = 1e-12;
      tight.max_iters = 5 * cfg.max_iters;
      tight.record_history = false;
      J = solve_iffbdd(inst, tight).J;
    }
    std::lock_guard<std::mutex> lock(ref_mutex);
    ref_J[seed] = J;
    return J;
  };

  std::vector<HistoryRow> rows;
  std::mutex rows_mutex;
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      const auto& cell = cells[i];
      std::vector<HistoryRow> local;
      try {
        const auto gen = generate_instance(dims, cell.seed);
        const auto ref = reference_for(cell.seed, gen.instance);
        const Solution sol = solve(cell.solver, gen.instance, cfg);
        for (const auto& rec : sol.history.records) {
          HistoryRow row;
          row.solver = cell.solver;
          row.seed = cell.seed;
          row.iter = rec.iter;
          row.J = rec.J;
          if (ref && *ref != 0.0) row.rel_gap_to_oracle = std::abs(rec.J - *ref) / std::abs(*ref);
          row.max_violation = rec.max_violation;
          row.elapsed_s = rec.elapsed_s;
          local.push_back(row);
        }
        HistoryRow total;
        total.solver = cell.solver;
        total.seed = cell.seed;
        total.is_summary = true;
        total.iter = sol.iters;
        total.J = sol.J;
        if (ref && *ref != 0.0) total.rel_gap_to_oracle = std::abs(sol.J - *ref) / std::abs(*ref);
        total.max_violation =
            sol.history.records.empty() ? 0.0 : sol.history.records.back().max_violation;
        total.elapsed_s =
            sol.history.records.empty() ? 0.0 : sol.history.records.back().elapsed_s;
        local.push_back(total);
      } catch (const std::exception& e) {
        std::cerr << "bench: " << cell.solver << " seed " << cell.seed << ": " << e.what()
                  << '\n';
        HistoryRow row;
        row.solver = cell.solver;
        row.seed = cell.seed;
        row.is_summary = true;
        row.J = std::nan("");
        local.push_back(row);
      }
      std::lock_guard<std::mutex> lock(rows_mutex);
      rows.insert(rows.end(), local.begin(), local.end());
    }
  };

  const int threads = thread_budget(cells.size());
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  write_history_csv(out_path, std::move(rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint MAP estimation in linear state-space models with convex "
               "losses/constraints via Gaussian message passing"};
  app.require_subcommand(1);

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random box-constrained instance");
  GeneratorDims dims;
  std::uint64_t seed = 1;
  std::string out_path;
  gen_cmd->add_option("--M", dims.M, "State dimension")->required();
  gen_cmd->add_option("--L", dims.L, "Input dimension")->required();
  gen_cmd->add_option("--K", dims.K, "Output dimension")->required();
  gen_cmd->add_option("--N", dims.N, "Horizon")->required();
  gen_cmd->add_option("--seed", seed, "Generator seed");
  gen_cmd->add_option("--out", out_path, "Output instance path")->required();

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance");
  std::string instance_path, solver_name = "iffbdd", solution_path, history_path,
              gamma_mode = "infinite";
  SolverConfig cfg;
  solve_cmd->add_option("--instance", instance_path, "Instance JSON path")->required();
  solve_cmd->add_option("--solver", solver_name, "iffbdd, irlge, or ibffd");
  solve_cmd->add_option("--tol", cfg.tol, "Relative objective change threshold");
  solve_cmd->add_option("--max-iters", cfg.max_iters, "Iteration cap");
  solve_cmd->add_option("--beta", cfg.beta, "Hinge slope for hard-loss surrogates");
  solve_cmd->add_option("--gamma-mode", gamma_mode,
                        "finite or infinite proxy slope for one-sided constraints");
  solve_cmd->add_option("--out", solution_path, "Write the solution JSON here");
  solve_cmd->add_option("--history", history_path, "Write per-iteration history CSV here");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Seeded benchmark sweep, CSV output");
  GeneratorDims bdims;
  int reps = 10;
  std::uint64_t seed0 = 1;
  std::string solvers_csv = "iffbdd,irlge", bench_out, reference = "auto",
              bench_gamma_mode = "infinite";
  SolverConfig bcfg;
  bench_cmd->add_option("--M", bdims.M)->required();
  bench_cmd->add_option("--L", bdims.L)->required();
  bench_cmd->add_option("--K", bdims.K)->required();
  bench_cmd->add_option("--N", bdims.N)->required();
  bench_cmd->add_option("--reps", reps, "Number of seeded repetitions");
  bench_cmd->add_option("--seed0", seed0, "First seed");
  bench_cmd->add_option("--solvers", solvers_csv, "Comma-separated solver list");
  bench_cmd->add_option("--tol", bcfg.tol);
  bench_cmd->add_option("--max-iters", bcfg.max_iters);
  bench_cmd->add_option("--beta", bcfg.beta);
  bench_cmd->add_option("--gamma-mode", bench_gamma_mode);
  bench_cmd->add_option("--reference", reference,
                        "Gap reference: auto (oracle when small, tight solve otherwise), "
                        "oracle, or none");
  bench_cmd->add_option("--out", bench_out, "Output CSV path")->required();

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Run property suites");
  std::string suite = "all";
  verify_cmd->add_option("--suite", suite, "losses, gauss, oracle, solvers, or all");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_cmd->parsed()) {
      const auto gen = generate_instance(dims, seed);
      save_instance(gen.instance, out_path);
      std::cout << "wrote " << out_path << " (M=" << dims.M << " L=" << dims.L
                << " K=" << dims.K << " N=" << dims.N << ", seed " << seed << ", "
                << gen.instance.constraints.size() << " constraints)\n";
      return 0;
    }

    if (solve_cmd->parsed()) {
      cfg.gamma_mode = gamma_mode == "finite" ? SolverConfig::GammaMode::Finite
                                              : SolverConfig::GammaMode::Infinite;
      if (gamma_mode != "finite" && gamma_mode != "infinite")
        throw std::invalid_argument("--gamma-mode must be finite or infinite");
      const ProblemInstance instance = load_instance(instance_path);
      const Solution sol = solve(solver_name, instance, cfg);
      std::cout << "solver=" << solver_name << " J=" << sol.J << " iters=" << sol.iters
                << " status=" << sol.status << '\n';
      if (!solution_path.empty()) write_solution_json(sol, solution_path);
      if (!history_path.empty()) {
        std::vector<HistoryRow> rows;
        for (const auto& rec : sol.history.records)
          rows.push_back({solver_name, instance.meta.seed, rec.iter, false, rec.J, std::nullopt,
                          rec.max_violation, rec.elapsed_s});
        write_history_csv(history_path, std::move(rows));
      }
      return sol.converged ? 0 : 2;
    }

    if (bench_cmd->parsed()) {
      bcfg.gamma_mode = bench_gamma_mode == "finite" ? SolverConfig::GammaMode::Finite
                                                     : SolverConfig::GammaMode::Infinite;
      if (reference != "auto" && reference != "oracle" && reference != "none")
        throw std::invalid_argument("--reference must be auto, oracle, or none");
      std::vector<std::string> solvers;
      std::string token;
      std::stringstream ss(solvers_csv);
      while (std::getline(ss, token, ','))
        if (!token.empty()) solvers.push_back(token);
      if (solvers.empty()) throw std::invalid_argument("--solvers list is empty");
      return run_bench(bdims, reps, seed0, solvers, bcfg, reference, bench_out);
    }

    if (verify_cmd->parsed()) {
      bool ok = true;
      for (const auto& report : verify::verify_suite(suite)) {
        verify::print_report(std::cout, report);
        ok = ok && report.pass();
      }
      std::cout << (ok ? "all properties passed\n" : "FAILURES present\n");
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
