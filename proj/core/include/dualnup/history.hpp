#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace dualnup {

/// One per-iteration row of a benchmark history, plus one summary row
/// (is_summary = true) per (solver, seed) carrying the total runtime in
/// elapsed_s. Rows are sorted by (solver, seed, iter) with the summary last
/// in its group.
struct HistoryRow {
  std::string solver;
  std::uint64_t seed = 0;
  int iter = 0;
  bool is_summary = false;
  double J = 0.0;
  std::optional<double> rel_gap_to_oracle;
  double max_violation = 0.0;
  double elapsed_s = 0.0;
};

inline constexpr const char* kHistoryCsvHeader =
    "solver,seed,iter,J,rel_gap_to_oracle,max_violation,elapsed_s";

void write_history_csv(std::ostream& out, std::vector<HistoryRow> rows);
void write_history_csv(const std::string& path, std::vector<HistoryRow> rows);

}  // namespace dualnup
