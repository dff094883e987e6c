#include "dualnup/history.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <tuple>

namespace dualnup {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

}  // namespace

void write_history_csv(std::ostream& out, std::vector<HistoryRow> rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const HistoryRow& a, const HistoryRow& b) {
    return std::tuple(a.solver, a.seed, a.is_summary, a.iter) <
           std::tuple(b.solver, b.seed, b.is_summary, b.iter);
  });
  out << kHistoryCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.solver << ',' << r.seed << ',';
    if (r.is_summary)
      out << "total";
    else
      out << r.iter;
    out << ',' << fmt("%.17g", r.J) << ',';
    if (r.rel_gap_to_oracle) out << fmt("%.9e", *r.rel_gap_to_oracle);
    out << ',' << fmt("%.9e", r.max_violation) << ',' << fmt("%.6f", r.elapsed_s) << '\n';
  }
}

void write_history_csv(const std::string& path, std::vector<HistoryRow> rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_history_csv(out, std::move(rows));
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace dualnup
