#include "induction/diagnostics.hpp"

#include <cstdio>
#include <iomanip>

namespace induction {

void write_convergence_csv(const std::vector<ConvergenceRow>& rows, std::ostream& os) {
  os << "grid,error_percent,rate\n" << std::setprecision(17);
  for (const auto& row : rows) {
    os << row.label() << ',' << row.error_percent << ',';
    if (row.rate) os << *row.rate;
    os << '\n';
  }
}

void write_convergence_table(const std::vector<ConvergenceRow>& rows, const std::string& scheme, std::ostream& os) {
  char line[128];
  std::snprintf(line, sizeof line, "%-12s | %12s %6s\n", "Grid size", scheme.c_str(), "rate");
  os << line << std::string(34, '-') << '\n';
  for (const auto& row : rows) {
    char rate[16] = "";
    if (row.rate) std::snprintf(rate, sizeof rate, "%.1f", *row.rate);
    std::snprintf(line, sizeof line, "%-12s | %12.2e %6s\n", row.label().c_str(), row.error_percent, rate);
    os << line;
  }
}

}  // namespace induction
