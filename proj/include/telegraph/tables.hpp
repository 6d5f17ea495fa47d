#pragma once

#include <array>

// Rows of the three published estimation tables: x = 1, beta0 = 1.25,
// level 0.95, n = 1000 paths per row. The printed means and intervals are
// kept so the arithmetic can be checked against them.

namespace telegraph {

struct TableRow {
  double alpha;
  double mu;
  double beta_star;
  double printed_mean;
  double printed_ci_low;
  double printed_ci_high;
  double printed_point;
};

inline constexpr double kTableX = 1.0;
inline constexpr double kTableBeta0 = 1.25;
inline constexpr double kTableLevel = 0.95;
inline constexpr std::size_t kTableN = 1000;

inline constexpr std::array<TableRow, 4> kTableVaryingAlpha{{
    {0.7, 1000, 1.75, 5.15575, 1.349423, 1.772864, 1.481261},
    {0.8, 1000, 1.75, 4.496909, 1.394876, 2.03684, 1.571934},
    {0.9, 1000, 1.75, 4.03037, 1.434939, 2.367616, 1.659985},
    {0.925, 1000, 1.75, 3.92666, 1.444975, 2.472007, 1.683373},
}};

inline constexpr std::array<TableRow, 4> kTableVaryingMu{{
    {0.9, 1000, 2, 3.297049, 1.517462, 3.743193, 1.870682},
    {0.9, 5000, 2, 3.292031, 1.66817, 2.257219, 1.872588},
    {0.9, 10000, 2, 3.292868, 1.717179, 2.112946, 1.87227},
    {0.9, 20000, 2, 3.291491, 1.756974, 2.030459, 1.872794},
}};

inline constexpr std::array<TableRow, 4> kTableVaryingBeta{{
    {0.8, 1000, 1.5, 6.128791, 1.298652, 1.561668, 1.389955},
    {0.8, 1000, 2, 3.678367, 1.470994, 2.80116, 1.746724},
    {0.8, 1000, 2.5, 2.860925, 1.583278, 7.827018, 2.074734},
    {0.8, 1000, 2.75, 2.626983, 1.625987, 34.89173, 2.229269},
}};

/// Table 1 varies alpha, table 2 varies mu, table 3 varies beta*.
inline const std::array<TableRow, 4>& table_rows(int table) {
  switch (table) {
    case 1: return kTableVaryingAlpha;
    case 2: return kTableVaryingMu;
    default: return kTableVaryingBeta;
  }
}

}  // namespace telegraph
