#include "prp/assignment.hpp"

#include <limits>
#include <string>

#include "prp/errors.hpp"

namespace prp {

AssignmentResult solve_assignment(int rows, int cols, std::span<const double> cost) {
  if (rows > cols)
    throw Infeasible("cannot assign " + std::to_string(rows) + " rows to " +
                     std::to_string(cols) + " columns");
  if (cost.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
    throw Error("assignment cost matrix has the wrong size");
  AssignmentResult result;
  if (rows == 0) return result;

  const double inf = std::numeric_limits<double>::infinity();
  const auto n = static_cast<std::size_t>(rows);
  const auto m = static_cast<std::size_t>(cols);
  auto a = [&](std::size_t i, std::size_t j) { return cost[(i - 1) * m + (j - 1)]; };

  // 1-based arrays; column 0 is the virtual start of each augmentation.
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> row_of(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    row_of[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(m + 1, inf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = row_of[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = a(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[row_of[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      row_of[j0] = row_of[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  result.column_of_row.assign(n, -1);
  for (std::size_t j = 1; j <= m; ++j)
    if (row_of[j] != 0) result.column_of_row[row_of[j] - 1] = static_cast<int>(j - 1);
  for (std::size_t i = 0; i < n; ++i)
    result.cost += cost[i * m + static_cast<std::size_t>(result.column_of_row[i])];
  return result;
}

}  // namespace prp
