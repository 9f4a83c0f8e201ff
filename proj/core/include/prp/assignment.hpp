#pragma once

#include <span>
#include <vector>

namespace prp {

struct AssignmentResult {
  std::vector<int> column_of_row;
  double cost = 0.0;
};

// Minimum-cost assignment of every row to a distinct column (rows <= cols),
// by the shortest augmenting path method with potentials, O(rows^2 * cols).
// `cost` is row-major. Throws Infeasible when rows > cols.
AssignmentResult solve_assignment(int rows, int cols, std::span<const double> cost);

}  // namespace prp
