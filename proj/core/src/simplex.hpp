#pragma once

#include <optional>
#include <vector>

#include "pcsp/rational.hpp"

namespace pcsp::detail {

// Full-tableau primal simplex over exact rationals for systems
//   A x = b, x >= 0.
// Bland's rule everywhere, so every solve terminates. Built for desk-scale
// problems; no sparsity, no revised simplex.
class Simplex {
  public:
    Simplex(int nvars, const std::vector<std::vector<Rational>>& A,
            const std::vector<Rational>& b);

    // Phase 1. False means the system is infeasible.
    bool feasible();

    // Maximizes x[var] from the current basis (phase 2 re-optimization).
    // Requires feasible(); throws InternalError on an unbounded objective.
    Rational maximize(int var);

    // Current basic solution restricted to the original variables.
    std::vector<Rational> solution() const;

  private:
    int n_ = 0;           // original variables
    int total_ = 0;       // original + artificial columns
    int first_artificial_ = 0;
    std::vector<std::vector<Rational>> T_;  // m rows, total_ + 1 cols (rhs last)
    std::vector<int> basis_;                // basic column per row
    bool phase1_done_ = false;
    bool feasible_ = false;

    void pivot(int row, int col);
    // Minimizes sum of obj over current tableau; obj given per column.
    // Returns the optimal value.
    Rational run(const std::vector<Rational>& obj, bool forbid_artificials);
};

}  // namespace pcsp::detail
