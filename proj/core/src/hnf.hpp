#pragma once

#include <optional>
#include <vector>

#include "pcsp/rational.hpp"

namespace pcsp::detail {

// Decides A x = b over the integers via a column-style Hermite normal form
// with an accumulated unimodular transform, and returns a witness on success.
std::optional<std::vector<Int>> solve_diophantine(const std::vector<std::vector<Int>>& A,
                                                  const std::vector<Int>& b);

}  // namespace pcsp::detail
