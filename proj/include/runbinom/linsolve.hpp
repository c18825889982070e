#pragma once

#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace runbinom {

using Rational = boost::multiprecision::cpp_rational;

struct ExactSolution {
  std::vector<Rational> x;
  std::size_t rank = 0;
};

/// Solves A x = b exactly by Gauss-Jordan elimination. Pivot columns are taken
/// left to right, so earlier columns are preferred; free variables are set to
/// zero. std::nullopt if the system is inconsistent.
std::optional<ExactSolution> solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> b);

}  // namespace runbinom
