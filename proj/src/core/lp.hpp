#pragma once
#include <optional>
#include <vector>

#include "core/rational.hpp"

namespace grc {

// max objective.x  subject to  a_i.x <= rhs_i (eq[i] false) or a_i.x = rhs_i.
struct LpProblem {
  size_t n = 0;
  QMat a;
  QVec rhs;
  std::vector<bool> eq;
  QVec objective;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rat value;    // objective at optimum
  QVec x;       // optimum, or a feasible point when unbounded
  QVec ray;     // improving recession direction when unbounded
  QVec farkas;  // infeasibility certificate: y >= 0 on <=, y^T a = 0, y^T rhs < 0
};

LpResult lp_optimize(const LpProblem& p);

// Feasible point of the constraint set, ignoring the objective.
std::optional<QVec> lp_feasible_point(const LpProblem& p);

}  // namespace grc
