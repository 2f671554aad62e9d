#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "conefx/cone_model.hpp"
#include "conefx/linalg.hpp"

namespace conefx {

// Point reconstructed as a nonnegative combination of the generators.
struct Inside {
  std::vector<double> coefficients;  // one per generator, all >= 0
  double residual = 0.0;             // ||sum c_j g_j - point||
};

// Farkas certificate: <normal, g> <= max_generator_value for every
// generator and <normal, point> = margin > 0. normal is unit length.
struct Outside {
  RealVector normal;
  double margin = 0.0;
  double max_generator_value = 0.0;
};

using MembershipVerdict = std::variant<Inside, Outside>;

// Simplex ran past its iteration cap. Carries the last dual iterate so the
// caller can still inspect how close it got.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, RealVector best_dual,
              double best_infeasibility)
      : std::runtime_error(what),
        best_dual_(std::move(best_dual)),
        best_infeasibility_(best_infeasibility) {}

  const RealVector& best_dual() const { return best_dual_; }
  double best_infeasibility() const { return best_infeasibility_; }

 private:
  RealVector best_dual_;
  double best_infeasibility_;
};

// Decides point in cone(generators) with a certificate either way.
MembershipVerdict conic_membership(const RealVector& point,
                                   const ConeModel& cone,
                                   const Tolerance& tol = {});

// Re-validates a verdict from its certificate alone (no solver call).
bool recheck(const MembershipVerdict& verdict, const RealVector& point,
             const ConeModel& cone, const Tolerance& tol = {});

inline bool is_inside(const MembershipVerdict& v) {
  return std::holds_alternative<Inside>(v);
}

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  RealVector x;          // primal optimum when kOptimal
  double objective = 0;  // <c, x> when kOptimal
  // kInfeasible: nonnegative row multipliers w (one per constraint, equality
  // rows may be signed) with sum w_k a_k = 0 and <w, b> < 0.
  // kUnbounded: a ray r with <a_k, r> <= 0 and <c, r> > 0.
  std::vector<double> row_certificate;
  RealVector ray;
};

// max <objective, x> subject to the rows of `constraints`, x free.
// Dense two-phase simplex on the dual; dimension of x is at most 5.
LpResult maximize(const RealVector& objective,
                  const LinearConstraintSet& constraints,
                  const Tolerance& tol = {});

}  // namespace conefx
