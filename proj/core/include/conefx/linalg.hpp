#pragma once

#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace conefx {

inline constexpr int kMaxDim = 5;

// Coordinates of a point, direction or normal in R^n with n <= 5. Storage is
// inline, so vectors of these never touch the heap per element.
using RealVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;

// Raised when a caller violates an operation's precondition.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Builds a vector of dimension 2..5 and rejects non-finite components.
RealVector make_vector(std::initializer_list<double> coords);

bool all_finite(const RealVector& v);

// Throws InputError naming `what` when v has NaN/inf components.
void require_finite(const RealVector& v, std::string_view what);

// Absolute bounds used by every "equals zero" / "strictly negative" test.
// Margin tests report the measured margin; margin_abs is only the floor the
// margin must beat to count as strict.
struct Tolerance {
  double eq_abs = 1e-9;
  double margin_abs = 0.0;
};

// Singular values below kRankCutoff * sigma_max count as zero.
inline constexpr double kRankCutoff = 1e-10;

int numerical_rank(std::span<const RealVector> rows);

// Orthonormal basis of {v : <row, v> = 0 for every row}. Cardinality is
// dim - numerical_rank(rows). Throws InputError on empty input or rows of
// different dimensions.
std::vector<RealVector> nullspace(std::span<const RealVector> rows);

// Orthogonal projection of v onto span(basis); basis need not be orthonormal.
RealVector project_onto_span(const RealVector& v,
                             std::span<const RealVector> basis);

enum class Relation { kLessEqual, kEqual };

struct LinearConstraint {
  RealVector coeffs;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

// Rows <a, x> (<= | =) b over a shared dimension.
class LinearConstraintSet {
 public:
  explicit LinearConstraintSet(int dim);

  void add(RealVector coeffs, Relation relation, double rhs);
  void add_less_equal(RealVector coeffs, double rhs) {
    add(std::move(coeffs), Relation::kLessEqual, rhs);
  }

  int dim() const { return dim_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  const std::vector<LinearConstraint>& rows() const { return rows_; }

  // Largest violation max(<a,x> - b, |<a,x> - b| for equalities), or -inf
  // for an empty set.
  double max_violation(const RealVector& x) const;

 private:
  int dim_;
  std::vector<LinearConstraint> rows_;
};

// Closed interval [lo, hi]; either end may be infinite.
struct Interval {
  double lo;
  double hi;
};

// Intersection of {lambda >= l} over lowers and {lambda <= u} over uppers.
// nullopt means empty.
std::optional<Interval> interval_feasibility(std::span<const double> lowers,
                                             std::span<const double> uppers);

std::string to_string(const RealVector& v);

}  // namespace conefx
