#include "conefx/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace conefx {

namespace {

Eigen::MatrixXd stack_rows(std::span<const RealVector> rows) {
  if (rows.empty()) throw InputError("matrix has no rows");
  const Eigen::Index dim = rows.front().size();
  if (dim < 1) throw InputError("matrix rows have zero length");
  Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim) {
      throw InputError("matrix rows have inconsistent dimensions");
    }
    require_finite(rows[i], "matrix row");
    a.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  }
  return a;
}

}  // namespace

RealVector make_vector(std::initializer_list<double> coords) {
  if (coords.size() < 2 || coords.size() > kMaxDim) {
    throw InputError("vector dimension must be in 2..5");
  }
  RealVector v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) v[i++] = c;
  require_finite(v, "vector");
  return v;
}

bool all_finite(const RealVector& v) { return v.allFinite(); }

void require_finite(const RealVector& v, std::string_view what) {
  if (!v.allFinite()) {
    throw InputError(std::string(what) + " has non-finite components");
  }
}

int numerical_rank(std::span<const RealVector> rows) {
  const Eigen::MatrixXd a = stack_rows(rows);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& sigma = svd.singularValues();
  if (sigma.size() == 0 || sigma[0] == 0.0) return 0;
  const double cutoff = kRankCutoff * sigma[0];
  return static_cast<int>((sigma.array() > cutoff).count());
}

std::vector<RealVector> nullspace(std::span<const RealVector> rows) {
  const Eigen::MatrixXd a = stack_rows(rows);
  const Eigen::Index n = a.cols();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  Eigen::Index rank = 0;
  if (sigma.size() > 0 && sigma[0] > 0.0) {
    const double cutoff = kRankCutoff * sigma[0];
    rank = (sigma.array() > cutoff).count();
  }
  std::vector<RealVector> basis;
  basis.reserve(static_cast<std::size_t>(n - rank));
  for (Eigen::Index j = rank; j < n; ++j) {
    RealVector v = svd.matrixV().col(j);
    basis.push_back(v.normalized());
  }
  return basis;
}

RealVector project_onto_span(const RealVector& v,
                             std::span<const RealVector> basis) {
  if (basis.empty()) return RealVector::Zero(v.size());
  Eigen::MatrixXd b(v.size(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (basis[j].size() != v.size()) {
      throw InputError("projection basis dimension mismatch");
    }
    b.col(static_cast<Eigen::Index>(j)) = basis[j];
  }
  // Least squares keeps this correct for rank-deficient spanning sets.
  const Eigen::VectorXd coeffs =
      b.completeOrthogonalDecomposition().solve(Eigen::VectorXd(v));
  return b * coeffs;
}

LinearConstraintSet::LinearConstraintSet(int dim) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw InputError("constraint dimension must be in 1..5");
  }
}

void LinearConstraintSet::add(RealVector coeffs, Relation relation,
                              double rhs) {
  if (coeffs.size() != dim_) {
    throw InputError("constraint row dimension mismatch");
  }
  require_finite(coeffs, "constraint row");
  if (!std::isfinite(rhs)) throw InputError("constraint rhs is not finite");
  rows_.push_back({std::move(coeffs), relation, rhs});
}

double LinearConstraintSet::max_violation(const RealVector& x) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& row : rows_) {
    const double slack = row.coeffs.dot(x) - row.rhs;
    worst = std::max(worst,
                     row.relation == Relation::kEqual ? std::abs(slack) : slack);
  }
  return worst;
}

std::optional<Interval> interval_feasibility(std::span<const double> lowers,
                                             std::span<const double> uppers) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  Interval out{-kInf, kInf};
  for (double l : lowers) out.lo = std::max(out.lo, l);
  for (double u : uppers) out.hi = std::min(out.hi, u);
  if (out.lo > out.hi) return std::nullopt;
  return out;
}

std::string to_string(const RealVector& v) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i];
  }
  os << ')';
  return os.str();
}

}  // namespace conefx
