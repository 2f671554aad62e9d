#include "conefx/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace conefx {

void validate(const ConeModel& cone) {
  if (cone.generators.empty()) throw InputError("cone has no generators");
  const auto dim = cone.generators.front().size();
  for (const auto& g : cone.generators) {
    if (g.size() != dim) {
      throw InputError("cone generators have inconsistent dimensions");
    }
    require_finite(g, "cone generator");
  }
  if (!cone.tags.empty() && cone.tags.size() != cone.generators.size()) {
    throw InputError("cone tags do not match generator count");
  }
}

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kReducedCostTol = 1e-11;

// min <cost, w>  s.t.  columns * w = rhs,  w >= 0.
struct StandardForm {
  Eigen::MatrixXd columns;
  Eigen::VectorXd rhs;
  Eigen::VectorXd cost;
};

enum class SimplexStatus { kOptimal, kInfeasible, kUnbounded };

struct SimplexOutcome {
  SimplexStatus status = SimplexStatus::kInfeasible;
  Eigen::VectorXd w;
  Eigen::VectorXd dual;  // phase-I duals (Farkas) when kInfeasible
  double phase1_objective = 0.0;
  Eigen::VectorXd ray;   // kUnbounded: columns * ray = 0, cost . ray < 0
};

class DenseSimplex {
 public:
  DenseSimplex(const StandardForm& problem, bool phase_one_only)
      : p_(problem),
        m_(problem.columns.rows()),
        n_(problem.columns.cols()),
        phase_one_only_(phase_one_only) {
    ext_.resize(m_, n_ + m_);
    ext_.leftCols(n_) = p_.columns;
    ext_.rightCols(m_).setZero();
    for (Eigen::Index i = 0; i < m_; ++i) {
      ext_(i, n_ + i) = p_.rhs[i] >= 0.0 ? 1.0 : -1.0;
    }
    basis_.resize(static_cast<std::size_t>(m_));
    for (Eigen::Index i = 0; i < m_; ++i) {
      basis_[static_cast<std::size_t>(i)] = n_ + i;
    }
    max_iterations_ = 50 * (n_ + m_) + 1000;
  }

  SimplexOutcome run() {
    SimplexOutcome out;
    Eigen::VectorXd phase1_cost = Eigen::VectorXd::Zero(n_ + m_);
    phase1_cost.tail(m_).setOnes();
    if (iterate(phase1_cost, /*phase_two=*/false) == SimplexStatus::kUnbounded) {
      // Phase I is bounded below by zero; reaching here means numerical
      // breakdown. Report as infeasible with the current duals.
      out.status = SimplexStatus::kInfeasible;
    }
    out.phase1_objective = phase1_cost.dot(full_solution());
    out.dual = duals(phase1_cost);
    const double scale = std::max(1.0, p_.rhs.lpNorm<Eigen::Infinity>());
    if (out.phase1_objective > kFeasTol * scale) {
      out.status = SimplexStatus::kInfeasible;
      out.w = full_solution().head(n_);
      return out;
    }
    if (phase_one_only_) {
      out.status = SimplexStatus::kOptimal;
      out.w = full_solution().head(n_);
      return out;
    }
    Eigen::VectorXd phase2_cost = Eigen::VectorXd::Zero(n_ + m_);
    phase2_cost.head(n_) = p_.cost;
    const SimplexStatus st = iterate(phase2_cost, /*phase_two=*/true);
    out.status = st;
    out.w = full_solution().head(n_);
    out.dual = duals(phase2_cost);
    if (st == SimplexStatus::kUnbounded) out.ray = ray_.head(n_);
    return out;
  }

  static constexpr double kFeasTol = 1e-10;

 private:
  bool is_artificial(Eigen::Index j) const { return j >= n_; }

  Eigen::MatrixXd basis_matrix() const {
    Eigen::MatrixXd b(m_, m_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      b.col(i) = ext_.col(basis_[static_cast<std::size_t>(i)]);
    }
    return b;
  }

  Eigen::VectorXd basic_values() const {
    return basis_matrix().fullPivLu().solve(p_.rhs);
  }

  Eigen::VectorXd full_solution() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n_ + m_);
    const Eigen::VectorXd xb = basic_values();
    for (Eigen::Index i = 0; i < m_; ++i) {
      x[basis_[static_cast<std::size_t>(i)]] = std::max(0.0, xb[i]);
    }
    return x;
  }

  Eigen::VectorXd duals(const Eigen::VectorXd& cost) const {
    Eigen::VectorXd cb(m_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      cb[i] = cost[basis_[static_cast<std::size_t>(i)]];
    }
    return basis_matrix().transpose().fullPivLu().solve(cb);
  }

  SimplexStatus iterate(const Eigen::VectorXd& cost, bool phase_two) {
    int degenerate_streak = 0;
    std::vector<char> in_basis(static_cast<std::size_t>(n_ + m_), 0);
    for (long iter = 0; iter < max_iterations_; ++iter) {
      std::fill(in_basis.begin(), in_basis.end(), 0);
      for (auto j : basis_) in_basis[static_cast<std::size_t>(j)] = 1;

      const Eigen::MatrixXd b = basis_matrix();
      const auto lu = b.fullPivLu();
      const Eigen::VectorXd xb = lu.solve(p_.rhs);
      const Eigen::VectorXd y = duals(cost);

      // Dantzig pricing; Bland's rule once pivots stall to rule out cycling.
      const bool bland = degenerate_streak > 2 * m_ + 5;
      Eigen::Index entering = -1;
      double best = -kReducedCostTol;
      const Eigen::Index limit = phase_two ? n_ : n_ + m_;
      for (Eigen::Index j = 0; j < limit; ++j) {
        if (in_basis[static_cast<std::size_t>(j)]) continue;
        const double colnorm = std::max(1.0, ext_.col(j).norm());
        const double d = (cost[j] - y.dot(ext_.col(j))) / colnorm;
        if (d < best) {
          entering = j;
          if (bland) break;
          best = d;
        }
      }
      if (entering < 0) return SimplexStatus::kOptimal;

      const Eigen::VectorXd dir = lu.solve(ext_.col(entering));
      Eigen::Index leave = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m_; ++i) {
        const Eigen::Index bi = basis_[static_cast<std::size_t>(i)];
        double r = std::numeric_limits<double>::infinity();
        if (phase_two && is_artificial(bi) && std::abs(dir[i]) > kPivotTol) {
          r = 0.0;  // zero-level artificial must not move off zero
        } else if (dir[i] > kPivotTol) {
          r = std::max(0.0, xb[i]) / dir[i];
        }
        if (r < ratio ||
            (r == ratio && leave >= 0 &&
             bi < basis_[static_cast<std::size_t>(leave)])) {
          ratio = r;
          leave = i;
        }
      }
      if (leave < 0) {
        ray_ = Eigen::VectorXd::Zero(n_ + m_);
        ray_[entering] = 1.0;
        for (Eigen::Index i = 0; i < m_; ++i) {
          ray_[basis_[static_cast<std::size_t>(i)]] = -dir[i];
        }
        return SimplexStatus::kUnbounded;
      }
      degenerate_streak = ratio <= 1e-14 ? degenerate_streak + 1 : 0;
      basis_[static_cast<std::size_t>(leave)] = entering;
    }
    const Eigen::VectorXd y = duals(cost);
    throw SolverError("simplex iteration cap exceeded", RealVector(y),
                      cost.dot(full_solution()));
  }

  const StandardForm& p_;
  Eigen::Index m_;
  Eigen::Index n_;
  bool phase_one_only_;
  Eigen::MatrixXd ext_;
  std::vector<Eigen::Index> basis_;
  Eigen::VectorXd ray_;
  long max_iterations_;
};

double membership_scale(const RealVector& point) {
  return std::max(1.0, point.norm());
}

}  // namespace

MembershipVerdict conic_membership(const RealVector& point,
                                   const ConeModel& cone,
                                   const Tolerance& tol) {
  validate(cone);
  require_finite(point, "membership point");
  if (point.size() != cone.dim()) {
    throw InputError("membership point dimension does not match cone");
  }
  const Eigen::Index m = point.size();
  const auto n = static_cast<Eigen::Index>(cone.size());

  StandardForm sf;
  sf.columns.resize(m, n);
  sf.rhs = point;
  sf.cost = Eigen::VectorXd::Zero(n);
  std::vector<double> norms(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& g = cone.generators[static_cast<std::size_t>(j)];
    const double nrm = g.norm();
    norms[static_cast<std::size_t>(j)] = nrm;
    sf.columns.col(j) = nrm > 0.0 ? Eigen::VectorXd(g / nrm)
                                  : Eigen::VectorXd::Zero(m);
  }

  DenseSimplex simplex(sf, /*phase_one_only=*/true);
  const SimplexOutcome res = simplex.run();

  if (res.status == SimplexStatus::kOptimal) {
    Inside in;
    in.coefficients.resize(static_cast<std::size_t>(n), 0.0);
    Eigen::VectorXd recon = Eigen::VectorXd::Zero(m);
    for (Eigen::Index j = 0; j < n; ++j) {
      const double nrm = norms[static_cast<std::size_t>(j)];
      if (nrm > 0.0 && res.w[j] > 0.0) {
        in.coefficients[static_cast<std::size_t>(j)] = res.w[j] / nrm;
        recon += res.w[j] * sf.columns.col(j);
      }
    }
    in.residual = (recon - Eigen::VectorXd(point)).norm();
    return in;
  }

  Outside out;
  const double ynorm = res.dual.norm();
  out.normal = ynorm > 0.0 ? RealVector(res.dual / ynorm) : RealVector(res.dual);
  out.margin = out.normal.dot(point);
  out.max_generator_value = -std::numeric_limits<double>::infinity();
  for (const auto& g : cone.generators) {
    out.max_generator_value = std::max(out.max_generator_value, out.normal.dot(g));
  }
  (void)tol;
  return out;
}

bool recheck(const MembershipVerdict& verdict, const RealVector& point,
             const ConeModel& cone, const Tolerance& tol) {
  validate(cone);
  if (const auto* in = std::get_if<Inside>(&verdict)) {
    if (in->coefficients.size() != cone.size()) return false;
    RealVector recon = RealVector::Zero(point.size());
    for (std::size_t j = 0; j < cone.size(); ++j) {
      if (in->coefficients[j] < 0.0) return false;
      recon += in->coefficients[j] * cone.generators[j];
    }
    return (recon - point).norm() <= tol.eq_abs * membership_scale(point);
  }
  const auto& out = std::get<Outside>(verdict);
  if (out.normal.size() != point.size()) return false;
  for (const auto& g : cone.generators) {
    if (out.normal.dot(g) > tol.eq_abs * std::max(1.0, g.norm())) return false;
  }
  const double margin = out.normal.dot(point);
  return margin > tol.margin_abs && margin > tol.eq_abs;
}

LpResult maximize(const RealVector& objective,
                  const LinearConstraintSet& constraints,
                  const Tolerance& tol) {
  (void)tol;
  require_finite(objective, "objective");
  if (objective.size() != constraints.dim()) {
    throw InputError("objective dimension does not match constraints");
  }
  const Eigen::Index m = constraints.dim();

  // Dual in standard form: min <b, w> s.t. sum w_k a_k = c, w >= 0, with
  // equality rows split into +a_k / -a_k. Rows are scaled to unit norm.
  struct Column {
    std::size_t row;
    double sign;
    double scale;
  };
  std::vector<Column> cols;
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    const auto& row = constraints.rows()[k];
    const double nrm = row.coeffs.norm();
    if (nrm == 0.0) continue;  // 0 <= b carries no information on x
    cols.push_back({k, 1.0, nrm});
    if (row.relation == Relation::kEqual) cols.push_back({k, -1.0, nrm});
  }

  auto build = [&](const Eigen::VectorXd& rhs) {
    StandardForm sf;
    sf.columns.resize(m, static_cast<Eigen::Index>(cols.size()));
    sf.cost.resize(static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const auto& row = constraints.rows()[cols[j].row];
      const auto jj = static_cast<Eigen::Index>(j);
      sf.columns.col(jj) = cols[j].sign * row.coeffs / cols[j].scale;
      sf.cost[jj] = cols[j].sign * row.rhs / cols[j].scale;
    }
    sf.rhs = rhs;
    return sf;
  };

  auto infeasibility_certificate = [&](const Eigen::VectorXd& dir) {
    std::vector<double> w(constraints.size(), 0.0);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      w[cols[j].row] += cols[j].sign * dir[static_cast<Eigen::Index>(j)] /
                        cols[j].scale;
    }
    return w;
  };

  LpResult result;
  if (cols.empty()) {
    // Only trivial rows: infeasible if some 0 <= b with b < 0.
    for (const auto& row : constraints.rows()) {
      const bool bad = row.relation == Relation::kEqual ? row.rhs != 0.0
                                                        : row.rhs < 0.0;
      if (bad) {
        result.status = LpStatus::kInfeasible;
        return result;
      }
    }
    if (objective.norm() == 0.0) {
      result.status = LpStatus::kOptimal;
      result.x = RealVector::Zero(m);
      return result;
    }
    result.status = LpStatus::kUnbounded;
    result.ray = objective.normalized();
    return result;
  }

  const StandardForm sf = build(objective);
  DenseSimplex simplex(sf, /*phase_one_only=*/false);
  const SimplexOutcome res = simplex.run();

  if (res.status == SimplexStatus::kOptimal) {
    result.status = LpStatus::kOptimal;
    result.x = res.dual;
    result.objective = objective.dot(result.x);
    return result;
  }
  if (res.status == SimplexStatus::kUnbounded) {
    result.status = LpStatus::kInfeasible;
    result.row_certificate = infeasibility_certificate(res.ray);
    return result;
  }
  // Dual infeasible: the primal is unbounded if it is feasible at all.
  // Decide feasibility with the zero objective.
  const StandardForm zero = build(Eigen::VectorXd::Zero(m));
  DenseSimplex feas(zero, /*phase_one_only=*/false);
  const SimplexOutcome fres = feas.run();
  if (fres.status == SimplexStatus::kUnbounded) {
    result.status = LpStatus::kInfeasible;
    result.row_certificate = infeasibility_certificate(fres.ray);
    return result;
  }
  result.status = LpStatus::kUnbounded;
  result.ray = res.dual.normalized();
  return result;
}

}  // namespace conefx
