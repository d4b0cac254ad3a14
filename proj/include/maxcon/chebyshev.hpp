#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace maxcon {

/// Minimax (L-infinity) fit of b ~ a . theta over a set of rows.
struct ChebyshevFit {
  Eigen::VectorXd theta;
  double minimax_residual = 0.0;
  /// Row ids (as passed in) of the points that pin the optimum; at most dim+1.
  std::vector<std::size_t> basis;
  /// Rows were rank deficient, so theta is one of several optimal solutions.
  bool degenerate = false;
};

namespace detail {

/// Dense revised simplex for
///   min c.x  s.t.  G x = rhs,  x >= 0
/// with few rows (<= ~12) and many columns. The basis matrix is refactored
/// from scratch at every pivot, which is cheap at this size.
class SmallSimplex {
 public:
  SmallSimplex(const Eigen::MatrixXd& G, const Eigen::VectorXd& rhs) : G_(G), rhs_(rhs) {}

  /// Returns the optimal basis (column ids; ids >= cols() are artificials
  /// that stayed basic at zero level, which cannot happen for full-row-rank G).
  std::vector<Eigen::Index> solve(const Eigen::VectorXd& cost) {
    const Eigen::Index m = G_.rows();
    const Eigen::Index nc = G_.cols();
    basis_.resize(m);
    for (Eigen::Index k = 0; k < m; ++k) basis_[k] = nc + k;  // artificial k covers row k

    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(nc + m);
    phase1.tail(m).setOnes();
    run(phase1, /*allow_artificial=*/true);
    drive_out_artificials();

    Eigen::VectorXd phase2(nc + m);
    phase2.head(nc) = cost;
    phase2.tail(m).setZero();
    run(phase2, /*allow_artificial=*/false);
    return basis_;
  }

  [[nodiscard]] const Eigen::VectorXd& basic_values() const { return xb_; }

  /// y with B^T y = c_B, the simplex multipliers at the final basis.
  [[nodiscard]] Eigen::VectorXd multipliers(const Eigen::VectorXd& cost) const {
    const Eigen::Index m = G_.rows();
    Eigen::VectorXd cb(m);
    for (Eigen::Index k = 0; k < m; ++k) cb[k] = basis_[k] < G_.cols() ? cost[basis_[k]] : 0.0;
    return lu_.transpose().solve(cb);
  }

 private:
  [[nodiscard]] Eigen::VectorXd column(Eigen::Index j) const {
    if (j < G_.cols()) return G_.col(j);
    return Eigen::VectorXd::Unit(G_.rows(), j - G_.cols());
  }

  void factor() {
    const Eigen::Index m = G_.rows();
    Eigen::MatrixXd B(m, m);
    for (Eigen::Index k = 0; k < m; ++k) B.col(k) = column(basis_[k]);
    lu_.compute(B);
    xb_ = lu_.solve(rhs_);
    for (Eigen::Index k = 0; k < m; ++k) {
      if (xb_[k] < 0.0 && xb_[k] > -1e-12) xb_[k] = 0.0;
    }
  }

  void run(const Eigen::VectorXd& cost, bool allow_artificial) {
    const Eigen::Index m = G_.rows();
    const Eigen::Index nc = G_.cols();
    const Eigen::Index limit = allow_artificial ? nc + m : nc;
    const double cost_scale = 1.0 + cost.head(nc).cwiseAbs().maxCoeff();
    const double dj_tol = 1e-12 * cost_scale;
    constexpr double kPivotTol = 1e-11;
    const Eigen::Index max_iter = 50 * (nc + m) + 1000;
    int stalls = 0;

    std::vector<char> in_basis(static_cast<std::size_t>(nc + m), 0);
    for (auto j : basis_) in_basis[static_cast<std::size_t>(j)] = 1;

    for (Eigen::Index iter = 0;; ++iter) {
      if (iter > max_iter) throw std::runtime_error("chebyshev_fit: simplex iteration limit exceeded");
      factor();
      Eigen::VectorXd cb(m);
      for (Eigen::Index k = 0; k < m; ++k) cb[k] = cost[basis_[k]];
      const Eigen::VectorXd y = lu_.transpose().solve(cb);

      // Dantzig pricing, falling back to Bland's rule while stalling.
      const bool bland = stalls > 30;
      Eigen::Index enter = -1;
      double best = -dj_tol;
      for (Eigen::Index j = 0; j < limit; ++j) {
        if (in_basis[static_cast<std::size_t>(j)]) continue;
        const double dj = j < nc ? cost[j] - y.dot(G_.col(j)) : cost[j] - y[j - nc];
        if (dj < best) {
          enter = j;
          if (bland) break;
          best = dj;
        }
      }
      if (enter < 0) return;

      const Eigen::VectorXd w = lu_.solve(column(enter));
      Eigen::Index leave = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index k = 0; k < m; ++k) {
        if (w[k] <= kPivotTol) continue;
        const double r = xb_[k] / w[k];
        if (r < ratio - 1e-15 || (r <= ratio + 1e-15 && leave >= 0 && basis_[k] < basis_[leave])) {
          ratio = r;
          leave = k;
        }
      }
      if (leave < 0) throw std::runtime_error("chebyshev_fit: unbounded dual (malformed rows)");
      stalls = ratio <= 1e-15 ? stalls + 1 : 0;
      in_basis[static_cast<std::size_t>(basis_[leave])] = 0;
      in_basis[static_cast<std::size_t>(enter)] = 1;
      basis_[leave] = enter;
    }
  }

  void drive_out_artificials() {
    const Eigen::Index m = G_.rows();
    const Eigen::Index nc = G_.cols();
    factor();
    for (Eigen::Index k = 0; k < m; ++k) {
      if (basis_[k] < nc) continue;
      // Row k of B^{-1} G picks a structural column to swap in at zero level.
      const Eigen::VectorXd row = lu_.transpose().solve(Eigen::VectorXd::Unit(m, k));
      Eigen::Index best = -1;
      double best_abs = 1e-9;
      for (Eigen::Index j = 0; j < nc; ++j) {
        if (std::find(basis_.begin(), basis_.end(), j) != basis_.end()) continue;
        const double v = std::abs(row.dot(G_.col(j)));
        if (v > best_abs) {
          best_abs = v;
          best = j;
        }
      }
      if (best < 0) throw std::runtime_error("chebyshev_fit: redundant constraint row");
      basis_[k] = best;
      factor();
    }
  }

  const Eigen::MatrixXd& G_;
  const Eigen::VectorXd& rhs_;
  std::vector<Eigen::Index> basis_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  Eigen::VectorXd xb_;
};

/// Solves the full-row-rank reduced problem; `A` rows are the reduced
/// regressors. Returns (z, dual support as local row positions).
inline std::pair<Eigen::VectorXd, std::vector<std::size_t>> solve_dual(const Eigen::MatrixXd& A,
                                                                       const Eigen::VectorXd& b) {
  const Eigen::Index npts = A.rows();
  const Eigen::Index r = A.cols();
  const Eigen::Index m = r + 1;
  // Columns 2i and 2i+1 encode  a_i.z + t >= b_i  and  -a_i.z + t >= -b_i.
  Eigen::MatrixXd G(m, 2 * npts);
  Eigen::VectorXd h(2 * npts);
  for (Eigen::Index i = 0; i < npts; ++i) {
    G.col(2 * i).head(r) = A.row(i).transpose();
    G.col(2 * i + 1).head(r) = -A.row(i).transpose();
    G(r, 2 * i) = 1.0;
    G(r, 2 * i + 1) = 1.0;
    h[2 * i] = b[i];
    h[2 * i + 1] = -b[i];
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  rhs[r] = 1.0;

  SmallSimplex lp(G, rhs);
  const Eigen::VectorXd cost = -h;
  const auto basis = lp.solve(cost);
  // Primal (z, t) solves G_B^T y = h_B, i.e. the negated multipliers.
  const Eigen::VectorXd primal = -lp.multipliers(cost);

  std::vector<std::size_t> support;
  const auto& xb = lp.basic_values();
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (basis[k] >= G.cols() || xb[static_cast<Eigen::Index>(k)] <= 1e-14) continue;
    const auto point = static_cast<std::size_t>(basis[k] / 2);
    if (std::find(support.begin(), support.end(), point) == support.end()) support.push_back(point);
  }
  std::sort(support.begin(), support.end());
  return {primal.head(r), support};
}

struct RawFit {
  Eigen::VectorXd theta;
  double t = 0.0;
  std::vector<std::size_t> support;  // local positions
  bool degenerate = false;
};

inline double max_abs_residual(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& theta) {
  return A.rows() == 0 ? 0.0 : (A * theta - b).cwiseAbs().maxCoeff();
}

inline RawFit raw_fit(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  const Eigen::Index npts = A.rows();
  const Eigen::Index dim = A.cols();
  RawFit out;
  if (npts == 0) throw std::invalid_argument("chebyshev_fit: empty subset");

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  qr.setThreshold(1e-10);
  const Eigen::Index rank = qr.rank();

  // Interpolation: at most dim points with independent rows fit exactly.
  if (npts <= dim && rank == npts) {
    out.theta = A.completeOrthogonalDecomposition().solve(b);
    out.t = max_abs_residual(A, b, out.theta);
    out.support.resize(static_cast<std::size_t>(npts));
    for (Eigen::Index i = 0; i < npts; ++i) out.support[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
    return out;
  }

  if (rank == dim) {
    auto [z, support] = solve_dual(A, b);
    out.theta = std::move(z);
    out.support = std::move(support);
  } else {
    // Reparametrise theta = V z on the row space of A.
    out.degenerate = true;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinV);
    const Eigen::MatrixXd V = svd.matrixV().leftCols(rank);
    auto [z, support] = solve_dual(A * V, b);
    out.theta = V * z;
    out.support = std::move(support);
  }
  out.t = max_abs_residual(A, b, out.theta);
  return out;
}

}  // namespace detail

/// Minimax fit over the given rows of (A, b). Row ids index into A.
/// The basis is the set of active rows when there are at most dim+1 of them;
/// with more ties it is the lexicographically first (dim+1)-subset of the
/// active rows whose own fit reaches the same optimum.
inline ChebyshevFit chebyshev_fit(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                  const std::vector<std::size_t>& rows) {
  if (rows.empty()) throw std::invalid_argument("chebyshev_fit: empty subset");
  const auto dim = static_cast<std::size_t>(A.cols());
  Eigen::MatrixXd As(static_cast<Eigen::Index>(rows.size()), A.cols());
  Eigen::VectorXd bs(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    As.row(static_cast<Eigen::Index>(k)) = A.row(static_cast<Eigen::Index>(rows[k]));
    bs[static_cast<Eigen::Index>(k)] = b[static_cast<Eigen::Index>(rows[k])];
  }
  auto raw = detail::raw_fit(As, bs);

  ChebyshevFit fit;
  fit.theta = raw.theta;
  fit.minimax_residual = raw.t;
  fit.degenerate = raw.degenerate;

  const double tol = 1e-10 * (1.0 + raw.t);
  const Eigen::VectorXd res = (As * raw.theta - bs).cwiseAbs();
  std::vector<std::size_t> active;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (res[static_cast<Eigen::Index>(k)] >= raw.t - tol) active.push_back(k);
  }

  std::vector<std::size_t> chosen;
  if (active.size() <= dim + 1) {
    chosen = active;
  } else {
    // Lexicographic search over (dim+1)-subsets of the actives, bounded.
    constexpr std::size_t kMaxTries = 4096;
    std::vector<std::size_t> pick(dim + 1);
    for (std::size_t k = 0; k <= dim; ++k) pick[k] = k;
    for (std::size_t tries = 0; tries < kMaxTries; ++tries) {
      Eigen::MatrixXd Ac(static_cast<Eigen::Index>(dim + 1), A.cols());
      Eigen::VectorXd bc(static_cast<Eigen::Index>(dim + 1));
      for (std::size_t k = 0; k <= dim; ++k) {
        Ac.row(static_cast<Eigen::Index>(k)) = As.row(static_cast<Eigen::Index>(active[pick[k]]));
        bc[static_cast<Eigen::Index>(k)] = bs[static_cast<Eigen::Index>(active[pick[k]])];
      }
      if (std::abs(detail::raw_fit(Ac, bc).t - raw.t) <= tol) {
        for (auto k : pick) chosen.push_back(active[k]);
        break;
      }
      // next combination
      std::size_t k = dim + 1;
      while (k > 0 && pick[k - 1] == active.size() - (dim + 1) + (k - 1)) --k;
      if (k == 0) break;
      ++pick[k - 1];
      for (std::size_t l = k; l <= dim; ++l) pick[l] = pick[l - 1] + 1;
    }
    if (chosen.empty()) chosen = raw.support;
  }
  for (auto k : chosen) fit.basis.push_back(rows[k]);
  std::sort(fit.basis.begin(), fit.basis.end());
  return fit;
}

}  // namespace maxcon
