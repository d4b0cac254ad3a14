#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "maxcon/chebyshev.hpp"
#include "maxcon/oracle.hpp"
#include "maxcon/point_set.hpp"
#include "maxcon/rng.hpp"

namespace maxcon {

enum class Label { inlier, outlier };

/// One observation of the linear residual model |a . theta - b|.
struct DataPoint {
  std::vector<double> a;
  double b = 0.0;
  std::optional<Label> label;
};

struct Dataset {
  std::size_t dim = 0;
  double epsilon = 0.1;
  std::vector<DataPoint> points;

  [[nodiscard]] std::size_t size() const { return points.size(); }

  void validate() const {
    if (points.empty()) throw std::invalid_argument("Dataset: no points");
    if (points.size() > kMaxPoints) throw std::invalid_argument("Dataset: more than 64 points");
    if (dim == 0) throw std::invalid_argument("Dataset: dim must be positive");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw std::invalid_argument("Dataset: epsilon must be positive");
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& pt = points[i];
      if (pt.a.size() != dim) {
        throw std::invalid_argument("Dataset: point " + std::to_string(i) + " has wrong dimension");
      }
      const bool finite = std::isfinite(pt.b) && std::all_of(pt.a.begin(), pt.a.end(), [](double v) {
                            return std::isfinite(v);
                          });
      if (!finite) throw std::invalid_argument("Dataset: point " + std::to_string(i) + " is not finite");
    }
  }

  /// Ground-truth inlier set, when every point carries a label.
  [[nodiscard]] std::optional<PointSet> labelled_inliers() const {
    PointSet x(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (!points[i].label) return std::nullopt;
      if (*points[i].label == Label::inlier) x = x.with(i);
    }
    return x;
  }
};

inline double residual(const std::vector<double>& theta, const DataPoint& pt) {
  if (theta.size() != pt.a.size()) throw std::invalid_argument("residual: dimension mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < theta.size(); ++k) s += pt.a[k] * theta[k];
  return std::abs(s - pt.b);
}

/// Slack added to epsilon before a minimax residual counts as infeasible.
inline constexpr double kFeasibilitySlack = 1e-12;

/// Feasibility oracle for the linear residual model: a subset is feasible
/// iff its minimax residual is within epsilon. Infeasible and feasible
/// verdicts both carry the fit's basis.
class GeometricOracle {
 public:
  explicit GeometricOracle(Dataset data) : data_(std::move(data)) {
    data_.validate();
    A_.resize(static_cast<Eigen::Index>(data_.size()), static_cast<Eigen::Index>(data_.dim));
    b_.resize(static_cast<Eigen::Index>(data_.size()));
    for (std::size_t i = 0; i < data_.size(); ++i) {
      for (std::size_t k = 0; k < data_.dim; ++k) {
        A_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = data_.points[i].a[k];
      }
      b_[static_cast<Eigen::Index>(i)] = data_.points[i].b;
    }
  }

  [[nodiscard]] ChebyshevFit fit(const PointSet& subset) const {
    check(subset);
    return chebyshev_fit(A_, b_, subset.indices());
  }

  [[nodiscard]] FeasibilityResult evaluate(const PointSet& subset) const {
    check(subset);
    counter_.bump();
    if (subset.level() == 0) return {false, std::vector<std::size_t>{}};
    auto f = chebyshev_fit(A_, b_, subset.indices());
    return {f.minimax_residual > data_.epsilon + kFeasibilitySlack, std::move(f.basis)};
  }

  [[nodiscard]] std::size_t size() const { return data_.size(); }
  [[nodiscard]] std::size_t dimension() const { return data_.dim; }
  [[nodiscard]] std::uint64_t queries() const { return counter_.load(); }
  void reset_queries() const { counter_.reset(); }
  [[nodiscard]] const Dataset& data() const { return data_; }

 private:
  void check(const PointSet& subset) const {
    if (subset.size() != data_.size()) throw std::invalid_argument("GeometricOracle: universe size mismatch");
  }

  Dataset data_;
  Eigen::MatrixXd A_;
  Eigen::VectorXd b_;
  QueryCounter counter_;
};

inline ChebyshevFit chebyshev_fit(const Dataset& data, const PointSet& subset) {
  return GeometricOracle(data).fit(subset);
}

inline FeasibilityResult eval_geometric(const Dataset& data, const PointSet& subset) {
  return GeometricOracle(data).evaluate(subset);
}

/// Random robust-regression instance: theta* and every a_i uniform in
/// [-1,1]^dim, inlier noise uniform in [-0.1, 0.1], outlier noise uniform in
/// [-5,-0.1) U (0.1,5], epsilon = 0.1. Outlier positions are a random subset.
inline Dataset gen_synthetic(std::size_t n, std::size_t n_out, std::size_t dim, std::uint64_t seed) {
  if (n == 0 || n > kMaxPoints) throw std::invalid_argument("gen_synthetic: n must be in [1, 64]");
  if (n_out >= n) throw std::invalid_argument("gen_synthetic: outliers must be fewer than points");
  if (dim == 0) throw std::invalid_argument("gen_synthetic: dim must be positive");

  CounterRng rng(seed, 0x67656E);
  std::vector<double> theta(dim);
  for (auto& t : theta) t = rng.uniform(-1.0, 1.0);

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  std::vector<bool> is_out(n, false);
  for (std::size_t k = 0; k < n_out; ++k) is_out[order[k]] = true;

  Dataset data{dim, 0.1, {}};
  data.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    DataPoint pt;
    pt.a.resize(dim);
    double clean = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      pt.a[k] = rng.uniform(-1.0, 1.0);
      clean += pt.a[k] * theta[k];
    }
    double noise;
    if (is_out[i]) {
      const double magnitude = 5.0 - 4.9 * rng.uniform();  // (0.1, 5]
      noise = rng.bernoulli(0.5) ? magnitude : -magnitude;
    } else {
      noise = rng.uniform(-0.1, 0.1);
    }
    pt.b = clean + noise;
    pt.label = is_out[i] ? Label::outlier : Label::inlier;
    data.points.push_back(std::move(pt));
  }
  return data;
}

}  // namespace maxcon
