#pragma once

#include <Eigen/Dense>

#include <memory>
#include <span>
#include <vector>

#include "gpselect/detail/numeric.hpp"
#include "gpselect/kernels.hpp"

namespace gpselect {

/// Incremental Gaussian-process posterior over item values. Holds the
/// observed set S_t, targets y_t and a growing Cholesky factor of
/// (K_t + noise^2 I); mean and variance queries are exact solves against
/// that factor, never a refactorization.
///
/// Single writer: update() is exclusive; mean/variance and the batch
/// queries are const and may run concurrently between updates.
class Posterior {
 public:
  Posterior(std::shared_ptr<const GramSource> gram, double noise);
  /// Convenience: copies the dense Gram behind a shared source.
  Posterior(const GramMatrix& gram, double noise);

  int size() const { return factor_.ground_size(); }
  int observed_count() const { return factor_.count(); }
  const std::vector<int>& observed() const { return factor_.members(); }
  bool is_observed(int id) const { return factor_.contains(id); }
  double noise() const { return factor_.noise(); }
  const Eigen::VectorXd& targets() const { return targets_; }

  /// Adds one observation (id, y). Throws on duplicate id: the selection
  /// setting never revisits an item.
  void update(int id, double y);

  /// mu_t(v) = k_t(v)^T (K_t + noise^2 I)^-1 y_t. Zero before any update.
  double mean(int id) const;

  /// sigma_t^2(v); target-independent, within [0, kappa(v,v)].
  double variance(int id) const;
  double stddev(int id) const;

  /// Means for a list of candidates, bit-identical to mean() per entry.
  void means(std::span<const int> ids, double* out) const;
  /// Variances for a list of candidates, bit-identical to variance().
  void variances(std::span<const int> ids, double* out) const;

  const detail::IncrementalFactor& factor() const { return factor_; }

 private:
  detail::IncrementalFactor factor_;
  Eigen::VectorXd targets_;
  Eigen::VectorXd alpha_;  // (K_t + noise^2 I)^-1 y_t, refreshed per update
};

}  // namespace gpselect
