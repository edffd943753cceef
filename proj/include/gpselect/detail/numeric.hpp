#pragma once

#include <Eigen/Dense>

#include <memory>
#include <span>
#include <vector>

#include "gpselect/kernels.hpp"

namespace gpselect::detail {

// Determinism contract for everything in this header: each per-item result
// is produced by one fixed sequence of IEEE operations (single accumulator,
// ascending index, explicit division), independent of batch size, batching,
// or thread count. The lazy scheduler's staleness argument needs variance
// results to be monotone across factor growth in floating point, which this
// ordering provides: prefix partial sums never decrease when nonnegative
// terms are appended. Compiled with -ffp-contract=off so scalar and
// vectorized loops round identically.

/// sum_i a[i] * b[i], ascending, single accumulator.
double dot_ascending(const double* a, const double* b, int n);

/// Grows the lower-triangular factor of K_{S,S} + noise^2 I one member at a
/// time and serves predictive variances against it. Storage is packed rows
/// (row i holds i+1 entries), so earlier rows are frozen as the factor grows.
class IncrementalFactor {
 public:
  IncrementalFactor(std::shared_ptr<const GramSource> gram, double noise);

  int ground_size() const { return n_; }
  int count() const { return static_cast<int>(members_.size()); }
  const std::vector<int>& members() const { return members_; }
  bool contains(int id) const;
  double noise() const { return noise_; }
  const GramSource& gram() const { return *gram_; }

  /// Appends one member: one forward solve plus a scalar square root.
  /// Throws std::invalid_argument on duplicates and std::runtime_error if
  /// the pivot is not positive.
  void add(int id);

  /// kappa(members[row], item), served from the cached cross rows.
  double cross(int row, int item) const { return cross_[static_cast<std::size_t>(row) * n_ + item]; }

  /// Predictive variance sigma^2_{v|S} = kappa(v,v) - ||L^-1 k_S(v)||^2,
  /// clamped to 0 within -1e-10; more negative values throw (factor health).
  double predictive_variance(int id) const;

  /// Batch form over an id list; bit-identical to predictive_variance per id.
  void predictive_variances(std::span<const int> ids, double* out) const;

  /// L x = b over the current t members (b, x length t).
  void forward_solve(const double* b, double* x) const;
  /// L^T x = b.
  void backward_solve(const double* b, double* x) const;

  /// Reconstructs K_{S,S} + noise^2 I from the factor (test support).
  Eigen::MatrixXd reconstruct() const;

 private:
  double variance_from_solution(int id, const double* x) const;

  std::shared_ptr<const GramSource> gram_;
  int n_ = 0;
  double noise_ = 0.0;
  std::vector<int> members_;
  std::vector<char> member_mask_;
  std::vector<double> tri_;    // packed rows of L
  std::vector<double> cross_;  // row r = kappa(members[r], .) over all items
};

/// Greatest (value, then lowest index) pair merge for deterministic argmax
/// reductions.
struct ArgmaxByScore {
  double score = -std::numeric_limits<double>::infinity();
  int id = -1;
  bool update(double s, int i) {
    if (s > score || (s == score && (id < 0 || i < id))) {
      score = s;
      id = i;
      return true;
    }
    return false;
  }
};

}  // namespace gpselect::detail
