#pragma once

#include <Eigen/Dense>

#include <memory>
#include <span>
#include <vector>

#include "gpselect/detail/numeric.hpp"
#include "gpselect/kernels.hpp"

namespace gpselect {

/// Log-determinant diversity D(S) = 1/2 log det(I + sigma_n^-2 K_{S,S})
/// tracked through its own predictive-variance factor (noise sigma_n,
/// no targets). Marginal gains come from Delta(v|S) =
/// 1/2 log(1 + sigma_n^-2 sigma^2_{v|S}); committing an item extends the
/// factor, so the running total telescopes to D(S) exactly.
class DiversityState {
 public:
  DiversityState(std::shared_ptr<const GramSource> gram, double sigma_n);
  DiversityState(const GramMatrix& gram, double sigma_n);

  int size() const { return factor_.ground_size(); }
  double sigma_n() const { return factor_.noise(); }
  const std::vector<int>& selected() const { return factor_.members(); }
  bool is_selected(int id) const { return factor_.contains(id); }

  /// Running D(S) over the committed items.
  double cumulative() const { return cumulative_; }

  /// Tracker variance sigma^2_{v|S}. Equals the GP posterior variance over
  /// the same set when the two noise scales coincide.
  double predictive_variance(int id) const;

  /// Delta_D(v|S) >= 0; throws if v is already committed.
  double marginal_gain(int id) const;

  /// Gains for a candidate list, bit-identical to marginal_gain per entry.
  void gains(std::span<const int> ids, double* out) const;

  /// Commits v: cumulative += gain evaluated before the extension.
  void commit(int id);

  const detail::IncrementalFactor& factor() const { return factor_; }

 private:
  detail::IncrementalFactor factor_;
  double cumulative_ = 0.0;
};

/// D(S) evaluated directly from the dense Gram (duplicate-free S).
double diversity_value(const GramMatrix& gram, std::span<const int> ids,
                       double sigma_n);

/// Gain from a tracker variance; shared by state queries and scoring.
double diversity_gain_from_variance(double variance, double sigma_n);

}  // namespace gpselect
