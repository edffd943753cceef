#pragma once

#include <optional>
#include <vector>

#include "gpselect/selection.hpp"

namespace gpselect {

/// Lazy selection over stale upper-confidence scores.
///
/// Per candidate the queue stores the sigma (and diversity-gain) component
/// from the round it was last recomputed. Variances are monotone
/// non-increasing as observations accrue, so a stale component bounds the
/// fresh one from above and the scores assembled from it are upper bounds.
/// Means move both ways between rounds, so they are refreshed for every
/// candidate every round (one cached-solve dot per candidate, far cheaper
/// than a variance solve); beta changes per round, so keys are reassembled
/// from the stored components rather than stored as scalars.
///
/// select() pops the head, recomputes its variance (and gain), reinserts,
/// and stops as soon as the recomputed head keeps its position; the choice
/// then equals the exhaustive scan with the same lowest-id tie-break. Past
/// `failsafe_threshold` recomputations in one round it switches to a full
/// refresh of every candidate and returns the exact argmax directly.
class LazyQueue {
 public:
  struct Entry {
    double sigma = 0.0;   // stale posterior stddev component
    double gain = 0.0;    // stale diversity marginal gain (diverse rules)
    int last_round = 0;   // round stamp of the stored components
  };

  /// Starts with every candidate fresh at round 0 (prior scores).
  LazyQueue(std::vector<int> candidates, const ScoreContext& ctx);

  int remaining_count() const { return static_cast<int>(candidates_.size()); }
  const std::vector<int>& candidates() const { return candidates_; }
  bool contains(int id) const;
  const Entry& entry(int id) const;
  long full_rebuilds() const { return full_rebuilds_; }
  long total_recomputes() const { return total_recomputes_; }

  /// Refreshes sigma/gain for every remaining candidate at `round`.
  void rebuild(const ScoreContext& ctx, int round);

  /// One lazy selection at `round`. Pick::recomputes counts variance
  /// recomputations (full refreshes count every candidate). Returns
  /// nullopt when no feasible candidate remains.
  std::optional<Pick> select(const ScoreContext& ctx, int round,
                             int failsafe_threshold);

  /// Permanently removes a candidate (after selection, or once its cost
  /// can never fit the shrinking budget again).
  void remove(int id);

 private:
  void refresh_all(const ScoreContext& ctx, int round);
  void refresh_means(const ScoreContext& ctx);
  double key_of(const ScoreContext& ctx, int id) const;

  std::vector<int> candidates_;
  std::vector<int> slot_of_;          // id -> index in candidates_, -1 if gone
  std::vector<Entry> entries_;        // indexed by id
  std::vector<double> means_;         // fresh means, indexed by id
  std::vector<double> mean_buf_;      // scratch aligned with candidates_
  long full_rebuilds_ = 0;
  long total_recomputes_ = 0;
};

}  // namespace gpselect
