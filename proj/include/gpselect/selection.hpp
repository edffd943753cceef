#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gpselect/diversity.hpp"
#include "gpselect/gp_posterior.hpp"
#include "gpselect/item_store.hpp"
#include "gpselect/kernels.hpp"

namespace gpselect {

/// Decision rule: plain UCB, cost-benefit ratio, UCB plus diversity gain,
/// or the combined ratio.
enum class Rule { uniform, cost, diverse, diverse_cost };

std::string rule_name(Rule rule);
Rule rule_from_name(const std::string& name);

/// Confidence-width schedule. The theoretical mode follows
/// beta_t = 2R + 300 * C_K * ln(t/delta)^3 with R bounding the squared
/// RKHS norm of f; it is deliberately conservative, so a scaled mode
/// (same formula times scale in (0,1]) and a constant mode are provided.
struct BetaSchedule {
  enum class Mode { theoretical, constant, scaled };
  Mode mode = Mode::constant;
  double r = 1.0;        // theoretical/scaled
  double delta = 0.1;    // theoretical/scaled
  double value = 1.0;    // constant
  double scale = 1.0;    // scaled

  static BetaSchedule theoretical(double r, double delta);
  static BetaSchedule constant(double value);
  static BetaSchedule scaled(double r, double delta, double scale);

  void validate() const;
  bool needs_information_constant() const { return mode != Mode::constant; }
};

/// beta_t for round t >= 1 (natural log). c_k is ignored in constant mode.
double beta(int t, const BetaSchedule& schedule, double c_k);

struct PolicyConfig {
  Rule rule = Rule::uniform;
  double lambda = 0.0;           // diverse rules, in [0,1]
  double sigma_n = 1.0;          // diversity noise, > 0 for diverse rules
  BetaSchedule beta_schedule;
  double budget = 1.0;           // rounds (uniform rules) or cost budget
  double noise = 0.1;            // GP noise scale sigma_hat, > 0
  bool lazy = false;
  int failsafe_threshold = 0;    // lazy recomputes per round; 0 = 5% of n
  int threads = 1;               // candidate scoring parallelism
  int dense_gram_threshold = 2048;  // below: materialize the Gram

  void validate(const ItemSet& items) const;
  int resolved_failsafe(int n) const;
};

struct RoundRecord {
  int round = 0;         // 1-based
  int item = -1;
  double score = 0.0;    // selection score of the chosen item
  double observed = 0.0; // noisy feedback y_t
  double cum_cost = 0.0;
  double cum_value = 0.0;  // running sum of true values
  long recomputes = 0;     // variance recomputations this round
  long wall_ns = 0;
};

struct SelectionTrace {
  std::string policy;
  bool lazy = false;
  std::vector<RoundRecord> rounds;
  std::vector<int> selected;
  double budget = 0.0;
  double leftover_budget = 0.0;
  double total_cost = 0.0;
  double total_value = 0.0;
  long total_recomputes = 0;
  long total_wall_ns = 0;
  long lazy_full_rebuilds = 0;
};

struct Pick {
  int id = -1;
  double score = 0.0;
  long recomputes = 0;
};

/// Shared scoring context for one selection round: fresh means always,
/// sigma/gain either fresh (naive scan) or stale-refreshed (lazy queue).
struct ScoreContext {
  Rule rule = Rule::uniform;
  const Posterior* post = nullptr;
  const DiversityState* div = nullptr;       // diverse rules
  const Eigen::VectorXd* costs = nullptr;    // cost rules
  double lambda = 0.0;
  double sqrt_beta = 0.0;
  double budget_left = std::numeric_limits<double>::infinity();
  int threads = 1;

  bool uses_diversity() const { return rule == Rule::diverse || rule == Rule::diverse_cost; }
  bool uses_cost() const { return rule == Rule::cost || rule == Rule::diverse_cost; }
  bool feasible(int id) const {
    return !uses_cost() || (*costs)(id) <= budget_left;
  }
  /// One fixed expression per rule; monotone in sigma and gain so stale
  /// components keep scores as upper bounds.
  double assemble(int id, double mu, double sigma, double gain) const;
};

/// Exhaustive scans of the decision rules over `remaining` (each computes
/// fresh variances for every candidate; ties break to the lowest id).
/// An empty return signals exhaustion: no candidate, or none feasible.
std::optional<Pick> select_next_uniform(const Posterior& post,
                                        std::span<const int> remaining,
                                        double beta_t, int threads = 1);
std::optional<Pick> select_next_cost(const Posterior& post,
                                     std::span<const int> remaining,
                                     double beta_t, const Eigen::VectorXd& costs,
                                     double budget_left, int threads = 1);
std::optional<Pick> select_next_diverse(const Posterior& post,
                                        const DiversityState& div,
                                        std::span<const int> remaining,
                                        double beta_t, double lambda,
                                        int threads = 1);
std::optional<Pick> select_next_diverse_cost(const Posterior& post,
                                             const DiversityState& div,
                                             std::span<const int> remaining,
                                             double beta_t, double lambda,
                                             const Eigen::VectorXd& costs,
                                             double budget_left, int threads = 1);

/// Generic form behind the four entry points above.
std::optional<Pick> scan_select(const ScoreContext& ctx,
                                std::span<const int> remaining);

/// Full GP-Select loop: model update, rule-based selection (naive or lazy
/// per config), feedback, one trace row per round. Deterministic given the
/// oracle seed.
SelectionTrace run_gp_select(const ItemSet& items, FeedbackOracle& oracle,
                             const KernelSpec& kernel,
                             const PolicyConfig& config);

enum class Baseline { random, pure_explore, pure_exploit, epsilon_first };

std::string baseline_name(Baseline b);

/// Reference policies: uniform random without replacement, most-uncertain
/// first, highest-posterior-mean first, and random-then-exploit. budget is
/// a round count; model_noise is the GP scale used by the informed ones.
SelectionTrace run_baseline(const ItemSet& items, FeedbackOracle& oracle,
                            const KernelSpec& kernel, Baseline which,
                            double budget, double model_noise,
                            double epsilon_fraction = 0.2,
                            std::uint64_t policy_seed = 1,
                            int threads = 1);

}  // namespace gpselect
