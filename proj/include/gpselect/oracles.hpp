#pragma once

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gpselect/item_store.hpp"
#include "gpselect/kernels.hpp"
#include "gpselect/selection.hpp"

namespace gpselect {

struct SubsetValue {
  std::vector<int> subset;
  double value = 0.0;
};

/// 0/1 knapsack on a cost grid: costs are rounded up to multiples of
/// `resolution`, so the result is a lower bound on the true optimum and is
/// exact for integer costs at resolution 1. Values must be non-negative.
SubsetValue knapsack_dp(const Eigen::VectorXd& values,
                        const Eigen::VectorXd& costs, double budget,
                        double resolution);

/// True optimum by subset enumeration; refuses n > 20. Ties resolve to the
/// lexicographically smallest subset mask.
SubsetValue exhaustive_opt(const Eigen::VectorXd& values,
                           const Eigen::VectorXd& costs, double budget);

/// Greedy sequence on the known combined objective
/// F(S) = (1-lambda) sum f + lambda D(S): highest marginal gain per round,
/// gain-per-cost when costs are non-uniform. Candidates are limited to
/// items whose individual cost fits the budget; the sequence stops at the
/// last prefix whose total cost does.
struct GreedyResult {
  std::vector<int> sequence;     // greedy order, feasible prefix
  double objective = 0.0;        // F of the feasible prefix
  double value_sum = 0.0;        // sum of f over the prefix
  double diversity = 0.0;        // D(S) over the prefix
};
GreedyResult greedy_oracle(const ItemSet& items,
                           const Eigen::VectorXd& true_values,
                           const GramMatrix& gram, double lambda,
                           double sigma_n, double budget);

/// Max information gain gamma_B = max_{|S|<=B} 1/2 log det(I + noise^-2
/// K_{S,S}); exact by enumeration for n <= 15, otherwise a greedy lower
/// bound paired with the C_K upper bound.
struct InfoGainEstimate {
  double value = 0.0;   // exact, or the greedy lower bound
  double lower = 0.0;
  double upper = 0.0;   // C_K
  bool exact = false;
};
InfoGainEstimate max_info_gain(const GramMatrix& gram, double noise, int budget);

enum class RegretMode { value_regret, greedy_relative };

struct RegretPoint {
  double budget = 0.0;
  double achieved = 0.0;   // F(S_B) of the trace prefix within budget
  double reference = 0.0;  // oracle value for this budget
  double regret = 0.0;     // reference - achieved
  double avg_regret = 0.0; // regret / budget
};

struct RegretReport {
  RegretMode mode = RegretMode::value_regret;
  std::vector<RegretPoint> points;
};

struct RegretInputs {
  const ItemSet* items = nullptr;
  const Eigen::VectorXd* true_values = nullptr;
  const GramMatrix* gram = nullptr;  // required for greedy_relative with lambda > 0
  double lambda = 0.0;
  double sigma_n = 1.0;
  std::vector<double> checkpoints;
  double dp_resolution = 0.01;   // knapsack grid for non-uniform value mode
  int exhaustive_limit = 20;     // greedy_relative: exact (1-1/e) reference up to here
};

/// Regret at each checkpoint. value mode: reference is the knapsack
/// optimum of sum f (top-k under uniform costs). greedy_relative mode:
/// reference is (1-1/e) * F(S*_B) while exhaustive search is feasible and
/// the full-knowledge greedy value beyond that.
RegretReport regret_curve(const SelectionTrace& trace, RegretMode mode,
                          const RegretInputs& inputs);

/// CSV with columns B,F_S,oracle,R_B,avg_regret.
std::string regret_report_csv(const RegretReport& report);

}  // namespace gpselect
