#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gpselect/kernels.hpp"
#include "gpselect/rng.hpp"

namespace gpselect {

struct Item {
  int id = 0;
  Eigen::VectorXd features;
  double cost = 1.0;
};

/// Ground set: n items with shared feature dimension d and positive costs.
/// Immutable after construction.
class ItemSet {
 public:
  /// features: n x d (row per item); costs: length n, all > 0.
  ItemSet(FeatureMatrix features, Eigen::VectorXd costs,
          double budget_default = 0.0);

  int n() const { return static_cast<int>(features_.rows()); }
  int dim() const { return static_cast<int>(features_.cols()); }
  const FeatureMatrix& features() const { return features_; }
  Eigen::VectorXd feature(int id) const;
  const Eigen::VectorXd& costs() const { return costs_; }
  double cost(int id) const;
  double budget_default() const { return budget_default_; }
  bool uniform_costs() const;
  Item item(int id) const;

 private:
  FeatureMatrix features_;
  Eigen::VectorXd costs_;
  double budget_default_ = 0.0;
};

/// Hidden utility f plus the noisy feedback channel. Queries draw from a
/// single RNG stream so a run is reproducible; |y - f(id)| <= noise_bound
/// holds for every observation (truncated sampler).
class FeedbackOracle {
 public:
  FeedbackOracle(Eigen::VectorXd true_values, double noise_bound,
                 std::uint64_t rng_seed);

  int n() const { return static_cast<int>(true_values_.size()); }
  double noise_bound() const { return noise_bound_; }
  const Eigen::VectorXd& true_values() const { return true_values_; }
  double true_value(int id) const;

  /// f(id) + eps with fresh truncated noise.
  double query(int id);
  long query_count() const { return query_count_; }

 private:
  Eigen::VectorXd true_values_;
  double noise_bound_ = 0.0;
  Rng rng_;
  long query_count_ = 0;
};

enum class FileFormat { csv, json };

struct LoadedItemSet {
  ItemSet items;
  std::optional<FeedbackOracle> oracle;  // present iff a value column was
};

/// Reads `id,f1..fd,cost[,value]` rows (CSV header or JSON object keys).
/// Ids are re-indexed contiguously in file order. Malformed rows report the
/// offending row number; non-positive costs and inconsistent dimensions are
/// validation errors. oracle_seed seeds the oracle when values are present.
LoadedItemSet load_itemset(const std::string& path, FileFormat format,
                           std::uint64_t oracle_seed = 0,
                           double noise_bound = 0.0);

/// Inverse of load_itemset: values round-trip exactly (shortest decimal form).
void save_itemset(const ItemSet& items, const Eigen::VectorXd* true_values,
                  const std::string& path, FileFormat format);

struct SynthResult {
  ItemSet items;
  FeedbackOracle oracle;
};

/// Synthetic instance: features uniform in [0,1]^d, true values one
/// multivariate normal draw with covariance K + jitter*I shifted to be
/// non-negative, costs uniform in [c_min, c_max]. Bit-reproducible per seed.
SynthResult synth_gp_itemset(int n, int d, const KernelSpec& kernel,
                             double noise_bound, double cost_min,
                             double cost_max, std::uint64_t seed);

/// One draw from N(0, K + jitter*I). Jitter starts at 1e-10*trace(K)/n and
/// is multiplied by 10 up to 3 retries before an internal error. Exposed so
/// the sampling distribution can be checked against K directly.
Eigen::VectorXd sample_mvn_psd(const Eigen::MatrixXd& k, Rng& rng);

}  // namespace gpselect
