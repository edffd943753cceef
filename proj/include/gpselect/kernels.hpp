#pragma once

#include <Eigen/Dense>

#include <memory>
#include <span>
#include <string>

namespace gpselect {

class ItemSet;

/// Feature storage is row-major: item i's vector is contiguous.
using FeatureMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Kernel family. `kronecker_linear` is the linear kernel on vectorized
/// outer-product features u (x) a; it validates that the feature dimension
/// factors as d_user * d_item and evaluates to (u.u')(a.a').
enum class KernelType { rbf, linear, kronecker_linear };

struct KernelSpec {
  KernelType type = KernelType::rbf;
  double bandwidth = 1.0;  // rbf only, > 0
  int d_user = 0;          // kronecker_linear only
  int d_item = 0;          // kronecker_linear only

  static KernelSpec rbf(double bandwidth);
  static KernelSpec linear();
  static KernelSpec kronecker_linear(int d_user, int d_item);

  void validate() const;
  /// Throws if a feature vector of dimension d is incompatible with the spec.
  void check_dimension(int d) const;
  std::string name() const;
};

/// kappa(x, x'). Symmetric; rbf output lies in (0, 1].
double kernel_eval(const KernelSpec& spec, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& x_prime);

/// Dense n x n Gram matrix K with kappa evaluated over all item pairs.
class GramMatrix {
 public:
  GramMatrix() = default;
  explicit GramMatrix(Eigen::MatrixXd entries);

  int size() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }

  /// Checks symmetry (1e-12) and near-positive-semidefiniteness
  /// (eigenvalues >= -1e-8 * lambda_max). Throws std::invalid_argument.
  void validate() const;

  /// Principal submatrix K_{S,S} in the order given.
  Eigen::MatrixXd submatrix(std::span<const int> ids) const;

 private:
  Eigen::MatrixXd entries_;
};

/// Builds K over an item set: entries[i][j] = kappa(features_i, features_j).
GramMatrix gram(const KernelSpec& spec, const ItemSet& items);

/// C_K = 1/2 * log det(I + noise^-2 K), natural log, via Cholesky of the
/// (always >= I) shifted matrix; falls back to an eigenvalue sum if the
/// factorization fails. noise must be > 0. Returns 0 for an empty matrix.
double information_constant(const GramMatrix& gram, double noise);

/// Same quantity for a principal submatrix without materializing it twice.
double information_constant(const Eigen::MatrixXd& k, double noise);

/// Row access to the Gram matrix, either backed by a dense GramMatrix or
/// evaluated on the fly from features. Selection at large n uses the lazy
/// form so no n^2 storage is required.
class GramSource {
 public:
  virtual ~GramSource() = default;
  virtual int size() const = 0;
  virtual double diag(int i) const = 0;
  virtual double entry(int i, int j) const = 0;
  /// Writes kappa(v_i, .) over all items into out[0..n).
  virtual void row(int i, double* out) const = 0;
};

class DenseGramSource final : public GramSource {
 public:
  explicit DenseGramSource(GramMatrix gram) : gram_(std::move(gram)) {}
  int size() const override { return gram_.size(); }
  double diag(int i) const override { return gram_(i, i); }
  double entry(int i, int j) const override { return gram_(i, j); }
  void row(int i, double* out) const override;
  const GramMatrix& gram() const { return gram_; }

 private:
  GramMatrix gram_;
};

/// Evaluates kernel rows on demand from a copy of the feature matrix.
class KernelGramSource final : public GramSource {
 public:
  KernelGramSource(KernelSpec spec, const ItemSet& items);
  int size() const override { return static_cast<int>(features_.rows()); }
  double diag(int i) const override;
  double entry(int i, int j) const override;
  void row(int i, double* out) const override;

 private:
  KernelSpec spec_;
  FeatureMatrix features_;  // n x d, row per item
};

std::shared_ptr<const GramSource> make_gram_source(const GramMatrix& gram);
std::shared_ptr<const GramSource> make_gram_source(const KernelSpec& spec,
                                                   const ItemSet& items);

}  // namespace gpselect
