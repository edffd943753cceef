#include "gpselect/detail/numeric.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gpselect::detail {

namespace {

constexpr double kVarianceClamp = -1e-10;
constexpr int kBlock = 32;  // candidates per vectorized solve block

inline std::size_t row_offset(int i) {
  return static_cast<std::size_t>(i) * (i + 1) / 2;
}

// L x = b for one right-hand side. Canonical op order: per entry a single
// accumulator over ascending j, then one division. Every variance in the
// library flows through this order (or its lane-parallel twin below).
void forward_solve_raw(const double* tri, int t, const double* b, double* x) {
  for (int i = 0; i < t; ++i) {
    const double* row = tri + row_offset(i);
    double acc = b[i];
    for (int j = 0; j < i; ++j) acc -= row[j] * x[j];
    x[i] = acc / row[i];
  }
}

// Same recurrence for kBlock right-hand sides at once; lane w reproduces
// forward_solve_raw on column w exactly.
void forward_solve_block(const double* tri, int t, const double* b, double* x) {
  for (int i = 0; i < t; ++i) {
    const double* row = tri + row_offset(i);
    double acc[kBlock];
    const double* bi = b + static_cast<std::size_t>(i) * kBlock;
    for (int w = 0; w < kBlock; ++w) acc[w] = bi[w];
    for (int j = 0; j < i; ++j) {
      const double lij = row[j];
      const double* xj = x + static_cast<std::size_t>(j) * kBlock;
      for (int w = 0; w < kBlock; ++w) acc[w] -= lij * xj[w];
    }
    const double lii = row[i];
    double* xi = x + static_cast<std::size_t>(i) * kBlock;
    for (int w = 0; w < kBlock; ++w) xi[w] = acc[w] / lii;
  }
}

double clamp_variance(double var, int id) {
  if (var >= 0.0) return var;
  if (var >= kVarianceClamp) return 0.0;
  throw std::runtime_error(
      "predictive variance " + std::to_string(var) + " for item " +
      std::to_string(id) + " is below the numerical-health clamp");
}

}  // namespace

double dot_ascending(const double* a, const double* b, int n) {
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

IncrementalFactor::IncrementalFactor(std::shared_ptr<const GramSource> gram,
                                     double noise)
    : gram_(std::move(gram)), noise_(noise) {
  if (!gram_) throw std::invalid_argument("IncrementalFactor: null gram source");
  if (!(noise_ > 0.0))
    throw std::invalid_argument("IncrementalFactor: noise must be > 0");
  n_ = gram_->size();
  member_mask_.assign(n_, 0);
}

bool IncrementalFactor::contains(int id) const {
  if (id < 0 || id >= n_) throw std::out_of_range("item id out of range");
  return member_mask_[id] != 0;
}

void IncrementalFactor::add(int id) {
  if (id < 0 || id >= n_) throw std::out_of_range("item id out of range");
  if (member_mask_[id])
    throw std::invalid_argument("item " + std::to_string(id) +
                                " already observed; items cannot be selected twice");
  const int t = count();
  std::vector<double> b(t), a(t);
  for (int i = 0; i < t; ++i) b[i] = cross(i, id);
  forward_solve_raw(tri_.data(), t, b.data(), a.data());
  double sq = 0.0;
  for (int i = 0; i < t; ++i) sq += a[i] * a[i];
  const double pivot_sq = gram_->diag(id) + noise_ * noise_ - sq;
  if (!(pivot_sq > 0.0))
    throw std::runtime_error("factor update for item " + std::to_string(id) +
                             ": non-positive pivot " + std::to_string(pivot_sq));
  tri_.insert(tri_.end(), a.begin(), a.end());
  tri_.push_back(std::sqrt(pivot_sq));
  const std::size_t old = cross_.size();
  cross_.resize(old + static_cast<std::size_t>(n_));
  gram_->row(id, cross_.data() + old);
  members_.push_back(id);
  member_mask_[id] = 1;
}

double IncrementalFactor::variance_from_solution(int id, const double* x) const {
  const int t = count();
  double sq = 0.0;
  for (int i = 0; i < t; ++i) sq += x[i] * x[i];
  return clamp_variance(gram_->diag(id) - sq, id);
}

double IncrementalFactor::predictive_variance(int id) const {
  if (id < 0 || id >= n_) throw std::out_of_range("item id out of range");
  const int t = count();
  std::vector<double> b(t), x(t);
  for (int i = 0; i < t; ++i) b[i] = cross(i, id);
  forward_solve_raw(tri_.data(), t, b.data(), x.data());
  return variance_from_solution(id, x.data());
}

void IncrementalFactor::predictive_variances(std::span<const int> ids,
                                             double* out) const {
  const int t = count();
  const int m = static_cast<int>(ids.size());
  if (t == 0) {
    for (int w = 0; w < m; ++w) out[w] = clamp_variance(gram_->diag(ids[w]), ids[w]);
    return;
  }
  std::vector<double> b(static_cast<std::size_t>(t) * kBlock);
  std::vector<double> x(static_cast<std::size_t>(t) * kBlock);
  int base = 0;
  for (; base + kBlock <= m; base += kBlock) {
    for (int i = 0; i < t; ++i) {
      const double* row = cross_.data() + static_cast<std::size_t>(i) * n_;
      double* bi = b.data() + static_cast<std::size_t>(i) * kBlock;
      for (int w = 0; w < kBlock; ++w) bi[w] = row[ids[base + w]];
    }
    forward_solve_block(tri_.data(), t, b.data(), x.data());
    for (int w = 0; w < kBlock; ++w) {
      const int id = ids[base + w];
      double sq = 0.0;
      for (int i = 0; i < t; ++i) sq += x[static_cast<std::size_t>(i) * kBlock + w] *
                                        x[static_cast<std::size_t>(i) * kBlock + w];
      out[base + w] = clamp_variance(gram_->diag(id) - sq, id);
    }
  }
  for (; base < m; ++base) out[base] = predictive_variance(ids[base]);
}

void IncrementalFactor::forward_solve(const double* b, double* x) const {
  forward_solve_raw(tri_.data(), count(), b, x);
}

void IncrementalFactor::backward_solve(const double* b, double* x) const {
  const int t = count();
  for (int i = t - 1; i >= 0; --i) {
    double acc = b[i];
    for (int j = i + 1; j < t; ++j) acc -= tri_[row_offset(j) + i] * x[j];
    x[i] = acc / tri_[row_offset(i) + i];
  }
}

Eigen::MatrixXd IncrementalFactor::reconstruct() const {
  const int t = count();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(t, t);
  for (int i = 0; i < t; ++i)
    for (int j = 0; j <= i; ++j) l(i, j) = tri_[row_offset(i) + j];
  return l * l.transpose();
}

}  // namespace gpselect::detail
