#include "gpselect/kernels.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

#include "gpselect/item_store.hpp"

namespace gpselect {

KernelSpec KernelSpec::rbf(double bandwidth) {
  KernelSpec spec;
  spec.type = KernelType::rbf;
  spec.bandwidth = bandwidth;
  spec.validate();
  return spec;
}

KernelSpec KernelSpec::linear() {
  KernelSpec spec;
  spec.type = KernelType::linear;
  return spec;
}

KernelSpec KernelSpec::kronecker_linear(int d_user, int d_item) {
  KernelSpec spec;
  spec.type = KernelType::kronecker_linear;
  spec.d_user = d_user;
  spec.d_item = d_item;
  spec.validate();
  return spec;
}

void KernelSpec::validate() const {
  switch (type) {
    case KernelType::rbf:
      if (!(bandwidth > 0.0))
        throw std::invalid_argument("rbf kernel: bandwidth must be > 0");
      break;
    case KernelType::linear:
      break;
    case KernelType::kronecker_linear:
      if (d_user < 1 || d_item < 1)
        throw std::invalid_argument(
            "kronecker_linear kernel: d_user and d_item must be >= 1");
      break;
  }
}

void KernelSpec::check_dimension(int d) const {
  if (type == KernelType::kronecker_linear && d != d_user * d_item)
    throw std::invalid_argument(
        "kronecker_linear kernel: feature dimension " + std::to_string(d) +
        " != d_user*d_item = " + std::to_string(d_user * d_item));
}

std::string KernelSpec::name() const {
  switch (type) {
    case KernelType::rbf:
      return "rbf";
    case KernelType::linear:
      return "linear";
    case KernelType::kronecker_linear:
      return "kronecker_linear";
  }
  return "?";
}

namespace {

// Fixed ascending-index loops so an entry's value does not depend on how a
// row or matrix around it was computed.
double sq_dist(const double* a, const double* b, int d) {
  double s = 0.0;
  for (int k = 0; k < d; ++k) {
    const double diff = a[k] - b[k];
    s += diff * diff;
  }
  return s;
}

double dot_raw(const double* a, const double* b, int d) {
  double s = 0.0;
  for (int k = 0; k < d; ++k) s += a[k] * b[k];
  return s;
}

double eval_raw(const KernelSpec& spec, const double* a, const double* b, int d) {
  switch (spec.type) {
    case KernelType::rbf:
      return std::exp(-sq_dist(a, b, d) / (2.0 * spec.bandwidth * spec.bandwidth));
    case KernelType::linear:
    case KernelType::kronecker_linear:
      return dot_raw(a, b, d);
  }
  return 0.0;
}

}  // namespace

double kernel_eval(const KernelSpec& spec, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& x_prime) {
  spec.validate();
  if (x.size() != x_prime.size())
    throw std::invalid_argument("kernel_eval: feature dimensions differ (" +
                                std::to_string(x.size()) + " vs " +
                                std::to_string(x_prime.size()) + ")");
  spec.check_dimension(static_cast<int>(x.size()));
  return eval_raw(spec, x.data(), x_prime.data(), static_cast<int>(x.size()));
}

GramMatrix::GramMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols())
    throw std::invalid_argument("GramMatrix: matrix must be square");
}

void GramMatrix::validate() const {
  const int n = size();
  if (n == 0) return;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(entries_(i, j) - entries_(j, i)) > 1e-12)
        throw std::invalid_argument("GramMatrix: not symmetric at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(entries_,
                                                     Eigen::EigenvaluesOnly);
  const double max_eig = eig.eigenvalues().maxCoeff();
  const double min_eig = eig.eigenvalues().minCoeff();
  if (min_eig < -1e-8 * std::max(max_eig, 1e-300))
    throw std::invalid_argument("GramMatrix: not positive semi-definite (min eig " +
                                std::to_string(min_eig) + ")");
}

Eigen::MatrixXd GramMatrix::submatrix(std::span<const int> ids) const {
  const int m = static_cast<int>(ids.size());
  Eigen::MatrixXd sub(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) sub(i, j) = entries_(ids[i], ids[j]);
  return sub;
}

GramMatrix gram(const KernelSpec& spec, const ItemSet& items) {
  spec.validate();
  spec.check_dimension(items.dim());
  const int n = items.n();
  const int d = items.dim();
  const double* f = items.features().data();  // row-major (see ItemSet)
  Eigen::MatrixXd k(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double v = eval_raw(spec, f + static_cast<std::ptrdiff_t>(i) * d,
                                f + static_cast<std::ptrdiff_t>(j) * d, d);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return GramMatrix(std::move(k));
}

double information_constant(const Eigen::MatrixXd& k, double noise) {
  if (!(noise > 0.0))
    throw std::invalid_argument("information_constant: noise must be > 0");
  const int n = static_cast<int>(k.rows());
  if (n == 0) return 0.0;
  Eigen::MatrixXd shifted =
      Eigen::MatrixXd::Identity(n, n) + k / (noise * noise);
  Eigen::LLT<Eigen::MatrixXd> llt(shifted);
  if (llt.info() == Eigen::Success) {
    double log_det = 0.0;
    for (int i = 0; i < n; ++i) log_det += std::log(llt.matrixLLT()(i, i));
    return log_det;  // 1/2 * 2 * sum log diag(L)
  }
  // I + K/noise^2 is >= I, so this only happens on a damaged input; the
  // eigenvalue route still gives the answer when it is merely borderline.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(shifted,
                                                     Eigen::EigenvaluesOnly);
  double log_det = 0.0;
  for (int i = 0; i < n; ++i) {
    const double ev = eig.eigenvalues()(i);
    if (!(ev > 0.0))
      throw std::runtime_error("information_constant: non-positive eigenvalue");
    log_det += std::log(ev);
  }
  return 0.5 * log_det;
}

double information_constant(const GramMatrix& gram, double noise) {
  return information_constant(gram.entries(), noise);
}

void DenseGramSource::row(int i, double* out) const {
  const int n = gram_.size();
  const Eigen::MatrixXd& m = gram_.entries();
  for (int j = 0; j < n; ++j) out[j] = m(i, j);
}

KernelGramSource::KernelGramSource(KernelSpec spec, const ItemSet& items)
    : spec_(spec), features_(items.features()) {
  spec_.validate();
  spec_.check_dimension(items.dim());
}

double KernelGramSource::diag(int i) const {
  const int d = static_cast<int>(features_.cols());
  const double* fi = features_.data() + static_cast<std::ptrdiff_t>(i) * d;
  return eval_raw(spec_, fi, fi, d);
}

double KernelGramSource::entry(int i, int j) const {
  const int d = static_cast<int>(features_.cols());
  const double* f = features_.data();
  return eval_raw(spec_, f + static_cast<std::ptrdiff_t>(i) * d,
                  f + static_cast<std::ptrdiff_t>(j) * d, d);
}

void KernelGramSource::row(int i, double* out) const {
  const int n = static_cast<int>(features_.rows());
  const int d = static_cast<int>(features_.cols());
  const double* f = features_.data();
  const double* fi = f + static_cast<std::ptrdiff_t>(i) * d;
  for (int j = 0; j < n; ++j)
    out[j] = eval_raw(spec_, fi, f + static_cast<std::ptrdiff_t>(j) * d, d);
}

std::shared_ptr<const GramSource> make_gram_source(const GramMatrix& gram) {
  return std::make_shared<DenseGramSource>(gram);
}

std::shared_ptr<const GramSource> make_gram_source(const KernelSpec& spec,
                                                   const ItemSet& items) {
  return std::make_shared<KernelGramSource>(spec, items);
}

}  // namespace gpselect
