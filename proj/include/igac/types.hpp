#pragma once

#include <Eigen/Dense>

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace igac {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// A point, sample, or window lies outside its valid region.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters, malformed configuration, or a broken call contract.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical procedure failed: non-convergence, singular or indefinite
/// metric, step-size underflow, exhausted budget.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Dense rank-3 array of extent n in every index.
class Tensor3 {
 public:
  Tensor3() : n_(0) {}
  explicit Tensor3(int n) : n_(n), data_(static_cast<size_t>(n) * n * n, 0.0) {}

  double& operator()(int i, int j, int k) {
    return data_[(static_cast<size_t>(i) * n_ + j) * n_ + k];
  }
  double operator()(int i, int j, int k) const {
    return data_[(static_cast<size_t>(i) * n_ + j) * n_ + k];
  }
  int extent() const { return n_; }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  int n_;
  std::vector<double> data_;
};

/// Dense rank-4 array of extent n in every index.
class Tensor4 {
 public:
  Tensor4() : n_(0) {}
  explicit Tensor4(int n)
      : n_(n), data_(static_cast<size_t>(n) * n * n * n, 0.0) {}

  double& operator()(int i, int j, int k, int l) {
    return data_[((static_cast<size_t>(i) * n_ + j) * n_ + k) * n_ + l];
  }
  double operator()(int i, int j, int k, int l) const {
    return data_[((static_cast<size_t>(i) * n_ + j) * n_ + k) * n_ + l];
  }
  int extent() const { return n_; }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  int n_;
  std::vector<double> data_;
};

/// Open interval (lo, hi); either bound may be infinite.
struct Interval {
  double lo = -kInf;
  double hi = kInf;

  bool contains(double x, double margin = 0.0) const {
    return x > lo + margin && x < hi - margin;
  }
  double width() const { return hi - lo; }
};

/// Per-coordinate open box; the chart domain of a manifold.
class DomainBox {
 public:
  DomainBox() = default;
  explicit DomainBox(std::vector<Interval> axes) : axes_(std::move(axes)) {
    for (const auto& a : axes_) {
      if (!(a.lo < a.hi))
        throw ValidationError("DomainBox: lower bound must be below upper");
    }
  }

  static DomainBox unbounded(int n) {
    return DomainBox(std::vector<Interval>(static_cast<size_t>(n), Interval{}));
  }

  int dim() const { return static_cast<int>(axes_.size()); }
  const Interval& axis(int k) const { return axes_[static_cast<size_t>(k)]; }

  bool contains(const Vec& x, double margin = 0.0) const {
    if (x.size() != dim()) return false;
    for (int k = 0; k < dim(); ++k)
      if (!axes_[static_cast<size_t>(k)].contains(x[k], margin)) return false;
    return true;
  }

  /// Smallest distance from x to any finite boundary face (infinite if the
  /// box is unbounded in every direction). Negative when x is outside.
  double distance_to_boundary(const Vec& x) const {
    double d = kInf;
    for (int k = 0; k < dim(); ++k) {
      const Interval& a = axes_[static_cast<size_t>(k)];
      if (a.lo > -kInf) d = std::min(d, x[k] - a.lo);
      if (a.hi < kInf) d = std::min(d, a.hi - x[k]);
    }
    return d;
  }

 private:
  std::vector<Interval> axes_;
};

}  // namespace igac
