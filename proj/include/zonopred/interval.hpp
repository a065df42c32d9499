// Copyright 2026 The zonopred Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ZONOPRED_INTERVAL_HPP_
#define ZONOPRED_INTERVAL_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace zonopred
{

/// Closed real interval [lo, hi].
template <typename Scalar>
class Interval
{
public:
  Interval() : Interval(Scalar(0)) {}
  explicit Interval(Scalar value) : Interval(value, value) {}
  Interval(Scalar lo, Scalar hi) : lo_(lo), hi_(hi)
  {
    if (!(lo <= hi)) {
      throw std::invalid_argument("Interval: lower bound exceeds upper bound");
    }
  }

  Scalar lo() const { return lo_; }
  Scalar hi() const { return hi_; }
  Scalar mid() const { return (lo_ + hi_) / Scalar(2); }
  Scalar rad() const { return (hi_ - lo_) / Scalar(2); }
  Scalar width() const { return hi_ - lo_; }
  bool contains(Scalar x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Interval & other) const { return lo_ <= other.lo_ && other.hi_ <= hi_; }
  bool is_degenerate() const { return lo_ == hi_; }

  friend Interval operator+(const Interval & a, const Interval & b)
  {
    return Interval(a.lo_ + b.lo_, a.hi_ + b.hi_);
  }
  friend Interval operator-(const Interval & a, const Interval & b)
  {
    return Interval(a.lo_ - b.hi_, a.hi_ - b.lo_);
  }
  friend Interval operator-(const Interval & a) { return Interval(-a.hi_, -a.lo_); }

  friend Interval operator*(const Interval & a, const Interval & b)
  {
    const Scalar p1 = a.lo_ * b.lo_;
    const Scalar p2 = a.lo_ * b.hi_;
    const Scalar p3 = a.hi_ * b.lo_;
    const Scalar p4 = a.hi_ * b.hi_;
    return Interval(std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4}));
  }
  friend Interval operator*(Scalar s, const Interval & a)
  {
    return s >= Scalar(0) ? Interval(s * a.lo_, s * a.hi_) : Interval(s * a.hi_, s * a.lo_);
  }
  friend Interval operator*(const Interval & a, Scalar s) { return s * a; }

  friend bool operator==(const Interval & a, const Interval & b)
  {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

  friend std::ostream & operator<<(std::ostream & os, const Interval & a)
  {
    return os << '[' << a.lo_ << ", " << a.hi_ << ']';
  }

private:
  Scalar lo_;
  Scalar hi_;
};

using Intervald = Interval<double>;

namespace detail
{
// True when some x0 + 2*pi*k lies in [lo, hi].
template <typename Scalar>
bool hits_periodic_point(Scalar lo, Scalar hi, Scalar x0)
{
  const Scalar period = Scalar(2) * std::numbers::pi_v<Scalar>;
  return std::ceil((lo - x0) / period) <= std::floor((hi - x0) / period);
}
}  // namespace detail

/// Exact ranges of sin and cos over an interval of angles (radians).
template <typename Scalar>
std::pair<Interval<Scalar>, Interval<Scalar>> interval_sin_cos(const Interval<Scalar> & angle)
{
  using std::cos;
  using std::sin;
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar lo = angle.lo();
  const Scalar hi = angle.hi();
  if (angle.width() >= Scalar(2) * pi) {
    return {Interval<Scalar>(-1, 1), Interval<Scalar>(-1, 1)};
  }

  Scalar sin_lo = std::min(sin(lo), sin(hi));
  Scalar sin_hi = std::max(sin(lo), sin(hi));
  Scalar cos_lo = std::min(cos(lo), cos(hi));
  Scalar cos_hi = std::max(cos(lo), cos(hi));
  if (detail::hits_periodic_point(lo, hi, pi / 2)) sin_hi = 1;
  if (detail::hits_periodic_point(lo, hi, -pi / 2)) sin_lo = -1;
  if (detail::hits_periodic_point(lo, hi, Scalar(0))) cos_hi = 1;
  if (detail::hits_periodic_point(lo, hi, pi)) cos_lo = -1;
  return {Interval<Scalar>(sin_lo, sin_hi), Interval<Scalar>(cos_lo, cos_hi)};
}

/// Matrix of intervals, stored as a pair of bound matrices (infimum, supremum).
template <typename Scalar>
class IntervalMatrix
{
public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Index = Eigen::Index;

  IntervalMatrix() = default;

  /// Degenerate (zero-radius) interval matrix rows x cols, filled with zeros.
  IntervalMatrix(Index rows, Index cols)
  : lower_(Matrix::Zero(rows, cols)), upper_(Matrix::Zero(rows, cols))
  {
  }

  IntervalMatrix(Matrix lower, Matrix upper) : lower_(std::move(lower)), upper_(std::move(upper))
  {
    if (lower_.rows() != upper_.rows() || lower_.cols() != upper_.cols()) {
      throw std::invalid_argument("IntervalMatrix: bound matrices differ in shape");
    }
    if (!(lower_.array() <= upper_.array()).all()) {
      throw std::invalid_argument("IntervalMatrix: lower bound exceeds upper bound");
    }
  }

  /// The singleton family {M}.
  static IntervalMatrix point(const Matrix & m) { return IntervalMatrix(m, m); }

  Index rows() const { return lower_.rows(); }
  Index cols() const { return lower_.cols(); }

  Interval<Scalar> operator()(Index i, Index j) const
  {
    return Interval<Scalar>(lower_(i, j), upper_(i, j));
  }

  void set(Index i, Index j, const Interval<Scalar> & value)
  {
    lower_(i, j) = value.lo();
    upper_(i, j) = value.hi();
  }

  const Matrix & lower() const { return lower_; }
  const Matrix & upper() const { return upper_; }
  Matrix mid() const { return (lower_ + upper_) / Scalar(2); }
  Matrix rad() const { return (upper_ - lower_) / Scalar(2); }

  /// True when m lies entrywise inside the family, with slack tol.
  bool contains(const Matrix & m, Scalar tol = Scalar(0)) const
  {
    return m.rows() == rows() && m.cols() == cols() &&
           (m.array() >= lower_.array() - tol).all() && (m.array() <= upper_.array() + tol).all();
  }

private:
  Matrix lower_;
  Matrix upper_;
};

using IntervalMatrixd = IntervalMatrix<double>;

/// Interval product A * G of an interval matrix with a real matrix.
template <typename Scalar, typename Derived>
IntervalMatrix<Scalar> interval_matrix_map(
  const IntervalMatrix<Scalar> & a, const Eigen::MatrixBase<Derived> & g)
{
  if (a.cols() != g.rows()) {
    throw std::invalid_argument("interval_matrix_map: dimension mismatch");
  }
  using Matrix = typename IntervalMatrix<Scalar>::Matrix;
  const Matrix pos = g.cwiseMax(Scalar(0));
  const Matrix neg = g.cwiseMin(Scalar(0));
  Matrix lower = a.lower() * pos + a.upper() * neg;
  Matrix upper = a.upper() * pos + a.lower() * neg;
  // Round-off can swap bounds of zero-radius entries by an ulp.
  Matrix lo = lower.cwiseMin(upper);
  Matrix hi = lower.cwiseMax(upper);
  return IntervalMatrix<Scalar>(std::move(lo), std::move(hi));
}

/// Column-wise concatenation [A | B].
template <typename Scalar>
IntervalMatrix<Scalar> hconcat(const IntervalMatrix<Scalar> & a, const IntervalMatrix<Scalar> & b)
{
  if (a.rows() != b.rows()) {
    throw std::invalid_argument("hconcat: row count mismatch");
  }
  using Matrix = typename IntervalMatrix<Scalar>::Matrix;
  Matrix lower(a.rows(), a.cols() + b.cols());
  Matrix upper(a.rows(), a.cols() + b.cols());
  lower << a.lower(), b.lower();
  upper << a.upper(), b.upper();
  return IntervalMatrix<Scalar>(std::move(lower), std::move(upper));
}

}  // namespace zonopred

#endif  // ZONOPRED_INTERVAL_HPP_
