#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gnmetric/point.hpp"

namespace gnmetric {

/// Base metrics available on real-vector carriers. `absolute_difference`
/// is the 1-d specialization |x - y|.
enum class BaseNorm { euclidean, chebyshev, absolute_difference };

BaseNorm base_norm_from_string(const std::string& s);
std::string to_string(BaseNorm n);

/// The carrier of a generalized n-metric: a finite point set with an
/// explicit base-distance matrix, or R^d with a named base norm.
///
/// Finite base matrices are validated at construction: square, zero
/// diagonal, symmetric, nonnegative, and triangle inequality within
/// tolerance. Violations throw validation_error naming the offending cell.
class Space {
public:
  enum class Kind { finite_table, real_vector };

  static Space finite_table(const std::vector<std::vector<double>>& base);
  static Space real_vector(std::size_t dim, BaseNorm norm);

  Kind kind() const { return kind_; }

  /// Number of points (finite spaces only).
  std::size_t size() const { return size_; }
  /// Coordinate dimension (real-vector spaces only).
  std::size_t dim() const { return dim_; }
  BaseNorm norm() const { return norm_; }

  bool contains(const Point& p) const;
  /// Throws validation_error with `what` in the message if p is foreign.
  void require_member(const Point& p, const std::string& what) const;

  /// Base distance between two member points.
  double base_distance(const Point& a, const Point& b) const;

  /// Finite spaces: distance between point indices, no Point boxing.
  double table_at(std::size_t i, std::size_t j) const { return table_[i * size_ + j]; }

  friend bool operator==(const Space& a, const Space& b);

private:
  Space() = default;

  Kind kind_ = Kind::real_vector;
  std::size_t size_ = 0;             // finite_table
  std::vector<double> table_;        // finite_table, row-major m*m
  std::size_t dim_ = 0;              // real_vector
  BaseNorm norm_ = BaseNorm::absolute_difference;
};

}  // namespace gnmetric
