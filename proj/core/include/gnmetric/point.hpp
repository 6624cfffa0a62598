#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "gnmetric/errors.hpp"

namespace gnmetric {

/// A carrier point: either an index into a finite space or a real vector.
/// Real coordinates are validated to be finite at construction, so code
/// downstream never has to re-check for NaN/inf.
class Point {
public:
  Point() = default;

  static Point index(std::size_t i) { return Point(i); }

  static Point real(std::vector<double> coords) {
    for (double c : coords) {
      if (!std::isfinite(c)) throw validation_error("point coordinate is not finite");
    }
    return Point(std::move(coords));
  }

  /// One-dimensional real point.
  static Point scalar(double x) { return real({x}); }

  bool is_index() const { return std::holds_alternative<std::size_t>(v_); }
  bool is_real() const { return std::holds_alternative<std::vector<double>>(v_); }

  std::size_t as_index() const {
    if (!is_index()) throw validation_error("point is not a finite-space index");
    return std::get<std::size_t>(v_);
  }

  const std::vector<double>& as_real() const {
    if (!is_real()) throw validation_error("point is not a real vector");
    return std::get<std::vector<double>>(v_);
  }

  friend bool operator==(const Point& a, const Point& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }

private:
  explicit Point(std::size_t i) : v_(i) {}
  explicit Point(std::vector<double> coords) : v_(std::move(coords)) {}

  std::variant<std::size_t, std::vector<double>> v_;
};

/// An ordered tuple of carrier points; its length must match the arity of
/// the metric it is fed to (validated at evaluation time).
using Tuple = std::vector<Point>;

/// Lexicographic order used for deterministic witness selection.
/// Index points order by index, real points componentwise.
bool lex_less(const Point& a, const Point& b);
bool lex_less(const Tuple& a, const Tuple& b);

std::string to_string(const Point& p);
std::string to_string(const Tuple& t);

}  // namespace gnmetric
