#include "gnmetric/space.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "gnmetric/errors.hpp"
#include "gnmetric/numerics.hpp"

namespace gnmetric {

bool lex_less(const Point& a, const Point& b) {
  if (a.is_index() && b.is_index()) return a.as_index() < b.as_index();
  if (a.is_real() && b.is_real()) {
    const auto& u = a.as_real();
    const auto& v = b.as_real();
    return std::lexicographical_compare(u.begin(), u.end(), v.begin(), v.end());
  }
  return a.is_index() && b.is_real();  // mixed kinds never occur within one space
}

bool lex_less(const Tuple& a, const Tuple& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (lex_less(a[i], b[i])) return true;
    if (lex_less(b[i], a[i])) return false;
  }
  return a.size() < b.size();
}

std::string to_string(const Point& p) {
  if (p.is_index()) return std::to_string(p.as_index());
  const auto& v = p.as_real();
  char buf[40];
  if (v.size() == 1) {
    std::snprintf(buf, sizeof buf, "%.17g", v[0]);
    return buf;
  }
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", v[i]);
    if (i) out += ", ";
    out += buf;
  }
  return out + ")";
}

std::string to_string(const Tuple& t) {
  std::string out = "[";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ", ";
    out += to_string(t[i]);
  }
  return out + "]";
}

BaseNorm base_norm_from_string(const std::string& s) {
  if (s == "euclidean") return BaseNorm::euclidean;
  if (s == "chebyshev") return BaseNorm::chebyshev;
  if (s == "absolute_difference") return BaseNorm::absolute_difference;
  throw validation_error("unknown base norm: " + s);
}

std::string to_string(BaseNorm n) {
  switch (n) {
    case BaseNorm::euclidean: return "euclidean";
    case BaseNorm::chebyshev: return "chebyshev";
    case BaseNorm::absolute_difference: return "absolute_difference";
  }
  return "?";
}

namespace {

std::string cell(std::size_t i, std::size_t j) {
  std::ostringstream os;
  os << "base[" << i << "][" << j << "]";
  return os.str();
}

}  // namespace

Space Space::finite_table(const std::vector<std::vector<double>>& base) {
  const std::size_t m = base.size();
  if (m == 0) throw validation_error("finite space must have at least one point");
  for (std::size_t i = 0; i < m; ++i) {
    if (base[i].size() != m)
      throw validation_error("base matrix is not square: row " + std::to_string(i) + " has " +
                             std::to_string(base[i].size()) + " entries, expected " +
                             std::to_string(m));
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double v = base[i][j];
      if (!std::isfinite(v)) throw validation_error(cell(i, j) + " is not finite");
      if (v < 0.0) throw validation_error(cell(i, j) + " is negative");
    }
    if (std::abs(base[i][i]) > tol::kStrict)
      throw validation_error(cell(i, i) + " must be zero on the diagonal");
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (!approx_eq(base[i][j], base[j][i]))
        throw validation_error(cell(i, j) + " is asymmetric: " + std::to_string(base[i][j]) +
                               " vs " + std::to_string(base[j][i]));

  // Canonicalize: zero diagonal, exact symmetry from the upper triangle.
  Space s;
  s.kind_ = Kind::finite_table;
  s.size_ = m;
  s.table_.assign(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) s.table_[i * m + j] = s.table_[j * m + i] = base[i][j];

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        if (s.table_[i * m + k] > s.table_[i * m + j] + s.table_[j * m + k] + tol::kAbs) {
          std::ostringstream os;
          os << "triangle inequality violated: base[" << i << "][" << k << "] > base[" << i << "]["
             << j << "] + base[" << j << "][" << k << "]";
          throw validation_error(os.str());
        }
  return s;
}

Space Space::real_vector(std::size_t dim, BaseNorm norm) {
  if (dim == 0) throw validation_error("real-vector space dimension must be >= 1");
  if (norm == BaseNorm::absolute_difference && dim != 1)
    throw validation_error("absolute_difference base norm requires dim = 1");
  Space s;
  s.kind_ = Kind::real_vector;
  s.dim_ = dim;
  s.norm_ = norm;
  return s;
}

bool Space::contains(const Point& p) const {
  if (kind_ == Kind::finite_table) return p.is_index() && p.as_index() < size_;
  return p.is_real() && p.as_real().size() == dim_;
}

void Space::require_member(const Point& p, const std::string& what) const {
  if (!contains(p)) throw validation_error(what + " does not belong to the space: " + to_string(p));
}

double Space::base_distance(const Point& a, const Point& b) const {
  if (kind_ == Kind::finite_table) return table_[a.as_index() * size_ + b.as_index()];
  const auto& u = a.as_real();
  const auto& v = b.as_real();
  switch (norm_) {
    case BaseNorm::absolute_difference:
      return std::abs(u[0] - v[0]);
    case BaseNorm::chebyshev: {
      double m = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) m = std::max(m, std::abs(u[i] - v[i]));
      return m;
    }
    case BaseNorm::euclidean: {
      double acc = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) {
        const double d = u[i] - v[i];
        acc += d * d;
      }
      return std::sqrt(acc);
    }
  }
  return 0.0;
}

bool operator==(const Space& a, const Space& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ == Space::Kind::finite_table) return a.size_ == b.size_ && a.table_ == b.table_;
  return a.dim_ == b.dim_ && a.norm_ == b.norm_;
}

}  // namespace gnmetric
