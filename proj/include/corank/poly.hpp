#ifndef CORANK_POLY_HPP_
#define CORANK_POLY_HPP_

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "corank/error.hpp"
#include "corank/rational.hpp"

namespace corank {

enum class Var { x, y };

/// Exponent pair of x^i y^j.
struct Monomial {
  int i = 0;
  int j = 0;

  int degree() const noexcept { return i + j; }
  auto operator<=>(const Monomial&) const = default;
};

/// Bivariate polynomial truncated at a jet order.
///
/// Coefficients with total degree above the order are discarded on every
/// operation and no zero coefficient is ever stored. Binary operations
/// truncate to the smaller of the two operand orders.
template <typename T>
class TruncatedPoly2 {
 public:
  using Coeff = T;
  using Terms = std::map<Monomial, T>;

  explicit TruncatedPoly2(int order = 0) : order_(order) {
    if (order < 0) throw InputError("truncation order must be non-negative");
  }

  static TruncatedPoly2 constant(const T& c, int order) {
    TruncatedPoly2 p(order);
    p.set(0, 0, c);
    return p;
  }
  static TruncatedPoly2 monomial(int i, int j, const T& c, int order) {
    TruncatedPoly2 p(order);
    p.set(i, j, c);
    return p;
  }
  static TruncatedPoly2 var(Var v, int order) {
    return v == Var::x ? monomial(1, 0, T(1), order) : monomial(0, 1, T(1), order);
  }

  int order() const noexcept { return order_; }
  const Terms& terms() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  T coeff(int i, int j) const {
    auto it = coeffs_.find(Monomial{i, j});
    return it == coeffs_.end() ? T(0) : it->second;
  }

  void set(int i, int j, const T& c) {
    if (i < 0 || j < 0) throw InputError("negative exponent");
    if (i + j > order_) return;
    if (c == T(0)) {
      coeffs_.erase(Monomial{i, j});
    } else {
      coeffs_[Monomial{i, j}] = c;
    }
  }

  void add_to(int i, int j, const T& c) {
    if (i + j > order_) return;
    set(i, j, coeff(i, j) + c);
  }

  TruncatedPoly2 truncated(int order) const {
    TruncatedPoly2 out(std::min(order, order_));
    for (const auto& [m, c] : coeffs_) out.set(m.i, m.j, c);
    return out;
  }

  /// Homogeneous part of the given total degree.
  TruncatedPoly2 homogeneous_part(int degree) const {
    TruncatedPoly2 out(order_);
    for (const auto& [m, c] : coeffs_) {
      if (m.degree() == degree) out.set(m.i, m.j, c);
    }
    return out;
  }

  int lowest_degree() const noexcept {
    int low = -1;
    for (const auto& [m, c] : coeffs_) {
      if (low < 0 || m.degree() < low) low = m.degree();
    }
    return low;
  }

  TruncatedPoly2& operator+=(const TruncatedPoly2& o) {
    order_ = std::min(order_, o.order_);
    prune();
    for (const auto& [m, c] : o.coeffs_) add_to(m.i, m.j, c);
    return *this;
  }
  TruncatedPoly2& operator-=(const TruncatedPoly2& o) {
    order_ = std::min(order_, o.order_);
    prune();
    for (const auto& [m, c] : o.coeffs_) add_to(m.i, m.j, -c);
    return *this;
  }
  TruncatedPoly2& operator*=(const T& s) {
    if (s == T(0)) {
      coeffs_.clear();
      return *this;
    }
    for (auto& [m, c] : coeffs_) c *= s;
    return *this;
  }

  friend TruncatedPoly2 operator+(TruncatedPoly2 a, const TruncatedPoly2& b) { return a += b; }
  friend TruncatedPoly2 operator-(TruncatedPoly2 a, const TruncatedPoly2& b) { return a -= b; }
  friend TruncatedPoly2 operator-(TruncatedPoly2 a) { return a *= T(-1); }
  friend TruncatedPoly2 operator*(TruncatedPoly2 a, const T& s) { return a *= s; }
  friend TruncatedPoly2 operator*(const T& s, TruncatedPoly2 a) { return a *= s; }

  friend TruncatedPoly2 operator*(const TruncatedPoly2& a, const TruncatedPoly2& b) {
    TruncatedPoly2 out(std::min(a.order_, b.order_));
    for (const auto& [ma, ca] : a.coeffs_) {
      for (const auto& [mb, cb] : b.coeffs_) {
        if (ma.degree() + mb.degree() > out.order_) continue;
        out.add_to(ma.i + mb.i, ma.j + mb.j, ca * cb);
      }
    }
    return out;
  }

  TruncatedPoly2 pow(unsigned exponent) const {
    TruncatedPoly2 result = constant(T(1), order_);
    TruncatedPoly2 base = *this;
    while (exponent > 0) {
      if (exponent & 1u) result = result * base;
      exponent >>= 1u;
      if (exponent > 0) base = base * base;
    }
    return result;
  }

  /// Formal partial derivative; the truncation order drops by one.
  TruncatedPoly2 differentiate(Var v) const {
    TruncatedPoly2 out(std::max(order_ - 1, 0));
    for (const auto& [m, c] : coeffs_) {
      if (v == Var::x && m.i > 0) out.set(m.i - 1, m.j, c * T(m.i));
      if (v == Var::y && m.j > 0) out.set(m.i, m.j - 1, c * T(m.j));
    }
    return out;
  }

  template <typename U>
  U evaluate(const U& x, const U& y) const {
    U total(0);
    for (const auto& [m, c] : coeffs_) {
      U term = U(c);
      for (int k = 0; k < m.i; ++k) term *= x;
      for (int k = 0; k < m.j; ++k) term *= y;
      total += term;
    }
    return total;
  }

  double evaluate_double(double x, double y) const {
    double total = 0.0;
    for (const auto& [m, c] : coeffs_) {
      total += to_double(c) * std::pow(x, m.i) * std::pow(y, m.j);
    }
    return total;
  }

  /// Substitutes (x, y) -> (px, py). Both substitutes must vanish at the
  /// origin so that the truncated result is exact.
  TruncatedPoly2 compose(const TruncatedPoly2& px, const TruncatedPoly2& py) const {
    if (px.coeff(0, 0) != T(0) || py.coeff(0, 0) != T(0)) {
      throw PreconditionError("composition requires substitutes vanishing at the origin");
    }
    const int order = std::min({order_, px.order_, py.order_});
    TruncatedPoly2 out(order);
    int max_i = 0;
    int max_j = 0;
    for (const auto& [m, c] : coeffs_) {
      max_i = std::max(max_i, m.i);
      max_j = std::max(max_j, m.j);
    }
    std::vector<TruncatedPoly2> xs{constant(T(1), order)};
    std::vector<TruncatedPoly2> ys{constant(T(1), order)};
    for (int k = 1; k <= max_i; ++k) xs.push_back(xs.back() * px.truncated(order));
    for (int k = 1; k <= max_j; ++k) ys.push_back(ys.back() * py.truncated(order));
    for (const auto& [m, c] : coeffs_) {
      if (m.degree() > order) continue;
      out += (xs[m.i] * ys[m.j]) * c;
    }
    return out;
  }

  template <typename U>
  TruncatedPoly2<U> cast() const {
    TruncatedPoly2<U> out(order_);
    for (const auto& [m, c] : coeffs_) {
      if constexpr (std::is_same_v<U, double>) {
        out.set(m.i, m.j, to_double(c));
      } else if constexpr (std::is_same_v<U, Rational> && std::is_same_v<T, double>) {
        out.set(m.i, m.j, rational_from_double(c));
      } else {
        out.set(m.i, m.j, U(c));
      }
    }
    return out;
  }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [k, c] : coeffs_) m = std::max(m, std::abs(to_double(c)));
    return m;
  }

  /// Removes coefficients with magnitude at most eps (numeric cleanup).
  TruncatedPoly2 chopped(double eps) const {
    TruncatedPoly2 out(order_);
    for (const auto& [m, c] : coeffs_) {
      if (std::abs(to_double(c)) > eps) out.set(m.i, m.j, c);
    }
    return out;
  }

  bool operator==(const TruncatedPoly2& o) const {
    return order_ == o.order_ && coeffs_ == o.coeffs_;
  }

  /// Prints in the germ grammar, highest degree last, e.g. "x^2 + 2*x*y^3".
  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::vector<std::pair<Monomial, T>> ordered(coeffs_.begin(), coeffs_.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
      if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
      return a.first.i > b.first.i;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : ordered) {
      const bool negative = c < T(0);
      T magnitude = negative ? T(-c) : c;
      if (first) {
        if (negative) os << "-";
      } else {
        os << (negative ? " - " : " + ");
      }
      first = false;
      std::string factors;
      if (m.i > 0) factors += m.i == 1 ? "x" : "x^" + std::to_string(m.i);
      if (m.j > 0) {
        if (!factors.empty()) factors += "*";
        factors += m.j == 1 ? "y" : "y^" + std::to_string(m.j);
      }
      const bool unit = magnitude == T(1);
      if (factors.empty()) {
        os << format_coeff(magnitude);
      } else if (unit) {
        os << factors;
      } else {
        os << format_coeff(magnitude) << "*" << factors;
      }
    }
    return os.str();
  }

 private:
  static std::string format_coeff(const T& c) {
    if constexpr (is_exact_v<T>) {
      return c.str();
    } else {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", static_cast<double>(c));
      return buf;
    }
  }

  void prune() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
      it = it->first.degree() > order_ ? coeffs_.erase(it) : std::next(it);
    }
  }

  int order_;
  Terms coeffs_;
};

using PolyQ = TruncatedPoly2<Rational>;
using PolyD = TruncatedPoly2<double>;

}  // namespace corank

#endif  // CORANK_POLY_HPP_
