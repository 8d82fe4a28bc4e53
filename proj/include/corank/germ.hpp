#ifndef CORANK_GERM_HPP_
#define CORANK_GERM_HPP_

#include <array>
#include <cmath>
#include <string>

#include "corank/error.hpp"
#include "corank/poly.hpp"

namespace corank {

inline constexpr int kDefaultOrder = 6;

/// Map germ (R^2,0) -> (R^4,0) given by four truncated Taylor expansions.
template <typename T>
class MapGermR4 {
 public:
  using Poly = TruncatedPoly2<T>;

  MapGermR4() : MapGermR4(std::array<Poly, 4>{Poly(2), Poly(2), Poly(2), Poly(2)}) {}

  explicit MapGermR4(std::array<Poly, 4> components) : components_(std::move(components)) {
    const int order = components_[0].order();
    for (const auto& c : components_) {
      if (c.order() != order) throw InputError("germ components must share one truncation order");
    }
    for (std::size_t k = 0; k < 4; ++k) {
      if (components_[k].coeff(0, 0) != T(0)) {
        throw InputError("component " + std::to_string(k + 1) +
                                " has a nonzero constant term; the germ must map the origin to "
                                "the origin");
      }
    }
  }

  int order() const noexcept { return components_[0].order(); }
  const Poly& operator[](std::size_t k) const { return components_[k]; }
  const std::array<Poly, 4>& components() const noexcept { return components_; }

  template <typename U>
  MapGermR4<U> cast() const {
    return MapGermR4<U>({components_[0].template cast<U>(), components_[1].template cast<U>(),
                         components_[2].template cast<U>(), components_[3].template cast<U>()});
  }

  bool operator==(const MapGermR4&) const = default;

  std::string to_string() const {
    return "(" + components_[0].to_string() + ", " + components_[1].to_string() + ", " +
           components_[2].to_string() + ", " + components_[3].to_string() + ")";
  }

 private:
  std::array<Poly, 4> components_;
};

/// Raw degree-two Taylor coefficients of components 2..4 of a prenormal germ,
/// f2 = a20 x^2 + a11 xy + a02 y^2 and likewise b (f3) and c (f4).
template <typename T>
struct Jet2Coefficients {
  T a20{0}, a11{0}, a02{0};
  T b20{0}, b11{0}, b02{0};
  T c20{0}, c11{0}, c02{0};

  /// Coefficient vectors across the three normal components.
  std::array<T, 3> x2() const { return {a20, b20, c20}; }
  std::array<T, 3> xy() const { return {a11, b11, c11}; }
  std::array<T, 3> y2() const { return {a02, b02, c02}; }

  static Jet2Coefficients from_vectors(const std::array<T, 3>& x2, const std::array<T, 3>& xy,
                                       const std::array<T, 3>& y2) {
    return {x2[0], xy[0], y2[0], x2[1], xy[1], y2[1], x2[2], xy[2], y2[2]};
  }

  template <typename U>
  Jet2Coefficients<U> cast() const {
    auto c = [](const T& v) { return U(to_double(v)); };
    if constexpr (std::is_same_v<U, T>) {
      return *this;
    } else {
      return {c(a20), c(a11), c(a02), c(b20), c(b11), c(b02), c(c20), c(c11), c(c02)};
    }
  }

  Jet2Coefficients operator+(const Jet2Coefficients& o) const {
    return {a20 + o.a20, a11 + o.a11, a02 + o.a02, b20 + o.b20, b11 + o.b11,
            b02 + o.b02, c20 + o.c20, c11 + o.c11, c02 + o.c02};
  }
  bool operator==(const Jet2Coefficients&) const = default;
};

namespace detail {
template <typename T>
bool negligible(const T& v, double eps) {
  if constexpr (is_exact_v<T>) {
    return v == 0;
  } else {
    return std::abs(v) <= eps;
  }
}
}  // namespace detail

/// First component is x and components 2..4 have vanishing 1-jets. Exact
/// germs are checked exactly; numeric ones within eps.
template <typename T>
bool is_prenormal(const MapGermR4<T>& g, double eps = 1e-10) {
  for (const auto& [m, c] : g[0].terms()) {
    const T target = (m.i == 1 && m.j == 0) ? T(1) : T(0);
    if (!detail::negligible(T(c - target), eps)) return false;
  }
  if (detail::negligible(T(g[0].coeff(1, 0) - T(1)), eps) == false) return false;
  for (std::size_t k = 1; k < 4; ++k) {
    if (!detail::negligible(g[k].coeff(1, 0), eps) || !detail::negligible(g[k].coeff(0, 1), eps)) {
      return false;
    }
  }
  return true;
}

template <typename T>
Jet2Coefficients<T> extract_jet2(const MapGermR4<T>& g, double eps = 1e-10) {
  if (!is_prenormal(g, eps)) {
    throw PreconditionError("germ is not in prenormal form (x, f2, f3, f4) with vanishing 1-jets");
  }
  return {g[1].coeff(2, 0), g[1].coeff(1, 1), g[1].coeff(0, 2),
          g[2].coeff(2, 0), g[2].coeff(1, 1), g[2].coeff(0, 2),
          g[3].coeff(2, 0), g[3].coeff(1, 1), g[3].coeff(0, 2)};
}

}  // namespace corank

#endif  // CORANK_GERM_HPP_
