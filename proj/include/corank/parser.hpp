#ifndef CORANK_PARSER_HPP_
#define CORANK_PARSER_HPP_

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "corank/error.hpp"
#include "corank/germ.hpp"
#include "corank/poly.hpp"

namespace corank {

/// Named rational constants substituted while parsing (sweep templates).
using ParameterMap = std::map<std::string, Rational, std::less<>>;

namespace detail {

// Recursive-descent parser over the germ grammar:
//   germ   := "(" expr "," expr "," expr "," expr ")"
//   expr   := term (("+"|"-") term)*
//   term   := ["+"|"-"] factor ("*" factor)*
//   factor := base ("^" uint)?
//   base   := "x" | "y" | name | number | "(" expr ")"
//   number := digits ("." digits)? ("/" digits)?
class GermParser {
 public:
  GermParser(std::string_view text, int order, const ParameterMap& params)
      : text_(text), order_(order), params_(params) {}

  std::vector<PolyQ> parse_tuple() {
    expect('(');
    std::vector<PolyQ> out;
    out.push_back(parse_expr());
    while (peek() == ',') {
      ++pos_;
      out.push_back(parse_expr());
    }
    expect(')');
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return out;
  }

  PolyQ parse_single() {
    PolyQ p = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(pos_, message); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  PolyQ parse_expr() {
    PolyQ acc = parse_term();
    for (char c = peek(); c == '+' || c == '-'; c = peek()) {
      ++pos_;
      PolyQ rhs = parse_term();
      acc = c == '+' ? acc + rhs : acc - rhs;
    }
    return acc;
  }

  PolyQ parse_term() {
    bool negate = false;
    for (char c = peek(); c == '+' || c == '-'; c = peek()) {
      ++pos_;
      if (c == '-') negate = !negate;
    }
    PolyQ acc = parse_factor();
    while (peek() == '*') {
      ++pos_;
      acc = acc * parse_factor();
    }
    return negate ? -acc : acc;
  }

  PolyQ parse_factor() {
    PolyQ base = parse_base();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      const std::size_t start = pos_;
      std::string digits = read_digits();
      if (digits.empty()) fail("expected non-negative integer exponent");
      if (digits.size() > 4) {
        pos_ = start;
        fail("exponent too large");
      }
      return base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  PolyQ parse_base() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      PolyQ inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return PolyQ::constant(parse_number(), order_);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      std::string name;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        name += text_[pos_++];
      }
      if (name == "x") return PolyQ::var(Var::x, order_);
      if (name == "y") return PolyQ::var(Var::y, order_);
      if (auto it = params_.find(name); it != params_.end()) {
        return PolyQ::constant(it->second, order_);
      }
      pos_ = start;
      fail("unknown identifier '" + name + "' (only x and y are variables)");
    }
    if (c == '\0') fail("unexpected end of input");
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string read_digits() {
    std::string digits;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      digits += text_[pos_++];
    }
    return digits;
  }

  static boost::multiprecision::cpp_int decimal_int(const std::string& digits) {
    const auto first = digits.find_first_not_of('0');
    return first == std::string::npos ? 0 : boost::multiprecision::cpp_int(digits.substr(first));
  }

  Rational parse_number() {
    const std::size_t start = pos_;
    std::string whole = read_digits();
    std::string frac;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      frac = read_digits();
    }
    if (whole.empty() && frac.empty()) {
      pos_ = start;
      fail("malformed number");
    }
    using boost::multiprecision::cpp_int;
    cpp_int scale = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
    Rational value(decimal_int(whole + frac), scale);
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      skip_ws();
      std::string den = read_digits();
      if (den.empty()) fail("expected denominator");
      const cpp_int d = decimal_int(den);
      if (d == 0) fail("zero denominator");
      value /= Rational(d);
    }
    return value;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int order_;
  const ParameterMap& params_;
};

}  // namespace detail

/// Parses "(e1, e2, e3, e4)" into the exact truncated Taylor expansion of
/// each coordinate at the origin.
inline MapGermR4<Rational> parse_map_germ(std::string_view text, int order = kDefaultOrder,
                                          const ParameterMap& params = {}) {
  if (order < 2) throw InputError("jet order must be at least 2");
  detail::GermParser parser(text, order, params);
  std::vector<PolyQ> components = parser.parse_tuple();
  if (components.size() != 4) {
    throw ParseError(0, "expected 4 components, found " + std::to_string(components.size()));
  }
  return MapGermR4<Rational>({components[0], components[1], components[2], components[3]});
}

/// Parses a single coordinate expression.
inline PolyQ parse_poly(std::string_view text, int order = kDefaultOrder,
                        const ParameterMap& params = {}) {
  detail::GermParser parser(text, order, params);
  return parser.parse_single();
}

/// Parses a rational or decimal literal with an optional sign.
inline Rational parse_rational(std::string_view text) {
  PolyQ p = parse_poly(text, 1);
  if (p.coeff(1, 0) != 0 || p.coeff(0, 1) != 0) throw InputError("expected a number");
  return p.coeff(0, 0);
}

}  // namespace corank

#endif  // CORANK_PARSER_HPP_
