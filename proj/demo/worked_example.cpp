#include <iostream>

#include "corank/corank.hpp"

int main() {
  const auto a = corank::analyze(std::string("(x, x*y, y^2, y^5)"));
  std::cout << corank::to_text(a);

  // Hyperbolic I_k: two asymptotic directions y = +-1.
  const auto h = corank::analyze(std::string("(x, x*y, x^2 + y^2, y^5)"));
  std::cout << "\n" << corank::to_text(h);
  return 0;
}
