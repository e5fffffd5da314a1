#pragma once

// Random differential polynomials for property tests.

#include "csfh/diffpoly.hpp"

#include <random>
#include <vector>

namespace csfh::testing {

struct PolyShape {
  int max_terms = 4;
  int max_degree = 3;
  bool with_phi = false;
};

inline std::vector<Generator> generator_pool(bool with_phi) {
  std::vector<Generator> pool{Generator::u(1), Generator::u(2), Generator::u(3), Generator::u(4),
                              Generator::e(), Generator::symbol("a")};
  if (with_phi) pool.push_back(Generator::phi());
  return pool;
}

inline Rational random_rational(std::mt19937_64& rng, int span = 9) {
  std::uniform_int_distribution<int> num(-span, span);
  std::uniform_int_distribution<int> den(1, span);
  int n = 0;
  while (n == 0) n = num(rng);
  return Rational(n, den(rng));
}

inline DiffPoly random_poly(std::mt19937_64& rng, const PolyShape& shape = {}) {
  const auto pool = generator_pool(shape.with_phi);
  std::uniform_int_distribution<int> term_count(1, shape.max_terms);
  std::uniform_int_distribution<int> degree(0, shape.max_degree);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);

  DiffPoly p;
  const int n = term_count(rng);
  for (int t = 0; t < n; ++t) {
    Powers powers;
    const int d = degree(rng);
    for (int i = 0; i < d; ++i) powers[pool[pick(rng)]] += 1;
    p += DiffPoly::monomial(random_rational(rng), powers);
  }
  return p;
}

}  // namespace csfh::testing
