#pragma once

#include <random>
#include <vector>

#include "certiposi/monomial.hpp"
#include "certiposi/simplex.hpp"

namespace certiposi::testing {

inline Rational random_rational(std::mt19937_64& rng, int num_range = 9, int den_range = 5) {
  std::uniform_int_distribution<int> num(-num_range, num_range);
  std::uniform_int_distribution<int> den(1, den_range);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

/// Dense random polynomial of total degree <= d.
inline MonomialPoly random_poly(std::mt19937_64& rng, int n, int d) {
  MonomialPoly p(n);
  IndexSet idx(n, d);
  for (std::size_t r = 0; r < idx.size(); ++r) {
    auto a = idx[r];
    p.add_term(MultiIndex(std::vector<int>(a.begin(), a.end())), random_rational(rng));
  }
  return p;
}

/// Random rational point of the simplex, via random integer barycentric weights.
inline std::vector<Rational> random_point(std::mt19937_64& rng, const SimplexDomain& dom) {
  std::uniform_int_distribution<int> w(0, 20);
  std::vector<int> weights(static_cast<std::size_t>(dom.dim()) + 1);
  int total = 0;
  for (auto& v : weights) total += (v = w(rng));
  if (total == 0) {
    weights[0] = 1;
    total = 1;
  }
  std::vector<Rational> u(static_cast<std::size_t>(dom.dim()));
  for (std::size_t j = 0; j < u.size(); ++j) {
    u[j] = Rational(weights[j + 1], total);
    u[j].canonicalize();
  }
  return dom.theta(u);
}

inline MonomialPoly mono(int n, std::initializer_list<std::pair<std::vector<int>, Rational>> terms) {
  MonomialPoly p(n);
  for (const auto& [e, c] : terms) p.add_term(MultiIndex(e), c);
  return p;
}

}  // namespace certiposi::testing
