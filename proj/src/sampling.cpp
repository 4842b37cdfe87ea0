#include "certiposi/sampling.hpp"

#include <cmath>

namespace certiposi {

std::vector<double> uniform_point(Rng& rng, const SimplexDomain& dom) {
  std::exponential_distribution<double> expo(1.0);
  const int n = dom.dim();
  std::vector<double> w(static_cast<std::size_t>(n) + 1);
  double total = 0.0;
  for (auto& v : w) total += (v = expo(rng));
  const double scale = n + dom.s_hat().get_d();
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) x[static_cast<std::size_t>(j)] = scale * w[static_cast<std::size_t>(j) + 1] / total - 1.0;
  return x;
}

std::vector<double> random_direction(Rng& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(n));
  double norm = 0.0;
  do {
    norm = 0.0;
    for (auto& c : v) {
      c = gauss(rng);
      norm += c * c;
    }
  } while (norm == 0.0);
  norm = std::sqrt(norm);
  for (auto& c : v) c /= norm;
  return v;
}

}  // namespace certiposi
