#include "certiposi/multi_index.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <utility>

#include "certiposi/errors.hpp"

namespace certiposi {

MultiIndex::MultiIndex(std::vector<int> entries) : e_(std::move(entries)) {
  for (int v : e_) {
    if (v < 0) throw InputError("negative exponent in multi-index");
  }
}

MultiIndex MultiIndex::unit(int n, int i) {
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  e[static_cast<std::size_t>(i)] = 1;
  return MultiIndex(std::move(e));
}

int MultiIndex::order() const { return std::accumulate(e_.begin(), e_.end(), 0); }

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (dim() != other.dim()) throw DimensionError("multi-index dimension mismatch");
  std::vector<int> e(e_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.e_[i];
  return MultiIndex(std::move(e));
}

IndexSet::IndexSet(int n, int m) : n_(n), m_(m) {
  if (n < 1) throw DimensionError("index set dimension must be >= 1");
  if (m < 0) throw DegreeError("index set degree must be >= 0");
  const std::size_t rows = static_cast<std::size_t>(n) + 1;
  const std::size_t cols = static_cast<std::size_t>(m) + 1;
  count_.assign(rows * cols, 1);
  // count(k, r) = C(r + k, k) = count(k - 1, r) + count(k, r - 1)
  for (std::size_t k = 1; k < rows; ++k) {
    for (std::size_t r = 0; r < cols; ++r) {
      count_[k * cols + r] = count_[(k - 1) * cols + r] + (r > 0 ? count_[k * cols + r - 1] : 0);
    }
  }
  size_ = count(n, m);
  flat_.reserve(size_ * static_cast<std::size_t>(n));
  orders_.reserve(size_);
  std::vector<int> alpha(static_cast<std::size_t>(n), 0);
  // lexicographic: first coordinate outermost
  auto visit = [&](auto&& self, int i, int rem) -> void {
    if (i == n) {
      flat_.insert(flat_.end(), alpha.begin(), alpha.end());
      orders_.push_back(m - rem);
      return;
    }
    for (int v = 0; v <= rem; ++v) {
      alpha[static_cast<std::size_t>(i)] = v;
      self(self, i + 1, rem - v);
    }
    alpha[static_cast<std::size_t>(i)] = 0;
  };
  visit(visit, 0, m);
}

std::size_t IndexSet::count(int k, int rem) const {
  if (rem < 0) return 0;
  return count_[static_cast<std::size_t>(k) * (static_cast<std::size_t>(m_) + 1) +
                static_cast<std::size_t>(rem)];
}

std::size_t IndexSet::rank(std::span<const int> alpha) const {
  std::size_t r = 0;
  int rem = m_;
  for (int i = 0; i < n_; ++i) {
    const int a = alpha[static_cast<std::size_t>(i)];
    // sum_{v<a} count(k, rem - v) = count(k + 1, rem) - count(k + 1, rem - a)
    r += count(n_ - i, rem) - count(n_ - i, rem - a);
    rem -= a;
  }
  return r;
}

std::shared_ptr<const IndexSet> IndexSet::get(int n, int m) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const IndexSet>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, m}];
  if (!slot) slot = std::make_shared<const IndexSet>(n, m);
  return slot;
}

namespace combinatorics {

namespace {
std::mutex fact_mu;
std::vector<Integer>& fact_table() {
  static std::vector<Integer> table{Integer(1)};
  return table;
}
}  // namespace

Integer factorial(int k) {
  std::lock_guard<std::mutex> lock(fact_mu);
  auto& t = fact_table();
  while (static_cast<int>(t.size()) <= k) {
    t.reserve(static_cast<std::size_t>(k) + 1);
    t.push_back(t.back() * static_cast<unsigned long>(t.size()));
  }
  return t[static_cast<std::size_t>(k)];
}

Integer binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Integer multinomial(int m, std::span<const int> alpha) {
  int total = 0;
  for (int a : alpha) total += a;
  if (total > m) return 0;
  // product of binomials keeps intermediate sizes small
  Integer r = 1;
  int left = m;
  for (int a : alpha) {
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(left), static_cast<unsigned long>(a));
    r *= b;
    left -= a;
  }
  return r;
}

}  // namespace combinatorics

}  // namespace certiposi
