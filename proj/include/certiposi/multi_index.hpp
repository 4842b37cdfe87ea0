#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "certiposi/rational.hpp"

namespace certiposi {

/// Exponent vector alpha in N^n.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);

  static MultiIndex zero(int n) { return MultiIndex(std::vector<int>(static_cast<std::size_t>(n), 0)); }
  static MultiIndex unit(int n, int i);

  int dim() const { return static_cast<int>(e_.size()); }
  int order() const;
  int operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
  std::span<const int> entries() const { return e_; }

  MultiIndex operator+(const MultiIndex& other) const;

  auto operator<=>(const MultiIndex&) const = default;
  bool operator==(const MultiIndex&) const = default;

 private:
  std::vector<int> e_;
};

/**
 * The set {alpha in N^n : |alpha| <= m} enumerated in lexicographic order,
 * with O(n) ranking. Dense coefficient vectors throughout the library are
 * indexed by this rank.
 */
class IndexSet {
 public:
  IndexSet(int n, int m);

  /// Shared, cached instance.
  static std::shared_ptr<const IndexSet> get(int n, int m);

  int dim() const { return n_; }
  int degree() const { return m_; }
  std::size_t size() const { return size_; }

  std::size_t rank(std::span<const int> alpha) const;
  std::span<const int> operator[](std::size_t r) const {
    return {flat_.data() + r * static_cast<std::size_t>(n_), static_cast<std::size_t>(n_)};
  }
  int order(std::size_t r) const { return orders_[r]; }

  /// Number of k-tuples with entry sum <= rem, i.e. C(rem + k, k).
  std::size_t count(int k, int rem) const;

 private:
  int n_;
  int m_;
  std::size_t size_;
  std::vector<std::size_t> count_;  // (n_ + 1) x (m_ + 1)
  std::vector<int> flat_;
  std::vector<int> orders_;
};

/// Factorials, binomials and multinomials over exact integers, cached.
namespace combinatorics {

Integer factorial(int k);
Integer binomial(int n, int k);

/// m! / ((m - |alpha|)! prod alpha_j!)
Integer multinomial(int m, std::span<const int> alpha);

}  // namespace combinatorics

}  // namespace certiposi
