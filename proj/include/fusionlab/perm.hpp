#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "fusionlab/errors.hpp"

namespace fusionlab {

// Permutation of {0,...,n-1} in one-line notation. Comparison is
// lexicographic on the image tuple, so the identity is minimal; this ordering
// is the canonical element ordering used everywhere downstream.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<std::uint16_t> images) : img_(std::move(images)) {}

  static Perm identity(int degree) {
    std::vector<std::uint16_t> v(degree);
    for (int i = 0; i < degree; ++i) v[i] = static_cast<std::uint16_t>(i);
    return Perm(std::move(v));
  }

  // cycles use 1-based points, e.g. {{1,2},{3,4}}
  static Perm from_cycles(int degree, const std::vector<std::vector<int>>& cycles) {
    Perm p = identity(degree);
    for (const auto& c : cycles) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        int a = c[i], b = c[(i + 1) % c.size()];
        if (a < 1 || a > degree || b < 1 || b > degree)
          throw malformed_permutation("cycle point out of range");
        p.img_[a - 1] = static_cast<std::uint16_t>(b - 1);
      }
    }
    if (!p.is_bijection()) throw malformed_permutation("cycles overlap");
    return p;
  }

  int degree() const { return static_cast<int>(img_.size()); }
  std::uint16_t operator[](int i) const { return img_[i]; }
  const std::vector<std::uint16_t>& images() const { return img_; }

  bool is_bijection() const {
    std::vector<char> seen(img_.size(), 0);
    for (auto v : img_) {
      if (v >= img_.size() || seen[v]) return false;
      seen[v] = 1;
    }
    return true;
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  // (a*b)(x) = a(b(x))
  friend Perm operator*(const Perm& a, const Perm& b) {
    std::vector<std::uint16_t> v(a.img_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.img_[b.img_[i]];
    return Perm(std::move(v));
  }

  Perm inverse() const {
    std::vector<std::uint16_t> v(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) v[img_[i]] = static_cast<std::uint16_t>(i);
    return Perm(std::move(v));
  }

  bool parity_odd() const {
    // odd permutation <=> odd number of even-length cycles
    std::vector<char> seen(img_.size(), 0);
    bool odd = false;
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (seen[i]) continue;
      std::size_t len = 0, j = i;
      while (!seen[j]) { seen[j] = 1; j = img_[j]; ++len; }
      if (len % 2 == 0) odd = !odd;
    }
    return odd;
  }

  auto operator<=>(const Perm& o) const { return img_ <=> o.img_; }
  bool operator==(const Perm& o) const { return img_ == o.img_; }

  std::string to_cycle_string() const;

 private:
  std::vector<std::uint16_t> img_;
};

}  // namespace fusionlab
