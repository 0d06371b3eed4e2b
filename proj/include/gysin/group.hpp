#pragma once

// Finite groups given by multiplication tables. Elements are dense indices
// 0..order-1 and the identity is always index 0.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gysin {

/// Sorted list of the element indices of a subgroup.
using Subgroup = std::vector<int>;

class FiniteGroup {
 public:
  /// Validates the table: identity at 0, associativity, inverses.
  explicit FiniteGroup(std::vector<std::vector<int>> table, std::string name = {})
      : order_(static_cast<int>(table.size())), name_(std::move(name)) {
    if (order_ == 0) throw std::invalid_argument("group: empty multiplication table");
    mul_.reserve(static_cast<std::size_t>(order_) * order_);
    for (const auto& row : table) {
      if (static_cast<int>(row.size()) != order_)
        throw std::invalid_argument("group: multiplication table is not square");
      for (int v : row) {
        if (v < 0 || v >= order_) throw std::invalid_argument("group: table entry out of range");
        mul_.push_back(v);
      }
    }
    for (int x = 0; x < order_; ++x)
      if (mul(0, x) != x || mul(x, 0) != x)
        throw std::invalid_argument("group: index 0 is not the identity");
    inv_.assign(order_, -1);
    for (int x = 0; x < order_; ++x)
      for (int y = 0; y < order_; ++y)
        if (mul(x, y) == 0 && mul(y, x) == 0) inv_[x] = y;
    for (int x = 0; x < order_; ++x)
      if (inv_[x] < 0) throw std::invalid_argument("group: element without inverse");
    for (int a = 0; a < order_; ++a)
      for (int b = 0; b < order_; ++b)
        for (int c = 0; c < order_; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw std::invalid_argument("group: multiplication is not associative");
  }

  int order() const { return order_; }
  int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a) * order_ + b]; }
  int inv(int a) const { return inv_[a]; }
  static constexpr int identity() { return 0; }
  const std::string& name() const { return name_; }

  std::vector<std::vector<int>> table() const {
    std::vector<std::vector<int>> t(order_, std::vector<int>(order_));
    for (int a = 0; a < order_; ++a)
      for (int b = 0; b < order_; ++b) t[a][b] = mul(a, b);
    return t;
  }

  int element_order(int g) const {
    int k = 1;
    for (int x = g; x != 0; x = mul(x, g)) ++k;
    return k;
  }

  bool is_abelian() const {
    for (int a = 0; a < order_; ++a)
      for (int b = 0; b < a; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  bool is_cyclic() const {
    for (int g = 0; g < order_; ++g)
      if (element_order(g) == order_) return true;
    return false;
  }

  /// Smallest subgroup containing `gens`.
  Subgroup closure(const std::vector<int>& gens) const {
    std::vector<char> in(order_, 0);
    std::vector<int> elems{0};
    in[0] = 1;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (int g : gens) {
        int y = mul(elems[i], g);
        if (!in[y]) {
          in[y] = 1;
          elems.push_back(y);
        }
      }
    }
    std::sort(elems.begin(), elems.end());
    return elems;
  }

  /// All subgroups, sorted by (size, elements). Memoized.
  const std::vector<Subgroup>& subgroups() const {
    std::call_once(subgroups_once_, [this] {
      std::set<Subgroup> found;
      std::vector<Subgroup> frontier;
      for (int g = 0; g < order_; ++g) {
        auto h = closure({g});
        if (found.insert(h).second) frontier.push_back(h);
      }
      std::vector<Subgroup> cyclic = frontier;
      while (!frontier.empty()) {
        std::vector<Subgroup> next;
        for (const auto& h : frontier) {
          for (const auto& c : cyclic) {
            std::vector<int> gens = h;
            gens.insert(gens.end(), c.begin(), c.end());
            auto j = closure(gens);
            if (found.insert(j).second) next.push_back(j);
          }
        }
        frontier = std::move(next);
      }
      subgroups_.assign(found.begin(), found.end());
      std::sort(subgroups_.begin(), subgroups_.end(), [](const Subgroup& a, const Subgroup& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
      });
    });
    return subgroups_;
  }

  /// g H g^{-1}, sorted.
  Subgroup conjugate(const Subgroup& h, int g) const {
    Subgroup out;
    out.reserve(h.size());
    for (int x : h) out.push_back(mul(mul(g, x), inv(g)));
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return &a == &b || a.mul_ == b.mul_;
  }

 private:
  int order_;
  std::string name_;
  std::vector<int> mul_;
  std::vector<int> inv_;
  mutable std::once_flag subgroups_once_;
  mutable std::vector<Subgroup> subgroups_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline bool same_group(const GroupPtr& a, const GroupPtr& b) {
  return a == b || (a && b && *a == *b);
}

/// Z/n with mul[a][b] = (a+b) mod n.
inline GroupPtr cyclic_group(int n) {
  if (n < 1) throw std::invalid_argument("cyclic_group: order must be positive");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return std::make_shared<const FiniteGroup>(std::move(t), "Z/" + std::to_string(n));
}

inline GroupPtr trivial_group() { return cyclic_group(1); }

/// Symmetric group on n letters. Elements are permutations in lexicographic
/// order (so the identity comes first); (st)(i) = s(t(i)).
inline GroupPtr symmetric_group(int n) {
  if (n < 1 || n > 5) throw std::invalid_argument("symmetric_group: supported for 1 <= n <= 5");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto index_of = [&](const std::vector<int>& q) {
    return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  const int m = static_cast<int>(perms.size());
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      std::vector<int> c(n);
      for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
      t[a][b] = index_of(c);
    }
  }
  return std::make_shared<const FiniteGroup>(std::move(t), "S" + std::to_string(n));
}

/// Parses "Z/n", "Zn", "Cn", "Sn" or "trivial".
inline GroupPtr group_from_spec(const std::string& spec) {
  auto number = [&](std::size_t from) {
    const std::string digits = spec.substr(from);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 4)
      throw std::invalid_argument("unknown group \"" + spec + "\"");
    return std::stoi(digits);
  };
  if (spec == "trivial") return trivial_group();
  if (spec.rfind("Z/", 0) == 0) return cyclic_group(number(2));
  if (!spec.empty() && (spec[0] == 'Z' || spec[0] == 'C')) return cyclic_group(number(1));
  if (!spec.empty() && spec[0] == 'S') return symmetric_group(number(1));
  throw std::invalid_argument("unknown group \"" + spec + "\"");
}

}  // namespace gysin
