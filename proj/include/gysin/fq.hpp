#pragma once

// Exact arithmetic in F_{p^d} = F_p[x]/(m(x)) for odd primes p. Elements are
// coefficient vectors, low degree first. The modulus is the least monic
// irreducible polynomial when coefficient tuples (c_0, c_1, ..., c_{d-1}) are
// compared lexicographically; the chosen non-square is the least non-square
// by integer value sum c_i p^i.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gysin {

struct FqElem {
  std::vector<int> coeffs;
  friend bool operator==(const FqElem&, const FqElem&) = default;
  friend auto operator<=>(const FqElem&, const FqElem&) = default;
};

inline bool is_prime(int n) {
  if (n < 2) return false;
  for (int k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

namespace poly {

using Poly = std::vector<int>;  // low degree first, no trailing zeros except for the zero polynomial

inline void trim(Poly& a) {
  while (a.size() > 1 && a.back() == 0) a.pop_back();
}

inline int mod(std::int64_t v, int p) {
  v %= p;
  return static_cast<int>(v < 0 ? v + p : v);
}

inline int inverse_mod(int a, int p) {
  std::int64_t r = 1, b = a, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<int>(r);
}

/// Remainder of a modulo the nonzero polynomial m.
inline Poly rem(Poly a, const Poly& m, int p) {
  trim(a);
  const int dm = static_cast<int>(m.size()) - 1;
  const int lead_inv = inverse_mod(m.back(), p);
  for (int k = static_cast<int>(a.size()) - 1; k >= dm; --k) {
    const int c = static_cast<int>(static_cast<std::int64_t>(a[k]) * lead_inv % p);
    if (c == 0) continue;
    for (int i = 0; i <= dm; ++i) a[k - dm + i] = mod(a[k - dm + i] - static_cast<std::int64_t>(c) * m[i], p);
  }
  if (static_cast<int>(a.size()) > dm) a.resize(std::max(dm, 1));
  trim(a);
  return a;
}

inline bool is_zero(const Poly& a) { return a.size() == 1 && a[0] == 0; }

/// Trial division by every monic polynomial of degree 1..deg/2.
inline bool is_irreducible(const Poly& m, int p) {
  const int d = static_cast<int>(m.size()) - 1;
  if (d < 1) return false;
  for (int k = 1; 2 * k <= d; ++k) {
    std::int64_t count = 1;
    for (int i = 0; i < k; ++i) count *= p;
    Poly div(k + 1, 0);
    div[k] = 1;
    for (std::int64_t idx = 0; idx < count; ++idx) {
      std::int64_t v = idx;
      for (int i = 0; i < k; ++i) {
        div[i] = static_cast<int>(v % p);
        v /= p;
      }
      if (is_zero(rem(m, div, p))) return false;
    }
  }
  return true;
}

/// Least monic irreducible of degree d, comparing (c_0, ..., c_{d-1}) lexicographically.
inline Poly least_irreducible(int p, int d) {
  std::int64_t count = 1;
  for (int i = 0; i < d; ++i) count *= p;
  Poly m(d + 1, 0);
  m[d] = 1;
  for (std::int64_t idx = 0; idx < count; ++idx) {
    std::int64_t v = idx;
    for (int i = d - 1; i >= 0; --i) {  // c_0 is the most significant digit
      m[i] = static_cast<int>(v % p);
      v /= p;
    }
    if (is_irreducible(m, p)) return m;
  }
  throw std::logic_error("least_irreducible: none found");
}

}  // namespace poly

class FqField {
 public:
  /// F_{p^d} with the canonical modulus and non-square.
  static FqField build(int p, int d) {
    if (p == 2) throw std::invalid_argument("fq: characteristic 2 is unsupported");
    if (!is_prime(p)) throw std::invalid_argument("fq: p = " + std::to_string(p) + " is not prime");
    if (d < 1) throw std::invalid_argument("fq: degree must be at least 1");
    return FqField(p, poly::least_irreducible(p, d));
  }

  /// Explicit monic modulus; verified irreducible.
  FqField(int p, std::vector<int> modulus) : p_(p), modulus_(std::move(modulus)) {
    if (p == 2 || !is_prime(p)) throw std::invalid_argument("fq: p must be an odd prime");
    d_ = static_cast<int>(modulus_.size()) - 1;
    if (d_ < 1 || modulus_.back() != 1) throw std::invalid_argument("fq: modulus must be monic of degree >= 1");
    if (!poly::is_irreducible(modulus_, p_)) throw std::invalid_argument("fq: modulus is reducible");
    order_ = 1;
    for (int i = 0; i < d_; ++i) order_ *= p_;
    for (std::int64_t v = 1; v < order_; ++v) {
      FqElem a = element(v);
      if (!is_square(a)) {
        nonsquare_ = a;
        break;
      }
    }
  }

  int p() const { return p_; }
  int degree() const { return d_; }
  std::int64_t order() const { return order_; }
  const std::vector<int>& modulus() const { return modulus_; }
  const FqElem& nonsquare() const { return nonsquare_; }

  FqElem zero() const { return FqElem{std::vector<int>(d_, 0)}; }
  FqElem one() const { return from_int(1); }
  FqElem from_int(std::int64_t v) const {
    FqElem a = zero();
    a.coeffs[0] = poly::mod(v, p_);
    return a;
  }
  /// The class of x, i.e. the generator over F_p.
  FqElem gen() const {
    std::vector<int> x(2, 0);
    x[1] = 1;
    return reduce(std::move(x));
  }

  /// Element with integer value v = sum c_i p^i.
  FqElem element(std::int64_t v) const {
    FqElem a = zero();
    for (int i = 0; i < d_; ++i) {
      a.coeffs[i] = static_cast<int>(v % p_);
      v /= p_;
    }
    return a;
  }
  std::int64_t index(const FqElem& a) const {
    std::int64_t v = 0;
    for (int i = d_ - 1; i >= 0; --i) v = v * p_ + a.coeffs[i];
    return v;
  }

  bool is_zero(const FqElem& a) const {
    for (int c : a.coeffs)
      if (c) return false;
    return true;
  }

  FqElem add(const FqElem& a, const FqElem& b) const {
    FqElem r = a;
    for (int i = 0; i < d_; ++i) r.coeffs[i] = (a.coeffs[i] + b.coeffs[i]) % p_;
    return r;
  }
  FqElem neg(const FqElem& a) const {
    FqElem r = a;
    for (auto& c : r.coeffs) c = c ? p_ - c : 0;
    return r;
  }
  FqElem sub(const FqElem& a, const FqElem& b) const { return add(a, neg(b)); }

  FqElem mul(const FqElem& a, const FqElem& b) const {
    std::vector<std::int64_t> prod(2 * d_ - 1, 0);
    for (int i = 0; i < d_; ++i) {
      if (!a.coeffs[i]) continue;
      for (int j = 0; j < d_; ++j) prod[i + j] += static_cast<std::int64_t>(a.coeffs[i]) * b.coeffs[j];
    }
    std::vector<int> out(prod.size());
    for (std::size_t i = 0; i < prod.size(); ++i) out[i] = poly::mod(prod[i], p_);
    return reduce(std::move(out));
  }

  FqElem pow(FqElem a, std::uint64_t e) const {
    FqElem r = one();
    while (e) {
      if (e & 1u) r = mul(r, a);
      a = mul(a, a);
      e >>= 1u;
    }
    return r;
  }

  FqElem inv(const FqElem& a) const {
    if (is_zero(a)) throw std::domain_error("fq: inverse of zero");
    return pow(a, static_cast<std::uint64_t>(order_ - 2));
  }

  /// Euler's criterion; zero counts as a square.
  bool is_square(const FqElem& a) const {
    if (is_zero(a)) return true;
    return pow(a, static_cast<std::uint64_t>((order_ - 1) / 2)) == one();
  }

  /// a^(p^k).
  FqElem frobenius(const FqElem& a, int k = 1) const {
    FqElem r = a;
    for (int i = 0; i < k; ++i) r = pow(r, static_cast<std::uint64_t>(p_));
    return r;
  }

  /// Trace to the subfield of degree s (s | d), as the sum of Frobenius iterates a^(p^(s i)).
  FqElem trace_frobenius(const FqElem& a, int s = 1) const {
    if (s < 1 || d_ % s != 0) throw std::invalid_argument("fq: trace to a non-subfield");
    FqElem acc = zero();
    FqElem cur = a;
    for (int i = 0; i < d_ / s; ++i) {
      acc = add(acc, cur);
      cur = frobenius(cur, s);
    }
    return acc;
  }

  /// Absolute trace as the trace of multiplication-by-a on the basis 1, x, ..., x^(d-1).
  int trace_matrix(const FqElem& a) const {
    std::int64_t t = 0;
    for (int i = 0; i < d_; ++i) {
      std::vector<int> basis(d_, 0);
      basis[i] = 1;
      t += mul(a, FqElem{basis}).coeffs[i];
    }
    return poly::mod(t, p_);
  }

  FqElem random(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::int64_t> dist(0, order_ - 1);
    return element(dist(rng));
  }

  friend bool operator==(const FqField& a, const FqField& b) { return a.p_ == b.p_ && a.modulus_ == b.modulus_; }

 private:
  FqElem reduce(std::vector<int> v) const {
    auto r = poly::rem(std::move(v), modulus_, p_);
    r.resize(d_, 0);
    return FqElem{std::move(r)};
  }

  int p_;
  int d_ = 0;
  std::vector<int> modulus_;
  std::int64_t order_ = 0;
  FqElem nonsquare_;
};

/// Field homomorphism sub -> sup fixed by sending x to the least root of sub's modulus.
class FieldEmbedding {
 public:
  FieldEmbedding(const FqField& sub, const FqField& sup) : sub_(sub), sup_(sup) {
    if (sub.p() != sup.p()) throw std::invalid_argument("embed: fields have different characteristic");
    if (sup.degree() % sub.degree() != 0) throw std::invalid_argument("embed: degree does not divide");
    std::optional<FqElem> root;
    for (std::int64_t v = 0; v < sup.order() && !root; ++v) {
      FqElem r = sup.element(v);
      if (sup.is_zero(eval_modulus(r))) root = r;
    }
    if (!root) throw std::logic_error("embed: no root of the subfield modulus");
    image_of_gen_ = *root;
    powers_.push_back(sup.one());
    for (int i = 1; i < sub.degree(); ++i) powers_.push_back(sup.mul(powers_.back(), image_of_gen_));
    if (sub.order() <= 4096) {
      for (std::int64_t v = 0; v < sub.order(); ++v) preimage_.emplace(sup_.index(apply(sub.element(v))), v);
    }
  }

  const FqField& sub() const { return sub_; }
  const FqField& sup() const { return sup_; }
  const FqElem& image_of_generator() const { return image_of_gen_; }

  FqElem apply(const FqElem& a) const {
    FqElem acc = sup_.zero();
    for (int i = 0; i < sub_.degree(); ++i)
      if (a.coeffs[i]) acc = sup_.add(acc, sup_.mul(sup_.from_int(a.coeffs[i]), powers_[i]));
    return acc;
  }

  /// The element of sub mapping to b, if any.
  std::optional<FqElem> preimage(const FqElem& b) const {
    if (!preimage_.empty()) {
      auto it = preimage_.find(sup_.index(b));
      if (it == preimage_.end()) return std::nullopt;
      return sub_.element(it->second);
    }
    for (std::int64_t v = 0; v < sub_.order(); ++v) {
      FqElem a = sub_.element(v);
      if (apply(a) == b) return a;
    }
    return std::nullopt;
  }

  /// Exhaustive (or sampled, for large subfields) homomorphism check.
  bool verify(std::uint64_t seed = 0xC0FFEE) const {
    auto check = [&](const FqElem& a, const FqElem& b) {
      return apply(sub_.add(a, b)) == sup_.add(apply(a), apply(b)) &&
             apply(sub_.mul(a, b)) == sup_.mul(apply(a), apply(b));
    };
    if (apply(sub_.one()) != sup_.one()) return false;
    if (sub_.order() <= 81) {
      for (std::int64_t u = 0; u < sub_.order(); ++u)
        for (std::int64_t v = 0; v < sub_.order(); ++v)
          if (!check(sub_.element(u), sub_.element(v))) return false;
      return true;
    }
    std::mt19937_64 rng(seed);
    for (int i = 0; i < 2000; ++i)
      if (!check(sub_.random(rng), sub_.random(rng))) return false;
    return true;
  }

 private:
  FqElem eval_modulus(const FqElem& r) const {
    FqElem acc = sup_.zero();
    const auto& m = sub_.modulus();
    for (int i = static_cast<int>(m.size()) - 1; i >= 0; --i) acc = sup_.add(sup_.mul(acc, r), sup_.from_int(m[i]));
    return acc;
  }

  FqField sub_;
  FqField sup_;
  FqElem image_of_gen_;
  std::vector<FqElem> powers_;
  std::map<std::int64_t, std::int64_t> preimage_;
};

inline FieldEmbedding embed_field(const FqField& sub, const FqField& sup) { return FieldEmbedding(sub, sup); }

}  // namespace gysin
