#pragma once

// Grothendieck-Witt classes of nondegenerate symmetric bilinear forms.
//
// Over F_q (q odd) a class is n<1> + eps*alpha with alpha = <g> - <1> for the
// field's chosen non-square g; rank n is an integer and eps lives in Z/2.
// Over R a class is a<1> + b<-1>; over C it is just a rank.
//
// The closed-form maps j^* / j_! below are checked in the test suite against
// the Gram-matrix oracles at the bottom of this file, which build the
// transferred forms from the trace and never consult the closed forms.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gysin/fq.hpp"

namespace gysin {

struct FFClass {
  std::int64_t rank = 0;
  int eps = 0;  // 0 or 1
  int p = 3;
  int d = 1;
  friend bool operator==(const FFClass&, const FFClass&) = default;
};

struct RealClass {
  std::int64_t plus = 0;
  std::int64_t minus = 0;
  friend bool operator==(const RealClass&, const RealClass&) = default;
};

struct ComplexClass {
  std::int64_t rank = 0;
  friend bool operator==(const ComplexClass&, const ComplexClass&) = default;
};

using GWClass = std::variant<FFClass, RealClass, ComplexClass>;

inline FFClass ff_class(std::int64_t rank, int eps, int p, int d) {
  return FFClass{rank, ((eps % 2) + 2) % 2, p, d};
}
inline FFClass ff_unit(int p, int d) { return ff_class(1, 0, p, d); }
inline FFClass ff_alpha(int p, int d) { return ff_class(0, 1, p, d); }
/// <g> = <1> + alpha.
inline FFClass ff_nonsquare(int p, int d) { return ff_class(1, 1, p, d); }

namespace detail {
inline void same_field(const FFClass& a, const FFClass& b) {
  if (a.p != b.p || a.d != b.d) throw std::invalid_argument("gw: classes over different finite fields");
}
}  // namespace detail

inline FFClass gw_add(const FFClass& a, const FFClass& b) {
  detail::same_field(a, b);
  return ff_class(a.rank + b.rank, a.eps + b.eps, a.p, a.d);
}
inline FFClass gw_neg(const FFClass& a) { return ff_class(-a.rank, a.eps, a.p, a.d); }
/// alpha^2 = -2 alpha = 0.
inline FFClass gw_mul(const FFClass& a, const FFClass& b) {
  detail::same_field(a, b);
  const std::int64_t t = a.rank * b.eps + b.rank * a.eps;
  return ff_class(a.rank * b.rank, static_cast<int>(((t % 2) + 2) % 2), a.p, a.d);
}

inline RealClass gw_add(const RealClass& a, const RealClass& b) { return {a.plus + b.plus, a.minus + b.minus}; }
inline RealClass gw_neg(const RealClass& a) { return {-a.plus, -a.minus}; }
inline RealClass gw_mul(const RealClass& a, const RealClass& b) {
  return {a.plus * b.plus + a.minus * b.minus, a.plus * b.minus + a.minus * b.plus};
}

inline ComplexClass gw_add(const ComplexClass& a, const ComplexClass& b) { return {a.rank + b.rank}; }
inline ComplexClass gw_neg(const ComplexClass& a) { return {-a.rank}; }
inline ComplexClass gw_mul(const ComplexClass& a, const ComplexClass& b) { return {a.rank * b.rank}; }

inline GWClass gw_add(const GWClass& a, const GWClass& b) {
  return std::visit(
      [&](const auto& x) -> GWClass {
        using T = std::decay_t<decltype(x)>;
        if (!std::holds_alternative<T>(b)) throw std::invalid_argument("gw_add: variant mismatch");
        return gw_add(x, std::get<T>(b));
      },
      a);
}
inline GWClass gw_neg(const GWClass& a) {
  return std::visit([](const auto& x) -> GWClass { return gw_neg(x); }, a);
}
inline GWClass gw_mul(const GWClass& a, const GWClass& b) {
  return std::visit(
      [&](const auto& x) -> GWClass {
        using T = std::decay_t<decltype(x)>;
        if (!std::holds_alternative<T>(b)) throw std::invalid_argument("gw_mul: variant mismatch");
        return gw_mul(x, std::get<T>(b));
      },
      a);
}

inline std::int64_t gw_rank(const GWClass& a) {
  return std::visit(
      [](const auto& x) -> std::int64_t {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, RealClass>)
          return x.plus + x.minus;
        else
          return x.rank;
      },
      a);
}

/// Base change along F_q -> F_{q^e}: alpha survives iff e is odd.
inline FFClass j_star(const FFClass& a, int e) {
  if (e < 1) throw std::invalid_argument("j_star: extension degree must be >= 1");
  return ff_class(a.rank, e % 2 == 1 ? a.eps : 0, a.p, a.d * e);
}

/// Transfer along F_q -> F_{q^e}: <1> -> e<1> (+alpha if e even), alpha -> alpha.
inline FFClass j_shriek(const FFClass& a, int e) {
  if (e < 1) throw std::invalid_argument("j_shriek: extension degree must be >= 1");
  if (a.d % e != 0) throw std::invalid_argument("j_shriek: degree does not divide the field degree");
  const std::int64_t t = a.rank * (e % 2 == 0 ? 1 : 0) + a.eps;
  return ff_class(a.rank * e, static_cast<int>(((t % 2) + 2) % 2), a.p, a.d / e);
}

/// Class of F_{p^e} over F_p under the universal map from the Burnside ring.
inline FFClass euler_characteristic(int p, int e) {
  if (e < 1) throw std::invalid_argument("euler_characteristic: e must be >= 1");
  return ff_class(e, e % 2 == 0 ? 1 : 0, p, 1);
}

// ---------------------------------------------------------------------------
// Gram matrices.

using Gram = std::vector<std::vector<FqElem>>;

struct DegenerateForm : std::domain_error {
  using std::domain_error::domain_error;
};

inline FqElem determinant(const FqField& f, Gram m) {
  const std::size_t n = m.size();
  FqElem det = f.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && f.is_zero(m[piv][c])) ++piv;
    if (piv == n) return f.zero();
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = f.neg(det);
    }
    det = f.mul(det, m[c][c]);
    const FqElem inv = f.inv(m[c][c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (f.is_zero(m[r][c])) continue;
      const FqElem k = f.mul(m[r][c], inv);
      for (std::size_t j = c; j < n; ++j) m[r][j] = f.sub(m[r][j], f.mul(k, m[c][j]));
    }
  }
  return det;
}

inline void check_symmetric(const FqField& f, const Gram& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != m.size()) throw std::invalid_argument("gram: matrix is not square");
    for (std::size_t j = 0; j < i; ++j)
      if (!(m[i][j] == m[j][i])) throw std::invalid_argument("gram: matrix is not symmetric");
    for (const auto& x : m[i])
      if (static_cast<int>(x.coeffs.size()) != f.degree()) throw std::invalid_argument("gram: entry from another field");
  }
}

/// Rank and discriminant class; eps = 0 iff det is a square.
inline FFClass classify_gram(const FqField& f, const Gram& m) {
  check_symmetric(f, m);
  const FqElem det = determinant(f, m);
  if (f.is_zero(det)) throw DegenerateForm("classify_gram: form is degenerate");
  return ff_class(static_cast<std::int64_t>(m.size()), f.is_square(det) ? 0 : 1, f.p(), f.degree());
}

/// Diagonal entries of a congruent diagonal form (symmetric elimination, char != 2).
inline std::vector<FqElem> diagonalize(const FqField& f, Gram m) {
  check_symmetric(f, m);
  const std::size_t n = m.size();
  std::vector<FqElem> diag;
  for (std::size_t c = 0; c < n; ++c) {
    if (f.is_zero(m[c][c])) {
      std::size_t r = c + 1;
      while (r < n && f.is_zero(m[r][r])) ++r;
      if (r < n) {
        std::swap(m[r], m[c]);
        for (auto& row : m) std::swap(row[r], row[c]);
      } else {
        // All remaining diagonal entries vanish; e_c + e_j has value 2 b(e_c, e_j).
        std::size_t j = c + 1;
        while (j < n && f.is_zero(m[c][j])) ++j;
        if (j == n) throw DegenerateForm("diagonalize: form is degenerate");
        for (std::size_t k = 0; k < n; ++k) m[c][k] = f.add(m[c][k], m[j][k]);
        for (std::size_t k = 0; k < n; ++k) m[k][c] = f.add(m[k][c], m[k][j]);
      }
    }
    const FqElem inv = f.inv(m[c][c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (f.is_zero(m[r][c])) continue;
      const FqElem k = f.mul(m[r][c], inv);
      for (std::size_t j = c; j < n; ++j) m[r][j] = f.sub(m[r][j], f.mul(k, m[c][j]));
      for (std::size_t j = c; j < n; ++j) m[j][r] = f.sub(m[j][r], f.mul(k, m[j][c]));
    }
    diag.push_back(m[c][c]);
  }
  return diag;
}

/// Class of a diagonal form from its entries: rank plus the square class of the product.
inline FFClass classify_diagonal(const FqField& f, const std::vector<FqElem>& diag) {
  FqElem prod = f.one();
  for (const auto& x : diag) prod = f.mul(prod, x);
  if (f.is_zero(prod)) throw DegenerateForm("classify_diagonal: zero entry");
  return ff_class(static_cast<std::int64_t>(diag.size()), f.is_square(prod) ? 0 : 1, f.p(), f.degree());
}

inline Gram diagonal_gram(const FqField& f, const std::vector<FqElem>& entries) {
  Gram m(entries.size(), std::vector<FqElem>(entries.size(), f.zero()));
  for (std::size_t i = 0; i < entries.size(); ++i) m[i][i] = entries[i];
  return m;
}

/// Diagonal realization of a class of non-negative rank with rank >= eps.
inline std::vector<FqElem> realize_diagonal(const FqField& f, const FFClass& a) {
  if (a.rank < 0 || a.rank < a.eps) throw std::invalid_argument("realize_diagonal: class is virtual");
  std::vector<FqElem> out(static_cast<std::size_t>(a.rank), f.one());
  if (a.eps) out.back() = f.nonsquare();
  return out;
}

/// Gram matrix over sub of the transferred rank-1 form <u> on sup, on the basis 1, x, ..., x^(m-1)
/// of sup over the embedded sub where x generates sup. Entries are tr_{sup/sub}(u b_i b_j).
inline Gram trace_form_gram(const FieldEmbedding& emb, const FqElem& u) {
  const FqField& sub = emb.sub();
  const FqField& sup = emb.sup();
  const int m = sup.degree() / sub.degree();
  std::vector<FqElem> basis{sup.one()};
  for (int i = 1; i < m; ++i) basis.push_back(sup.mul(basis.back(), sup.gen()));
  Gram g(m, std::vector<FqElem>(m, sub.zero()));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const FqElem t = sup.trace_frobenius(sup.mul(u, sup.mul(basis[i], basis[j])), sub.degree());
      auto pre = emb.preimage(t);
      if (!pre) throw std::invalid_argument("trace_form_gram: trace does not lie in the subfield");
      g[i][j] = *pre;
    }
  }
  return g;
}

/// Scharlau transfer computed from Gram matrices over sub.
inline FFClass trace_transfer_oracle(const FFClass& a, const FqField& sub, const FqField& sup) {
  if (a.p != sup.p() || a.d != sup.degree()) throw std::invalid_argument("trace_transfer_oracle: class is not over sup");
  const FieldEmbedding emb(sub, sup);
  if (!emb.verify()) throw std::invalid_argument("trace_transfer_oracle: embedding is not a homomorphism");
  auto transfer_rank_one = [&](const FqElem& u) { return classify_gram(sub, trace_form_gram(emb, u)); };
  if (a.rank >= 0 && a.rank >= a.eps) {
    // One block-diagonal Gram matrix for the whole form.
    const auto entries = realize_diagonal(sup, a);
    const int m = sup.degree() / sub.degree();
    Gram big(entries.size() * m, std::vector<FqElem>(entries.size() * m, sub.zero()));
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const Gram blk = trace_form_gram(emb, entries[k]);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) big[k * m + i][k * m + j] = blk[i][j];
    }
    if (big.empty()) return ff_class(0, 0, sub.p(), sub.degree());
    return classify_gram(sub, big);
  }
  // Virtual class: (rank - eps)<1> + eps<g>, extended linearly.
  const FFClass one = transfer_rank_one(sup.one());
  const FFClass g = transfer_rank_one(sup.nonsquare());
  FFClass acc = ff_class(0, 0, sub.p(), sub.degree());
  const std::int64_t ones = a.rank - a.eps;
  for (std::int64_t i = 0; i < (ones < 0 ? -ones : ones); ++i) acc = gw_add(acc, ones < 0 ? gw_neg(one) : one);
  if (a.eps) acc = gw_add(acc, g);
  return acc;
}

/// Base change computed by embedding a diagonal realization into sup and classifying there.
inline FFClass base_change_oracle(const FFClass& a, const FqField& sub, const FqField& sup) {
  if (a.p != sub.p() || a.d != sub.degree()) throw std::invalid_argument("base_change_oracle: class is not over sub");
  const FieldEmbedding emb(sub, sup);
  auto embed = [&](const std::vector<FqElem>& diag) {
    std::vector<FqElem> out;
    for (const auto& x : diag) out.push_back(emb.apply(x));
    return out;
  };
  if (a.rank >= 1 && a.rank >= a.eps) return classify_gram(sup, diagonal_gram(sup, embed(realize_diagonal(sub, a))));
  const FFClass one = classify_gram(sup, diagonal_gram(sup, {sup.one()}));
  const FFClass g = classify_gram(sup, diagonal_gram(sup, {emb.apply(sub.nonsquare())}));
  FFClass acc = ff_class(0, 0, sup.p(), sup.degree());
  const std::int64_t ones = a.rank - a.eps;
  for (std::int64_t i = 0; i < (ones < 0 ? -ones : ones); ++i) acc = gw_add(acc, ones < 0 ? gw_neg(one) : one);
  if (a.eps) acc = gw_add(acc, g);
  return acc;
}

// ---------------------------------------------------------------------------
// Formatting.

struct GWFormat {
  bool ascii = false;
  bool generator_style = false;  // write (n, 1) as (n-1)<1> + <g> when n >= 1
};

namespace detail {
inline std::string multiple(std::int64_t n, const std::string& sym) {
  if (n == 1) return sym;
  if (n == -1) return "-" + sym;
  return std::to_string(n) + sym;
}
}  // namespace detail

inline std::string format_gw(const FFClass& a, const GWFormat& fmt = {}) {
  const std::string one = fmt.ascii ? "<1>" : "⟨1⟩";
  const std::string g = fmt.ascii ? "<g>" : "⟨g⟩";
  const std::string alpha = fmt.ascii ? "alpha" : "α";
  std::vector<std::string> parts;
  if (fmt.generator_style && a.eps && a.rank >= 1) {
    if (a.rank > 1) parts.push_back(detail::multiple(a.rank - 1, one));
    parts.push_back(g);
  } else {
    if (a.rank != 0) parts.push_back(detail::multiple(a.rank, one));
    if (a.eps) parts.push_back(alpha);
  }
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += "+" + parts[i];
  return out;
}

inline std::string format_gw(const RealClass& a, const GWFormat& fmt = {}) {
  const std::string one = fmt.ascii ? "<1>" : "⟨1⟩";
  const std::string minus = fmt.ascii ? "<-1>" : "⟨−1⟩";
  std::string out;
  if (a.plus != 0) out = detail::multiple(a.plus, one);
  if (a.minus != 0) {
    std::string m = detail::multiple(a.minus, minus);
    out += out.empty() || m[0] == '-' ? m : "+" + m;
  }
  return out.empty() ? "0" : out;
}

inline std::string format_gw(const ComplexClass& a, const GWFormat& = {}) { return std::to_string(a.rank); }

inline std::string format_gw(const GWClass& a, const GWFormat& fmt = {}) {
  return std::visit([&](const auto& x) { return format_gw(x, fmt); }, a);
}

}  // namespace gysin
