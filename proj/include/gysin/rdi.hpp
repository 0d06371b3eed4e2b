#pragma once

// Morphism expressions in C_E, their concrete syntax, and rewriting to sums
// of R_f o D_a o I_g.
//
// Grammar (composition is right to left, "f*g" means f o g):
//
//   expr   := term (("+" | "-") term)*
//   term   := int | [int "*"] factor ("*" factor)*
//   factor := "R(" id ")" | "I(" id ")" | "D(" id ")" | "id(" id ")" | "(" expr ")"
//
// A bare integer n denotes n times the identity; its object is inferred from
// the surrounding sum or composite. Names resolve against an Environment:
// R/I take maps, D takes elements, id takes G-sets.

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gysin/correspondence.hpp"
#include "gysin/serialize.hpp"

namespace gysin {

// ---------------------------------------------------------------------------
// Environment

template <GysinFunctor F>
struct Environment {
  F functor;
  std::map<std::string, GroupPtr> groups;
  std::map<std::string, GSet> gsets;
  std::map<std::string, GMap> maps;
  std::map<std::string, ElemOf<F>> elements;

  NameTable names() const {
    NameTable t;
    for (const auto& [n, g] : groups) t.groups.emplace_back(g, n);
    for (const auto& [n, x] : gsets) t.gsets.emplace_back(x, n);
    return t;
  }

  /// Environment id of a G-set, or a description by size.
  std::string object_name(const GSet& x) const {
    for (const auto& [n, y] : gsets)
      if (x == y) return n;
    return "<G-set of size " + std::to_string(x.size()) + ">";
  }

  std::optional<std::string> map_name(const GMap& f) const {
    for (const auto& [n, m] : maps)
      if (m.src() == f.src() && m.dst() == f.dst() && m.table() == f.table()) return n;
    return std::nullopt;
  }
};

/// Reads {"groups", "gsets", "gmaps" (or "maps"), "elements"}. Elements are
/// {"object": gset id, "value": element JSON}.
template <GysinFunctor F>
Environment<F> load_environment(const F& e, const json& j) {
  if (!j.is_object()) throw DataError("environment: expected a JSON object");
  Environment<F> env{e, {}, {}, {}, {}};
  if (j.contains("groups"))
    for (const auto& [name, g] : j.at("groups").items())
      env.groups[name] = g.is_string() ? inline_groups()(g) : group_from_json(g, name);

  GroupResolver groups = [&env](const json& r) -> GroupPtr {
    if (r.is_string()) {
      auto it = env.groups.find(r.get<std::string>());
      if (it != env.groups.end()) return it->second;
    }
    return inline_groups()(r);
  };
  if (j.contains("gsets"))
    for (const auto& [name, x] : j.at("gsets").items()) env.gsets[name] = gset_from_json(x, groups);

  GSetResolver gsets = [&env, groups](const json& r) -> GSet {
    if (r.is_string()) {
      auto it = env.gsets.find(r.get<std::string>());
      if (it == env.gsets.end()) throw DataError("unknown gset id \"" + r.get<std::string>() + "\"");
      return it->second;
    }
    return gset_from_json(r, groups);
  };
  for (const char* key : {"gmaps", "maps"})
    if (j.contains(key))
      for (const auto& [name, m] : j.at(key).items()) {
        if (env.maps.count(name)) throw DataError("environment: map \"" + name + "\" defined twice");
        env.maps.emplace(name, gmap_from_json(m, gsets));
      }
  if (j.contains("elements"))
    for (const auto& [name, el] : j.at("elements").items()) {
      if (!el.is_object() || !el.contains("object") || !el.contains("value"))
        throw DataError("element \"" + name + "\": expected {\"object\", \"value\"}");
      const GSet base = gsets(el.at("object"));
      if (!e.supports(base.group_ptr()))
        throw DataError("element \"" + name + "\": functor " + e.name() + " does not support this group");
      env.elements.emplace(name, element_from_json(e, base, el.at("value"), gsets));
    }
  for (const auto& [name, x] : env.gsets)
    if (!e.supports(x.group_ptr())) throw DataError("gset \"" + name + "\": functor " + e.name() + " does not support its group");
  return env;
}

// ---------------------------------------------------------------------------
// Expressions

struct ExprError : std::runtime_error {
  enum class Kind { Syntax, UnknownIdentifier, Composability, Type };
  Kind kind;
  std::size_t position;  ///< offset into the source text
  ExprError(Kind k, std::size_t pos, const std::string& msg) : std::runtime_error(msg), kind(k), position(pos) {}
};

/// Source line with a caret under the error position.
inline std::string caret_diagnostic(const std::string& text, const ExprError& err) {
  return text + "\n" + std::string(std::min(err.position, text.size()), ' ') + "^ " + err.what();
}

struct MorExpr {
  enum class Kind { R, I, D, Id, Scalar, Comp, Sum };
  Kind kind = Kind::Scalar;
  std::string name;                  ///< R, I, D, Id
  std::int64_t value = 0;            ///< Scalar
  std::vector<MorExpr> children;     ///< Comp (written order), Sum
  std::vector<std::int64_t> coeffs;  ///< Sum, one per child
  std::size_t pos = 0;
  std::optional<GSet> dom, cod;  ///< set by elaboration
};

inline std::string to_string(const MorExpr& e) {
  switch (e.kind) {
    case MorExpr::Kind::R: return "R(" + e.name + ")";
    case MorExpr::Kind::I: return "I(" + e.name + ")";
    case MorExpr::Kind::D: return "D(" + e.name + ")";
    case MorExpr::Kind::Id: return "id(" + e.name + ")";
    case MorExpr::Kind::Scalar: return std::to_string(e.value);
    case MorExpr::Kind::Comp: {
      std::string s;
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        const auto& c = e.children[i];
        const bool wrap = c.kind == MorExpr::Kind::Sum || c.kind == MorExpr::Kind::Scalar;
        s += (i ? "*" : "") + (wrap ? "(" + to_string(c) + ")" : to_string(c));
      }
      return s;
    }
    case MorExpr::Kind::Sum: {
      std::string s;
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        const std::int64_t c = e.coeffs[i];
        if (i) s += c < 0 ? " - " : " + ";
        else if (c < 0) s += "-";
        const std::int64_t m = c < 0 ? -c : c;
        const auto& ch = e.children[i];
        const std::string body = ch.kind == MorExpr::Kind::Sum ? "(" + to_string(ch) + ")" : to_string(ch);
        if (ch.kind == MorExpr::Kind::Scalar) s += std::to_string(m * ch.value);
        else s += m == 1 ? body : std::to_string(m) + "*" + body;
      }
      return s;
    }
  }
  return {};
}

namespace detail {

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  MorExpr parse() {
    MorExpr e = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return e;
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ExprError(ExprError::Kind::Syntax, i_, "syntax error at column " + std::to_string(i_ + 1) + ": " + msg);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'" + (i_ < s_.size() ? "" : " before end of input"));
    ++i_;
  }
  bool at_digit() {
    skip();
    return i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]));
  }
  std::int64_t integer() {
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ - start > 15) {
      i_ = start;
      fail("integer too large");
    }
    return std::stoll(s_.substr(start, i_ - start));
  }
  std::string ident() {
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '\'')) ++i_;
    if (i_ == start) fail(i_ < s_.size() ? "expected an identifier" : "expected an identifier before end of input");
    return s_.substr(start, i_ - start);
  }

  MorExpr expr() {
    MorExpr sum;
    sum.kind = MorExpr::Kind::Sum;
    skip();
    sum.pos = i_;
    std::int64_t sign = 1;
    if (peek('-')) {
      ++i_;
      sign = -1;
    }
    while (true) {
      auto [c, t] = term();
      sum.coeffs.push_back(sign * c);
      sum.children.push_back(std::move(t));
      if (peek('+')) sign = 1;
      else if (peek('-')) sign = -1;
      else break;
      ++i_;
    }
    if (sum.children.size() == 1 && sum.coeffs[0] == 1) return std::move(sum.children[0]);
    return sum;
  }

  std::pair<std::int64_t, MorExpr> term() {
    skip();
    const std::size_t start = i_;
    std::int64_t c = 1;
    if (at_digit()) {
      c = integer();
      if (!peek('*')) {
        MorExpr s;
        s.kind = MorExpr::Kind::Scalar;
        s.value = c;
        s.pos = start;
        return {1, s};
      }
      ++i_;
    }
    std::vector<MorExpr> fs{factor()};
    while (peek('*')) {
      ++i_;
      fs.push_back(factor());
    }
    if (fs.size() == 1) return {c, std::move(fs[0])};
    MorExpr comp;
    comp.kind = MorExpr::Kind::Comp;
    comp.pos = start;
    comp.children = std::move(fs);
    return {c, comp};
  }

  MorExpr factor() {
    skip();
    const std::size_t start = i_;
    if (peek('(')) {
      ++i_;
      MorExpr e = expr();
      expect(')');
      return e;
    }
    if (at_digit()) {
      MorExpr s;
      s.kind = MorExpr::Kind::Scalar;
      s.value = integer();
      s.pos = start;
      return s;
    }
    const std::string head = ident();
    MorExpr a;
    a.pos = start;
    if (head == "R") a.kind = MorExpr::Kind::R;
    else if (head == "I") a.kind = MorExpr::Kind::I;
    else if (head == "D") a.kind = MorExpr::Kind::D;
    else if (head == "id") a.kind = MorExpr::Kind::Id;
    else {
      i_ = start;
      fail("expected R(, I(, D(, id( or '(' but found \"" + head + "\"");
    }
    expect('(');
    a.name = ident();
    expect(')');
    return a;
  }
};

template <GysinFunctor F>
class Elaborator {
 public:
  explicit Elaborator(const Environment<F>& env) : env_(env) {}

  using Type = std::pair<GSet, GSet>;  // (dom, cod)

  /// Sets dom/cod everywhere. `expected` fixes the type of otherwise untyped scalars.
  void run(MorExpr& e, const std::optional<Type>& expected) {
    infer(e);
    if (!typed(e)) {
      if (!expected) throw ExprError(ExprError::Kind::Type, e.pos, "cannot infer the object of a bare integer");
      assign(e, *expected);
    } else if (expected && !(*e.dom == expected->first && *e.cod == expected->second)) {
      throw ExprError(ExprError::Kind::Type, e.pos,
                      "expression has type " + describe(*e.dom, *e.cod) + " but " +
                          describe(expected->first, expected->second) + " was expected");
    }
  }

 private:
  const Environment<F>& env_;

  static bool typed(const MorExpr& e) { return e.dom.has_value(); }

  std::string describe(const GSet& d, const GSet& c) const { return env_.object_name(d) + " -> " + env_.object_name(c); }

  [[noreturn]] void unknown(const MorExpr& e, const char* what) const {
    throw ExprError(ExprError::Kind::UnknownIdentifier, e.pos, std::string("unknown ") + what + " \"" + e.name + "\"");
  }

  /// Bottom-up typing; scalars stay untyped until a neighbour fixes them.
  void infer(MorExpr& e) {
    switch (e.kind) {
      case MorExpr::Kind::R:
      case MorExpr::Kind::I: {
        auto it = env_.maps.find(e.name);
        if (it == env_.maps.end()) unknown(e, "map");
        const bool r = e.kind == MorExpr::Kind::R;
        e.dom = r ? it->second.src() : it->second.dst();
        e.cod = r ? it->second.dst() : it->second.src();
        return;
      }
      case MorExpr::Kind::D: {
        auto it = env_.elements.find(e.name);
        if (it == env_.elements.end()) unknown(e, "element");
        e.dom = e.cod = env_.functor.base(it->second);
        return;
      }
      case MorExpr::Kind::Id: {
        auto it = env_.gsets.find(e.name);
        if (it == env_.gsets.end()) unknown(e, "G-set");
        e.dom = e.cod = it->second;
        return;
      }
      case MorExpr::Kind::Scalar: return;
      case MorExpr::Kind::Sum: {
        for (auto& c : e.children) infer(c);
        const MorExpr* first = nullptr;
        for (const auto& c : e.children)
          if (typed(c)) {
            if (!first) first = &c;
            else if (!(*c.dom == *first->dom && *c.cod == *first->cod))
              throw ExprError(ExprError::Kind::Type, c.pos,
                              "cannot add " + describe(*c.dom, *c.cod) + " to " + describe(*first->dom, *first->cod));
          }
        if (first) assign(e, {*first->dom, *first->cod});
        return;
      }
      case MorExpr::Kind::Comp: {
        for (auto& c : e.children) infer(c);
        const auto n = e.children.size();
        // Adjacent typed factors must meet; untyped runs take the object next to them.
        for (std::size_t i = 0; i + 1 < n; ++i) {
          auto& l = e.children[i];
          auto& r = e.children[i + 1];
          if (typed(l) && typed(r) && !(*l.dom == *r.cod))
            throw ExprError(ExprError::Kind::Composability, l.pos,
                            "cannot compose " + to_string(l) + " : " + describe(*l.dom, *l.cod) + " after " + to_string(r) +
                                " : " + describe(*r.dom, *r.cod) + " (" + env_.object_name(*l.dom) + " is not " +
                                env_.object_name(*r.cod) + ")");
        }
        bool changed = true;
        while (changed) {
          changed = false;
          for (std::size_t i = 0; i < n; ++i) {
            auto& c = e.children[i];
            if (typed(c)) continue;
            if (i + 1 < n && typed(e.children[i + 1])) {
              assign(c, {*e.children[i + 1].cod, *e.children[i + 1].cod});
              changed = true;
            } else if (i > 0 && typed(e.children[i - 1])) {
              assign(c, {*e.children[i - 1].dom, *e.children[i - 1].dom});
              changed = true;
            }
          }
        }
        if (typed(e.children.front())) {
          e.dom = e.children.back().dom;
          e.cod = e.children.front().cod;
        }
        return;
      }
    }
  }

  /// Pushes a type down into untyped scalars.
  void assign(MorExpr& e, const Type& t) {
    if (typed(e) && e.kind != MorExpr::Kind::Sum) return;
    e.dom = t.first;
    e.cod = t.second;
    if (e.kind == MorExpr::Kind::Scalar && e.value != 0 && !(t.first == t.second))
      throw ExprError(ExprError::Kind::Type, e.pos,
                      "a nonzero integer needs an endomorphism type, not " + describe(t.first, t.second));
    if (e.kind == MorExpr::Kind::Sum)
      for (auto& c : e.children) assign(c, t);
    if (e.kind == MorExpr::Kind::Comp)
      for (auto& c : e.children) assign(c, {t.first, t.first});
  }
};

}  // namespace detail

/// Parses and elaborates against `env`. Throws ExprError.
template <GysinFunctor F>
MorExpr parse_expr(const std::string& text, const Environment<F>& env,
                   const std::optional<std::pair<GSet, GSet>>& expected = std::nullopt) {
  MorExpr e = detail::Parser(text).parse();
  detail::Elaborator<F>(env).run(e, expected);
  return e;
}

// ---------------------------------------------------------------------------
// Evaluation

template <GysinFunctor F>
Correspondence<F> eval_expr(const Environment<F>& env, const MorExpr& x) {
  const F& e = env.functor;
  if (!x.dom || !x.cod) throw std::invalid_argument("eval_expr: expression is not elaborated");
  switch (x.kind) {
    case MorExpr::Kind::R: return lift_r(e, env.maps.at(x.name));
    case MorExpr::Kind::I: return lift_i(e, env.maps.at(x.name));
    case MorExpr::Kind::D: return lift_d(e, env.elements.at(x.name));
    case MorExpr::Kind::Id: return identity(e, env.gsets.at(x.name));
    case MorExpr::Kind::Scalar:
      if (x.value == 0) return zero_correspondence(e, *x.dom, *x.cod);
      return scale(e, identity(e, *x.dom), x.value);
    case MorExpr::Kind::Sum: {
      auto acc = zero_correspondence(e, *x.dom, *x.cod);
      for (std::size_t i = 0; i < x.children.size(); ++i) acc = add(e, acc, scale(e, eval_expr(env, x.children[i]), x.coeffs[i]));
      return acc;
    }
    case MorExpr::Kind::Comp: {
      const auto& ch = x.children;
      // R(f) D(a) I(g) directly as ((f, g) : Z -> Y x X)_!(a).
      if (ch.size() == 3 && ch[0].kind == MorExpr::Kind::R && ch[1].kind == MorExpr::Kind::D && ch[2].kind == MorExpr::Kind::I)
        return from_triple(e, env.maps.at(ch[0].name), env.elements.at(ch[1].name), env.maps.at(ch[2].name));
      auto acc = eval_expr(env, ch.back());
      for (std::size_t i = ch.size() - 1; i-- > 0;) acc = compose(e, eval_expr(env, ch[i]), acc);
      return acc;
    }
  }
  throw std::logic_error("eval_expr: unreachable");
}

// ---------------------------------------------------------------------------
// Normal forms

template <GysinFunctor F>
struct RDITerm {
  std::int64_t coeff;
  GMap f;  ///< Z -> Y
  ElemOf<F> a;
  GMap g;  ///< Z -> X
};

template <GysinFunctor F>
struct NormalForm {
  GSet dom, cod;
  std::vector<RDITerm<F>> terms;
};

struct NormalizeOptions {
  bool rule_d = true;  ///< shortcut R_f D_a I_f -> D(f_! a)
};

namespace detail {

template <GysinFunctor F>
struct Letter {
  enum class Kind { R, I, D };
  Kind kind;
  GMap map;                      // R, I
  std::optional<ElemOf<F>> elem;  // D

  GSet dom(const F& e) const { return kind == Kind::R ? map.src() : kind == Kind::I ? map.dst() : e.base(*elem); }
  GSet cod(const F& e) const { return kind == Kind::R ? map.dst() : kind == Kind::I ? map.src() : e.base(*elem); }
};

/// A composite word, written left to right (leftmost applied last).
template <GysinFunctor F>
struct Word {
  std::int64_t coeff;
  GSet dom, cod;
  std::vector<Letter<F>> letters;
};

template <GysinFunctor F>
void expand(const Environment<F>& env, const MorExpr& x, std::int64_t coeff, std::vector<Word<F>>& out) {
  using K = MorExpr::Kind;
  using LK = typename Letter<F>::Kind;
  if (coeff == 0) return;
  switch (x.kind) {
    case K::R: out.push_back({coeff, *x.dom, *x.cod, {{LK::R, env.maps.at(x.name), std::nullopt}}}); return;
    case K::I: out.push_back({coeff, *x.dom, *x.cod, {{LK::I, env.maps.at(x.name), std::nullopt}}}); return;
    case K::D: out.push_back({coeff, *x.dom, *x.cod, {{LK::D, GMap{}, env.elements.at(x.name)}}}); return;
    case K::Id: out.push_back({coeff, *x.dom, *x.cod, {}}); return;
    case K::Scalar:
      if (x.value != 0) out.push_back({coeff * x.value, *x.dom, *x.cod, {}});
      return;
    case K::Sum:
      for (std::size_t i = 0; i < x.children.size(); ++i) expand(env, x.children[i], coeff * x.coeffs[i], out);
      return;
    case K::Comp: {
      // Distribute: product of the children's expansions, in written order.
      std::vector<Word<F>> acc{{coeff, *x.children.back().dom, *x.children.back().dom, {}}};
      for (std::size_t i = x.children.size(); i-- > 0;) {
        std::vector<Word<F>> part;
        expand(env, x.children[i], 1, part);
        std::vector<Word<F>> next;
        for (const auto& p : part)
          for (const auto& w : acc) {
            Word<F> c{p.coeff * w.coeff, w.dom, p.cod, p.letters};
            c.letters.insert(c.letters.end(), w.letters.begin(), w.letters.end());
            next.push_back(std::move(c));
          }
        acc = std::move(next);
      }
      for (auto& w : acc) out.push_back(std::move(w));
      return;
    }
  }
}

/// One rewrite on the leftmost applicable position; false when the word is R* D* I*.
template <GysinFunctor F>
bool rewrite_step(const F& e, const Word<F>& w, const NormalizeOptions& opt, std::vector<Word<F>>& out) {
  using LK = typename Letter<F>::Kind;
  const auto& L = w.letters;
  auto replaced = [&](std::size_t i, std::size_t len, std::vector<Letter<F>> mid) {
    Word<F> c{w.coeff, w.dom, w.cod, {}};
    c.letters.insert(c.letters.end(), L.begin(), L.begin() + i);
    c.letters.insert(c.letters.end(), mid.begin(), mid.end());
    c.letters.insert(c.letters.end(), L.begin() + i + len, L.end());
    return c;
  };
  if (opt.rule_d) {
    for (std::size_t i = 0; i + 1 < L.size(); ++i) {
      if (L[i].kind != LK::R) continue;
      // R_f D_a I_f -> D(f_! a), R_f I_f -> D(f_! 1).
      if (i + 2 < L.size() && L[i + 1].kind == LK::D && L[i + 2].kind == LK::I && L[i + 2].map == L[i].map) {
        out.push_back(replaced(i, 3, {{LK::D, GMap{}, e.pushforward(L[i].map, *L[i + 1].elem)}}));
        return true;
      }
      if (L[i + 1].kind == LK::I && L[i + 1].map == L[i].map) {
        out.push_back(replaced(i, 2, {{LK::D, GMap{}, e.pushforward(L[i].map, e.one(L[i].map.src()))}}));
        return true;
      }
    }
  }
  for (std::size_t i = 0; i + 1 < L.size(); ++i) {
    const auto& l = L[i];
    const auto& r = L[i + 1];
    if (l.kind == LK::I && r.kind == LK::R) {
      // I_f o R_g = sum over orbits P_k of the pullback of R_{p|P_k} o I_{q|P_k}.
      const auto pb = pullback_gset(l.map, r.map);
      for (const auto& orb : orbit_decompose(pb.object))
        out.push_back(replaced(i, 2, {{LK::R, compose(pb.p, orb.inclusion), std::nullopt}, {LK::I, compose(pb.q, orb.inclusion), std::nullopt}}));
      return true;
    }
    if (l.kind == LK::D && r.kind == LK::R) {
      out.push_back(replaced(i, 2, {r, {LK::D, GMap{}, e.pullback(r.map, *l.elem)}}));
      return true;
    }
    if (l.kind == LK::I && r.kind == LK::D) {
      out.push_back(replaced(i, 2, {{LK::D, GMap{}, e.pullback(l.map, *r.elem)}, l}));
      return true;
    }
  }
  return false;
}

template <GysinFunctor F>
RDITerm<F> collapse(const F& e, const Word<F>& w) {
  using LK = typename Letter<F>::Kind;
  std::size_t i = 0;
  const auto& L = w.letters;
  std::optional<GMap> f, g;
  std::optional<ElemOf<F>> a;
  for (; i < L.size() && L[i].kind == LK::R; ++i) f = f ? compose(*f, L[i].map) : L[i].map;
  for (; i < L.size() && L[i].kind == LK::D; ++i) a = a ? e.mul(*a, *L[i].elem) : *L[i].elem;
  for (; i < L.size() && L[i].kind == LK::I; ++i) g = g ? compose(L[i].map, *g) : L[i].map;
  if (i != L.size()) throw std::logic_error("collapse: word is not in R* D* I* form");
  const GSet z = f ? f->src() : a ? e.base(*a) : g ? g->src() : w.dom;
  return {w.coeff, f ? *f : identity_map(z), a ? *a : e.one(z), g ? *g : identity_map(z)};
}

}  // namespace detail

/// Rewrites x into a sum of R_f o D_a o I_g. Words are processed in expansion
/// order and each rewrite acts on the leftmost applicable position, so the
/// result is a function of the input.
template <GysinFunctor F>
NormalForm<F> normalize(const Environment<F>& env, const MorExpr& x, const NormalizeOptions& opt = {}) {
  if (!x.dom || !x.cod) throw std::invalid_argument("normalize: expression is not elaborated");
  std::vector<detail::Word<F>> work;
  detail::expand(env, x, 1, work);
  NormalForm<F> nf{*x.dom, *x.cod, {}};
  // Depth-first keeps the output order stable: each word's rewrites replace it in place.
  std::vector<detail::Word<F>> stack(work.rbegin(), work.rend());
  while (!stack.empty()) {
    detail::Word<F> w = std::move(stack.back());
    stack.pop_back();
    std::vector<detail::Word<F>> next;
    if (detail::rewrite_step(env.functor, w, opt, next)) {
      for (auto it = next.rbegin(); it != next.rend(); ++it) stack.push_back(std::move(*it));
    } else {
      nf.terms.push_back(detail::collapse(env.functor, w));
    }
  }
  return nf;
}

template <GysinFunctor F>
Correspondence<F> eval_normal_form(const F& e, const NormalForm<F>& nf) {
  auto acc = zero_correspondence(e, nf.dom, nf.cod);
  for (const auto& t : nf.terms) acc = add(e, acc, scale(e, from_triple(e, t.f, t.a, t.g), t.coeff));
  return acc;
}

/// Semantic equality. A side without an inferable type takes the other's.
template <GysinFunctor F>
bool expr_equal(const Environment<F>& env, const std::string& a, const std::string& b) {
  MorExpr ea = detail::Parser(a).parse();
  MorExpr eb = detail::Parser(b).parse();
  detail::Elaborator<F> el(env);
  std::optional<std::pair<GSet, GSet>> ta, tb;
  try {
    el.run(ea, std::nullopt);
    ta = std::pair{*ea.dom, *ea.cod};
  } catch (const ExprError& err) {
    if (err.kind != ExprError::Kind::Type) throw;
  }
  try {
    if (ta) {
      el.run(eb, ta);
    } else {
      el.run(eb, std::nullopt);
      tb = std::pair{*eb.dom, *eb.cod};
      el.run(ea, tb);
    }
  } catch (const ExprError& err) {
    if (err.kind != ExprError::Kind::Type || (!ta && !tb)) throw;
    throw std::invalid_argument(std::string("expr_equal: ") + err.what());
  }
  if (!(*ea.dom == *eb.dom) || !(*ea.cod == *eb.cod)) throw std::invalid_argument("expr_equal: expressions have different types");
  return eval_expr(env, ea) == eval_expr(env, eb);
}

// ---------------------------------------------------------------------------
// Random expressions

namespace detail {

template <GysinFunctor F>
class ExprGenerator {
 public:
  ExprGenerator(const Environment<F>& env, Rng& rng) : env_(env), rng_(rng) {}

  /// A random well-typed expression starting at `dom`, of AST depth <= depth.
  MorExpr from(const GSet& dom, int depth) {
    const int choice = depth <= 1 ? 0 : pick(4);
    if (choice == 0 || choice == 1) return atom(dom);
    if (choice == 2) {
      MorExpr comp;
      comp.kind = MorExpr::Kind::Comp;
      const int len = 2 + pick(2);
      GSet cur = dom;
      std::vector<MorExpr> parts;
      for (int i = 0; i < len; ++i) {
        parts.push_back(from(cur, depth - 1));
        cur = *parts.back().cod;
      }
      comp.children.assign(parts.rbegin(), parts.rend());
      comp.dom = dom;
      comp.cod = cur;
      return comp;
    }
    // Sum of e and e o (an endomorphism of dom), with small coefficients.
    MorExpr first = from(dom, depth - 1);
    MorExpr endo_then;
    endo_then.kind = MorExpr::Kind::Comp;
    endo_then.children = {first, endo(dom, depth - 2)};
    endo_then.dom = dom;
    endo_then.cod = first.cod;
    MorExpr sum;
    sum.kind = MorExpr::Kind::Sum;
    sum.dom = dom;
    sum.cod = first.cod;
    sum.children = {std::move(first), std::move(endo_then)};
    sum.coeffs = {coeff(), coeff()};
    return sum;
  }

 private:
  const Environment<F>& env_;
  Rng& rng_;

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  std::int64_t coeff() {
    static constexpr std::int64_t cs[] = {-2, -1, 1, 2, 3};
    return cs[pick(5)];
  }

  MorExpr atom(const GSet& dom) {
    std::vector<MorExpr> opts;
    for (const auto& [n, m] : env_.maps) {
      if (m.src() == dom) opts.push_back(make(MorExpr::Kind::R, n, m.src(), m.dst()));
      if (m.dst() == dom) opts.push_back(make(MorExpr::Kind::I, n, m.dst(), m.src()));
    }
    for (const auto& [n, a] : env_.elements)
      if (env_.functor.base(a) == dom) opts.push_back(make(MorExpr::Kind::D, n, dom, dom));
    for (const auto& [n, x] : env_.gsets)
      if (x == dom) opts.push_back(make(MorExpr::Kind::Id, n, dom, dom));
    if (opts.empty()) throw std::invalid_argument("random expression: no atom starts at " + env_.object_name(dom));
    return opts[pick(static_cast<int>(opts.size()))];
  }

  MorExpr endo(const GSet& x, int depth) {
    if (depth <= 1 || pick(2) == 0) {
      std::vector<MorExpr> opts;
      for (const auto& [n, a] : env_.elements)
        if (env_.functor.base(a) == x) opts.push_back(make(MorExpr::Kind::D, n, x, x));
      for (const auto& [n, y] : env_.gsets)
        if (y == x) opts.push_back(make(MorExpr::Kind::Id, n, x, x));
      if (!opts.empty()) return opts[pick(static_cast<int>(opts.size()))];
    }
    // Out and back: I(f) o R(f) or R(f) o I(f) through a neighbouring object.
    std::vector<MorExpr> loops;
    for (const auto& [n, m] : env_.maps) {
      if (m.src() == x) loops.push_back(pair(make(MorExpr::Kind::I, n, m.dst(), m.src()), make(MorExpr::Kind::R, n, m.src(), m.dst())));
      if (m.dst() == x) loops.push_back(pair(make(MorExpr::Kind::R, n, m.src(), m.dst()), make(MorExpr::Kind::I, n, m.dst(), m.src())));
    }
    if (loops.empty()) {
      MorExpr s;
      s.kind = MorExpr::Kind::Scalar;
      s.value = 1 + pick(3);
      s.dom = s.cod = x;
      return s;
    }
    return loops[pick(static_cast<int>(loops.size()))];
  }

  static MorExpr make(MorExpr::Kind k, const std::string& name, const GSet& d, const GSet& c) {
    MorExpr e;
    e.kind = k;
    e.name = name;
    e.dom = d;
    e.cod = c;
    return e;
  }
  static MorExpr pair(MorExpr l, MorExpr r) {
    MorExpr c;
    c.kind = MorExpr::Kind::Comp;
    c.dom = r.dom;
    c.cod = l.cod;
    c.children = {std::move(l), std::move(r)};
    return c;
  }
};

}  // namespace detail

/// Random well-typed expression of depth <= depth whose domain is a random environment object.
template <GysinFunctor F>
MorExpr random_expr(const Environment<F>& env, Rng& rng, int depth = 5) {
  if (env.gsets.empty()) throw std::invalid_argument("random_expr: environment has no G-sets");
  auto it = env.gsets.begin();
  std::advance(it, std::uniform_int_distribution<std::size_t>(0, env.gsets.size() - 1)(rng));
  return detail::ExprGenerator<F>(env, rng).from(it->second, depth);
}

// ---------------------------------------------------------------------------
// Printing

/// "c * R(f) D(a) I(g)" with environment names where available.
template <GysinFunctor F>
std::string format_term(const Environment<F>& env, const RDITerm<F>& t, const FormatOptions& opt = {}) {
  auto map_text = [&](const GMap& m) {
    if (auto n = env.map_name(m)) return *n;
    if (m.is_iso() && m.src() == m.dst() && m == identity_map(m.src())) return std::string("id");
    std::string s = env.object_name(m.src()) + "->" + env.object_name(m.dst()) + " [";
    for (int i = 0; i < m.src().size(); ++i) s += (i ? "," : "") + std::to_string(m(i));
    return s + "]";
  };
  return std::to_string(t.coeff) + " * R(" + map_text(t.f) + ") D(" + format_element(env.functor, t.a, opt) + ") I(" +
         map_text(t.g) + ")";
}

template <GysinFunctor F>
json normal_form_to_json(const Environment<F>& env, const NormalForm<F>& nf) {
  const NameTable names = env.names();
  json terms = json::array();
  for (const auto& t : nf.terms)
    terms.push_back({{"coeff", t.coeff},
                     {"f", gmap_to_json(t.f, &names)},
                     {"a", element_to_json(t.a, &names)},
                     {"g", gmap_to_json(t.g, &names)}});
  return {{"dom", gset_ref(nf.dom, &names)}, {"cod", gset_ref(nf.cod, &names)}, {"terms", terms}};
}

}  // namespace gysin
