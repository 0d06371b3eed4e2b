#pragma once

// Worked examples recomputed from the engine: transfer tables over finite
// fields, Euler characteristics, the R/C and Z/2 categories, the Z/8 tower,
// and the matrix model. Every row compares two independent computations or
// an engine computation against a stated relation; nothing is stored.

#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "gysin/burnside.hpp"
#include "gysin/correspondence.hpp"
#include "gysin/fq.hpp"
#include "gysin/gw.hpp"
#include "gysin/gw_functor.hpp"

namespace gysin {

struct ReproRow {
  std::string label;
  std::string value;
  bool pass = false;
  std::string note;  ///< empty unless something needs flagging
  std::string sep;   ///< printed between label and value; empty hides the value on success
};

struct ReproTable {
  std::string title;
  std::vector<ReproRow> rows;

  bool pass() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    return true;
  }

  void add(std::string label, std::string value, bool ok, std::string note = {}, std::string sep = {}) {
    rows.push_back({std::move(label), std::move(value), ok, std::move(note), std::move(sep)});
  }

  /// "label=value OK", or "label OK" for relations, with the computed value on failure.
  std::string format_row(const ReproRow& r) const {
    std::string s = r.label + (r.sep.empty() ? "" : r.sep + r.value) + (r.pass ? " OK" : " FAIL");
    if (!r.pass && r.sep.empty() && !r.value.empty()) s += " (computed " + r.value + ")";
    if (!r.note.empty()) s += "  [" + r.note + "]";
    return s;
  }

  json to_json() const {
    json rs = json::array();
    for (const auto& r : rows) {
      json j{{"relation", r.label}, {"value", r.value}, {"status", r.pass ? "OK" : "FAIL"}};
      if (!r.note.empty()) j["note"] = r.note;
      rs.push_back(std::move(j));
    }
    return {{"table", title}, {"pass", pass()}, {"rows", rs}};
  }
};

namespace detail {

/// F_{p^d}, built once per process.
inline const FqField& cached_field(int p, int d) {
  static std::map<std::pair<int, int>, FqField> cache;
  auto it = cache.find({p, d});
  if (it == cache.end()) it = cache.emplace(std::pair{p, d}, FqField::build(p, d)).first;
  return it->second;
}

struct Symbols {
  bool ascii;
  std::string pi() const { return ascii ? "pi" : "π"; }
  std::string sigma() const { return ascii ? "sigma" : "σ"; }
  std::string alpha() const { return ascii ? "alpha" : "α"; }
  std::string circ() const { return ascii ? "*" : "∘"; }
  std::string one() const { return ascii ? "<1>" : "⟨1⟩"; }
  std::string qf(const std::string& x) const { return ascii ? "<" + x + ">" : "⟨" + x + "⟩"; }
  std::string R(const std::string& m) const { return ascii ? "R(" + m + ")" : "R" + m; }
  std::string I(const std::string& m) const { return ascii ? "I(" + m + ")" : "I" + m; }
  std::string sub(const std::string& base, int n) const { return base + "_" + std::to_string(n); }
};

inline std::string ff_text(const FFClass& a, bool ascii, const std::string& nonsquare = "g") {
  std::string s = format_gw(a, {.ascii = ascii, .generator_style = true});
  if (nonsquare != "g") {
    const std::string from = ascii ? "<g>" : "⟨g⟩";
    const std::string to = ascii ? "<" + nonsquare + ">" : "⟨" + nonsquare + "⟩";
    for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) s.replace(pos, from.size(), to);
  }
  return s;
}

/// Trivial-group set with n points.
inline GSet trivial_set(int n) {
  std::vector<int> row(n);
  std::iota(row.begin(), row.end(), 0);
  return GSet::from_rows(trivial_group(), {row});
}

/// The surjection G/H -> G/K (H inside K) sending the coset of 0 to the coset of 0.
inline GMap coset_projection(const GSet& x, const GSet& y) {
  std::vector<int> t(x.size(), -1);
  for (int g = 0; g < x.group().order(); ++g) t[x.act(g, 0)] = y.act(g, 0);
  return GMap(x, y, std::move(t));
}

inline GSet cyclic_orbit(const GroupPtr& g, int size) {
  for (const auto& h : g->subgroups())
    if (static_cast<int>(h.size()) * size == g->order()) return coset_gset(g, h);
  throw std::invalid_argument("no orbit of size " + std::to_string(size));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Finite fields

/// Base change and transfer along F_p -> F_{p^e} on <1> and on the chosen
/// nonsquares (g below, h above), closed form against the Gram-matrix oracle.
inline ReproTable gw_transfer_table(int p, int max_degree, bool ascii = false) {
  ReproTable t{"gw-table p=" + std::to_string(p), {}};
  const FqField& base = detail::cached_field(p, 1);
  const std::string one = ascii ? "<1>" : "⟨1⟩", g = ascii ? "<g>" : "⟨g⟩", h = ascii ? "<h>" : "⟨h⟩";
  for (int e = 1; e <= max_degree; ++e) {
    const FqField& top = detail::cached_field(p, e);
    const std::string pre = "e=" + std::to_string(e) + ": ";
    auto row = [&](const std::string& label, const FFClass& closed, const FFClass& oracle, const std::string& ns) {
      t.add(pre + label, detail::ff_text(closed, ascii, ns), closed == oracle,
            closed == oracle ? "" : "oracle gives " + detail::ff_text(oracle, ascii, ns), "=");
    };
    row("j*(" + one + ")", j_star(ff_unit(p, 1), e), base_change_oracle(ff_unit(p, 1), base, top), "h");
    row("j*(" + g + ")", j_star(ff_nonsquare(p, 1), e), base_change_oracle(ff_nonsquare(p, 1), base, top), "h");
    row("j!(" + one + ")", j_shriek(ff_unit(p, e), e), trace_transfer_oracle(ff_unit(p, e), base, top), "g");
    row("j!(" + h + ")", j_shriek(ff_nonsquare(p, e), e), trace_transfer_oracle(ff_nonsquare(p, e), base, top), "g");
  }
  return t;
}

/// The quadratic extension: j^*<1> = j^*<g> = <1>, j_!<1> = <1>+<g>, j_!<h> = 2<1>, all from Gram matrices.
inline ReproTable quadratic_extension_table(int p, bool ascii = false) {
  ReproTable t{"quadratic extension p=" + std::to_string(p), {}};
  const FqField& f1 = detail::cached_field(p, 1);
  const FqField& f2 = detail::cached_field(p, 2);
  const std::string one = ascii ? "<1>" : "⟨1⟩", g = ascii ? "<g>" : "⟨g⟩", h = ascii ? "<h>" : "⟨h⟩";
  const auto a = base_change_oracle(ff_unit(p, 1), f1, f2);
  t.add("j*(" + one + ") = " + one, detail::ff_text(a, ascii, "h"), a == ff_unit(p, 2));
  const auto b = base_change_oracle(ff_nonsquare(p, 1), f1, f2);
  t.add("j*(" + g + ") = " + one, detail::ff_text(b, ascii, "h"), b == ff_unit(p, 2));
  const auto c = trace_transfer_oracle(ff_unit(p, 2), f1, f2);
  t.add("j!(" + one + ") = " + one + "+" + g, detail::ff_text(c, ascii), c == gw_add(ff_unit(p, 1), ff_nonsquare(p, 1)));
  const auto d = trace_transfer_oracle(ff_nonsquare(p, 2), f1, f2);
  t.add("j!(" + h + ") = 2" + one, detail::ff_text(d, ascii), d == gw_add(ff_unit(p, 1), ff_unit(p, 1)));
  return t;
}

/// chi([E_e]) for the orbit E_e of size e, pushed to the point through the Burnside ring.
inline FFClass euler_of_orbit(int p, int e) {
  const GWFiniteFieldFunctor gw(p);
  const GSet x = regular_gset(cyclic_group(e));
  const auto v = chi(gw, burnside_canonicalize(terminal_map(x)));
  return std::get<FFClass>(v.components.at(0));
}

/// Euler characteristics for e <= max_e, the three kernel relations, and
/// multiplicativity over the orbit decomposition of E_e x E_f.
inline ReproTable euler_table(int p, int max_e, bool ascii = false) {
  ReproTable t{"euler p=" + std::to_string(p), {}};
  std::vector<FFClass> chi_e(max_e + 1);
  for (int e = 1; e <= max_e; ++e) {
    chi_e[e] = euler_of_orbit(p, e);
    const FFClass expected = ff_class(e, e % 2 == 0 ? 1 : 0, p, 1);
    t.add("e=" + std::to_string(e) + ": " + (ascii ? "chi" : "χ"), format_gw(chi_e[e], {.ascii = ascii}), chi_e[e] == expected, "", "=");
  }
  auto E = [](int n) { return "E_" + std::to_string(n); };
  for (int n = 1; n + 3 <= max_e; ++n) {
    const FFClass rhs = gw_add(gw_add(chi_e[n + 2], chi_e[n + 1]), gw_neg(chi_e[n]));
    t.add(E(n + 3) + "=" + E(n + 2) + "+" + E(n + 1) + "-" + E(n), format_gw(chi_e[n + 3], {.ascii = ascii}), chi_e[n + 3] == rhs);
  }
  if (max_e >= 3) {
    t.add("2E_2=E_1+E_3", format_gw(gw_add(chi_e[2], chi_e[2]), {.ascii = ascii}),
          gw_add(chi_e[2], chi_e[2]) == gw_add(chi_e[1], chi_e[3]));
    t.add("E_3=3E_1", format_gw(chi_e[3], {.ascii = ascii}), chi_e[3] == gw_add(gw_add(chi_e[1], chi_e[1]), chi_e[1]));
  }
  const GWFiniteFieldFunctor gw(p);
  const std::string chi_sym = ascii ? "chi" : "χ";
  auto coords = [](const FFClass& a) { return "(" + std::to_string(a.rank) + "," + std::to_string(a.eps) + ")"; };
  for (int a = 1; a <= max_e; ++a)
    for (int b = a; b <= max_e; ++b) {
      const auto g = cyclic_group(std::lcm(a, b));
      const GSet prod = product_object(detail::cyclic_orbit(g, a), detail::cyclic_orbit(g, b));
      const auto v = gw.pushforward(terminal_map(prod), gw.one(prod));
      const FFClass lhs = std::get<FFClass>(v.components.at(0));
      const FFClass rhs = gw_mul(chi_e[a], chi_e[b]);
      t.add(chi_sym + "(" + E(a) + ")" + (ascii ? "*" : "·") + chi_sym + "(" + E(b) + ")",
            coords(chi_e[a]) + (ascii ? "*" : "·") + coords(chi_e[b]) + " = " + coords(lhs), lhs == rhs,
            lhs == rhs ? "" : "product splits as " + std::to_string(prod.orbit_count()) + " orbits", " = ");
    }
  return t;
}

/// chi([E_1]) and chi([E_2]) generate GW(F_p) = Z + Z/2: both (1,0) and (0,1)
/// are integer combinations of them.
inline ReproTable chi_generation_table(int p, bool ascii = false) {
  ReproTable t{"chi generation p=" + std::to_string(p), {}};
  const FFClass v1 = euler_of_orbit(p, 1), v2 = euler_of_orbit(p, 2);
  const std::string chi_sym = ascii ? "chi" : "χ";
  auto coords = [](const FFClass& a) { return "(" + std::to_string(a.rank) + "," + std::to_string(a.eps) + ")"; };
  t.add(chi_sym + "(E_1)", coords(v1), true, "", " = ");
  t.add(chi_sym + "(E_2)", coords(v2), true, "", " = ");
  const std::int64_t bound = 2 * std::max<std::int64_t>({1, v1.rank < 0 ? -v1.rank : v1.rank, v2.rank < 0 ? -v2.rank : v2.rank}) + 2;
  auto reachable = [&](const FFClass& target) {
    for (std::int64_t a = -bound; a <= bound; ++a)
      for (std::int64_t b = -bound; b <= bound; ++b) {
        const FFClass c = ff_class(a * v1.rank + b * v2.rank, static_cast<int>(a * v1.eps + b * v2.eps), p, 1);
        if (c == target) return true;
      }
    return false;
  };
  const bool ok = reachable(ff_unit(p, 1)) && reachable(ff_alpha(p, 1));
  t.add("generate Z+Z/2", ok ? "yes" : "no", ok);
  return t;
}

// ---------------------------------------------------------------------------
// Small categories

namespace detail {

/// Iπ∘Rπ = 1+σ on the regular Z/2-set; shared by the R/C and Burnside examples.
template <GysinFunctor F>
void add_c2_loop(ReproTable& t, const F& e, const GMap& pi, const GMap& s, bool ascii) {
  const Symbols y{ascii};
  const auto ir = compose(e, lift_i(e, pi), lift_r(e, pi));
  const auto expected = add(e, identity(e, pi.src()), lift_r(e, s));
  t.add(y.I(y.pi()) + y.circ() + y.R(y.pi()) + " = 1+" + y.sigma(), format_correspondence(e, ir, {.ascii = ascii}), ir == expected);
  const auto ss = compose(e, lift_r(e, s), lift_r(e, s));
  t.add(y.sigma() + "^2 = 1", format_correspondence(e, ss, {.ascii = ascii}), ss == identity(e, pi.src()));
  const auto rs = compose(e, lift_r(e, pi), lift_r(e, s));
  t.add(y.R(y.pi()) + y.circ() + y.sigma() + " = " + y.R(y.pi()), format_correspondence(e, rs, {.ascii = ascii}), rs == lift_r(e, pi));
}

template <GysinFunctor F>
void add_hom_ranks(ReproTable& t, const F& e, const GSet& big, const GSet& pt, const std::string& big_name,
                   const std::string& pt_name, int r_bb, int r_bp, int r_pb, int r_pp) {
  auto rank = [&](const GSet& x, const GSet& y) { return static_cast<int>(e.generators(product_object(y, x)).size()); };
  auto row = [&](const std::string& a, const std::string& b, int got, int want) {
    t.add("rank Hom(" + a + "," + b + ") = " + std::to_string(want), std::to_string(got), got == want);
  };
  row(big_name, big_name, rank(big, big), r_bb);
  row(big_name, pt_name, rank(big, pt), r_bp);
  row(pt_name, big_name, rank(pt, big), r_pb);
  row(pt_name, pt_name, rank(pt, pt), r_pp);
}

}  // namespace detail

/// GW over R and C, modelled as the Z/2-sets C = Z/2 and R = *.
template <GysinFunctor F = GWRealComplexFunctor>
ReproTable repro_real(const F& e = F{}, bool ascii = false) {
  ReproTable t{"real", {}};
  const detail::Symbols y{ascii};
  const auto g = cyclic_group(2);
  const GSet c = regular_gset(g), r = terminal_gset(g);
  const GMap pi = terminal_map(c);
  const GMap s = GMap(c, c, {1, 0});
  detail::add_c2_loop(t, e, pi, s, ascii);
  const auto ri = compose(e, lift_r(e, pi), lift_i(e, pi));
  const auto h = e.single(r, 0, RealClass{1, 1});
  t.add(y.R(y.pi()) + y.circ() + y.I(y.pi()) + " = " + y.one() + "+" + y.qf(ascii ? "-1" : "−1"),
        format_correspondence(e, ri, {.ascii = ascii}), ri == lift_d(e, h));
  detail::add_hom_ranks(t, e, c, r, "C", "R", 2, 1, 1, 2);
  const auto image = chi(e, burnside_canonicalize(pi));
  t.add((ascii ? std::string("chi([Z/2]) = ") : std::string("χ([ℤ/2]) = ")) + y.one() + "+" + y.qf(ascii ? "-1" : "−1"),
        format_element(e, image, {.ascii = ascii}), image == h);
  return t;
}

/// The Burnside category of Z/2 on the objects Z/2 and *.
template <GysinFunctor F = BurnsideFunctor>
ReproTable repro_burnside_c2(const F& e = F{}, bool ascii = false) {
  ReproTable t{"burnside-c2", {}};
  const detail::Symbols y{ascii};
  const auto g = cyclic_group(2);
  const GSet x = regular_gset(g), pt = terminal_gset(g);
  const GMap pi = terminal_map(x);
  const GMap s = GMap(x, x, {1, 0});
  detail::add_c2_loop(t, e, pi, s, ascii);
  const auto ri = compose(e, lift_r(e, pi), lift_i(e, pi));
  t.add(y.R(y.pi()) + y.circ() + y.I(y.pi()) + (ascii ? " = [Z/2]" : " = [ℤ/2]"), format_correspondence(e, ri, {.ascii = ascii}),
        ri == lift_d(e, burnside_canonicalize(pi)));
  detail::add_hom_ranks(t, e, x, pt, ascii ? "Z/2" : "ℤ/2", "*", 2, 1, 1, 2);
  return t;
}

/// The tower Z/8 -> Z/4 -> Z/2 -> * under GW over F_p, with π_n : Z/2n -> Z/n.
template <GysinFunctor F = GWFiniteFieldFunctor>
ReproTable repro_z8(const F& e, bool ascii = false) {
  ReproTable t{"z8 p=" + std::to_string(e.p()), {}};
  const detail::Symbols y{ascii};
  const auto g = cyclic_group(8);
  auto alpha = [&](const GSet& x) { return e.single(x, 0, ff_alpha(e.p(), x.size())); };
  for (int n : {1, 2, 4}) {
    const GSet lo = detail::cyclic_orbit(g, n), hi = detail::cyclic_orbit(g, 2 * n);
    const GMap pi = detail::coset_projection(hi, lo);
    const std::string P = y.sub(y.pi(), n);
    const std::string an = y.sub(y.alpha(), n), a2n = y.sub(y.alpha(), 2 * n);
    const auto fmt = [&](const Correspondence<F>& c) { return format_correspondence(e, c, {.ascii = ascii}); };

    // The deck transformation of hi over lo is x -> x + n.
    const GMap deck = GMap(hi, hi, [&] {
      std::vector<int> tab(hi.size());
      for (int i = 0; i < hi.size(); ++i) tab[i] = hi.act(n, i);
      return tab;
    }());
    const std::string sn = n == 1 ? y.sigma() : y.sigma() + "^" + std::to_string(n);

    const auto ir = compose(e, lift_i(e, pi), lift_r(e, pi));
    t.add(y.I(P) + y.circ() + y.R(P) + " = 1+" + sn, fmt(ir), ir == add(e, identity(e, hi), lift_r(e, deck)));

    const auto ar = compose(e, lift_d(e, alpha(lo)), lift_r(e, pi));
    t.add(an + y.circ() + y.R(P) + " = 0", fmt(ar), ar == zero_correspondence(e, hi, lo));

    const auto ia = compose(e, lift_i(e, pi), lift_d(e, alpha(lo)));
    t.add(y.I(P) + y.circ() + an + " = 0", fmt(ia), ia == zero_correspondence(e, lo, hi));

    const auto rai = compose(e, lift_r(e, pi), compose(e, lift_d(e, alpha(hi)), lift_i(e, pi)));
    t.add(y.R(P) + y.circ() + a2n + y.circ() + y.I(P) + " = " + an, fmt(rai), rai == lift_d(e, alpha(lo)));

    const auto rs = compose(e, lift_r(e, pi), lift_r(e, deck));
    t.add(y.R(P) + y.circ() + sn + " = " + y.R(P), fmt(rs), rs == lift_r(e, pi));

    // Rπ∘Iπ = π_!(1) = 2<1> + α. The rank-1 class <2> + α is a different element.
    const auto ri = compose(e, lift_r(e, pi), lift_i(e, pi));
    const auto two_plus_alpha = e.single(lo, 0, ff_class(2, 1, e.p(), n));
    const FqField& fn = detail::cached_field(e.p(), n);
    const FFClass printed = gw_add(classify_gram(fn, diagonal_gram(fn, {fn.from_int(2)})), ff_alpha(e.p(), n));
    std::string note;
    if (!(ri == lift_d(e, e.single(lo, 0, printed))))
      note = y.qf("2") + "+" + an + " is " + format_gw(printed, {.ascii = ascii}) + " (rank 1), not the computed rank-2 class";
    t.add(y.R(P) + y.circ() + y.I(P) + " = 2" + y.one() + "+" + an, fmt(ri), ri == lift_d(e, two_plus_alpha), note);
  }
  return t;
}

/// Over the trivial group, composition is integer matrix multiplication.
template <GysinFunctor F = BurnsideFunctor>
ReproTable repro_recon_ab(const F& e = F{}, std::uint64_t seed = kDefaultSeed, int pairs = 50) {
  ReproTable t{"recon-ab", {}};
  Rng rng(seed);
  std::uniform_int_distribution<int> dim(1, 5), entry(-3, 3);
  const BurnsideFunctor plain;
  auto random_matrix = [&](int rows, int cols) {
    IntMatrix m(rows, std::vector<std::int64_t>(cols));
    for (auto& row : m)
      for (auto& v : row) v = entry(rng);
    return m;
  };
  for (int i = 0; i < pairs; ++i) {
    const int nx = dim(rng), ny = dim(rng), nz = dim(rng);
    const GSet x = detail::trivial_set(nx), yy = detail::trivial_set(ny), z = detail::trivial_set(nz);
    const IntMatrix mf = random_matrix(ny, nx), mg = random_matrix(nz, ny);
    const auto f = from_matrix(plain, x, yy, mf), g = from_matrix(plain, yy, z, mg);
    const auto got = compose(e, Correspondence<F>{g.dom, g.cod, g.elem}, Correspondence<F>{f.dom, f.cod, f.elem});
    const IntMatrix prod = matrix_model(plain, Correspondence<BurnsideFunctor>{got.dom, got.cod, got.elem});
    const std::string shape = std::to_string(nz) + "x" + std::to_string(ny) + " * " + std::to_string(ny) + "x" + std::to_string(nx);
    t.add("pair " + std::to_string(i + 1) + ": " + shape, "", prod == matrix_product(mg, mf, ny, nx));
  }
  return t;
}

}  // namespace gysin
