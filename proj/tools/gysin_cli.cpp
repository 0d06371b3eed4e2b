// gysin: command-line front end for the correspondence engine.
//
// Exit codes: 0 success, 2 verification failure, 64 usage error, 65 bad input data.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "gysin/laws.hpp"
#include "gysin/rdi.hpp"
#include "gysin/repro.hpp"

using namespace gysin;

namespace {

constexpr int kExitVerify = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  bool json = false;
  bool ascii = false;
  std::uint64_t seed = kDefaultSeed;
  int iters = 100;
  int p = 3;
  int max_degree = 6;
  int max_e = 12;
  std::string example;
  std::string env_file;
  std::string expr;
  std::string functor = "burnside";
  std::string group;
};

void require_odd_prime(int p) {
  if (p == 2 || !is_prime(p)) throw UsageError("--p must be an odd prime, got " + std::to_string(p));
}

/// Prints the table (text rows or one JSON line) and returns its exit code.
int emit(const ReproTable& t, const Options& o) {
  if (o.json) {
    std::cout << t.to_json().dump() << "\n";
  } else {
    for (const auto& r : t.rows) std::cout << t.format_row(r) << "\n";
  }
  return t.pass() ? 0 : kExitVerify;
}

template <class Fn>
int with_functor(const Options& o, Fn&& fn) {
  if (o.functor == "burnside") return fn(BurnsideFunctor{});
  if (o.functor == "gw") {
    require_odd_prime(o.p);
    return fn(GWFiniteFieldFunctor(o.p));
  }
  if (o.functor == "gw-real") return fn(GWRealComplexFunctor{});
  throw UsageError("unknown functor \"" + o.functor + "\" (expected burnside, gw or gw-real)");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Commands

int cmd_gw_table(const Options& o) {
  require_odd_prime(o.p);
  if (o.max_degree < 1) throw UsageError("--max-degree must be >= 1");
  return emit(gw_transfer_table(o.p, o.max_degree, o.ascii), o);
}

int cmd_euler(const Options& o) {
  require_odd_prime(o.p);
  if (o.max_e < 1) throw UsageError("--max-e must be >= 1");
  return emit(euler_table(o.p, o.max_e, o.ascii), o);
}

int cmd_repro(const Options& o) {
  if (o.example == "real") return emit(repro_real(GWRealComplexFunctor{}, o.ascii), o);
  if (o.example == "burnside-c2") return emit(repro_burnside_c2(BurnsideFunctor{}, o.ascii), o);
  if (o.example == "z8") {
    require_odd_prime(o.p);
    return emit(repro_z8(GWFiniteFieldFunctor(o.p), o.ascii), o);
  }
  if (o.example == "recon-ab") {
    const ReproTable t = repro_recon_ab(BurnsideFunctor{}, o.seed);
    if (o.json) return emit(t, o);
    int ok = 0;
    for (const auto& r : t.rows) {
      std::cout << t.format_row(r) << "\n";
      ok += r.pass;
    }
    std::cout << t.rows.size() << " random matrix-model composition checks " << (t.pass() ? "OK" : "FAIL") << " (" << ok << " passed)\n";
    return t.pass() ? 0 : kExitVerify;
  }
  throw UsageError("unknown example \"" + o.example + "\" (expected real, z8, burnside-c2 or recon-ab)");
}

int cmd_eval(const Options& o, bool normal_form) {
  return with_functor(o, [&](const auto& e) {
    const json j = read_json_file(o.env_file);
    const auto env = load_environment(e, j);
    std::optional<MorExpr> x;
    try {
      x = parse_expr(o.expr, env);
    } catch (const ExprError& err) {
      std::cerr << caret_diagnostic(o.expr, err) << "\n";
      return kExitData;
    }
    const auto value = eval_expr(env, *x);
    const FormatOptions fmt{.ascii = o.ascii};
    const NameTable names = env.names();
    if (!normal_form) {
      if (o.json) std::cout << correspondence_to_json(e, value, &names).dump() << "\n";
      else std::cout << format_correspondence(e, value, fmt) << "\n";
      return 0;
    }
    const auto nf = normalize(env, *x);
    // The normal form is checked against direct evaluation before it is shown.
    const bool sound = eval_normal_form(e, nf) == value;
    if (o.json) {
      std::cout << json{{"value", correspondence_to_json(e, value, &names)},
                        {"normal_form", normal_form_to_json(env, nf)},
                        {"sound", sound}}
                       .dump()
                << "\n";
    } else {
      std::cout << format_correspondence(e, value, fmt) << "\n";
      for (const auto& t : nf.terms) std::cout << "  " << format_term(env, t, fmt) << "\n";
      if (!sound) std::cout << "normal form does not evaluate to the expression\n";
    }
    return sound ? 0 : kExitVerify;
  });
}

/// One representative of each orbit type of g.
std::vector<GSet> orbit_types(const GroupPtr& g) {
  std::vector<GSet> out;
  for (const auto& h : g->subgroups()) {
    GSet x = coset_gset(g, h);
    bool seen = false;
    for (const auto& y : out)
      if (y.size() == x.size() && iso_test(x, y)) seen = true;
    if (!seen) out.push_back(std::move(x));
  }
  return out;
}

int cmd_verify(const Options& o) {
  if (o.iters < 1) throw UsageError("--iters must be >= 1");
  GroupPtr g;
  try {
    g = group_from_spec(o.group);
  } catch (const std::invalid_argument& err) {
    throw UsageError(err.what());
  }
  return with_functor(o, [&](const auto& e) {
    if (!e.supports(g)) throw UsageError("functor " + e.name() + " does not support group " + o.group);
    const VerifyBudget budget{.iters = o.iters};
    ReproTable t{"verify " + e.name() + " " + o.group, {}};
    json reports = json::array();
    auto add_report = [&](const VerifyReport& rep) {
      for (const auto& r : rep.results)
        t.add(r.axiom + " (" + std::to_string(r.instances) + " instances)", r.counterexample.is_null() ? "" : r.counterexample.dump(), r.pass);
      reports.push_back(rep.to_json());
    };
    add_report(verify_gysin_axioms(e, g, budget, o.seed));
    add_report(verify_category_laws(e, g, budget, o.seed + 1));
    for (const auto& x : orbit_types(g)) {
      const std::string name = "G/H with |G/H|=" + std::to_string(x.size());
      t.add("duality " + name, "", duality_check(e, x).pass());
      if (is_galois(x)) {
        const auto r = endo_ring_galois(e, x, 10, o.seed);
        t.add("endomorphisms of " + name + " form a twisted group ring", "", r.pass());
      }
    }
    if constexpr (requires { e.p(); }) {
      const auto c = chi_generation_table(e.p(), o.ascii);
      for (const auto& r : c.rows) t.rows.push_back(r);
    }
    if (o.json) {
      json j = t.to_json();
      j["seed"] = o.seed;
      j["reports"] = reports;
      std::cout << j.dump() << "\n";
    } else {
      std::cout << "seed " << o.seed << "\n";
      for (const auto& r : t.rows) std::cout << t.format_row(r) << "\n";
    }
    return t.pass() ? 0 : kExitVerify;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Categories of correspondences from Gysin functors on finite G-sets"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "Emit one JSON document per line");
  app.add_flag("--ascii", o.ascii, "ASCII output: <1>, alpha, sigma");

  auto* gw = app.add_subcommand("gw-table", "Base change and transfer on the generators, checked against Gram matrices");
  gw->add_option("--p", o.p, "Odd prime")->required();
  gw->add_option("--max-degree", o.max_degree, "Largest extension degree")->capture_default_str();

  auto* eu = app.add_subcommand("euler", "Euler characteristics of F_{p^e} and their relations");
  eu->add_option("--p", o.p, "Odd prime")->required();
  eu->add_option("--max-e", o.max_e, "Largest degree")->capture_default_str();

  auto* re = app.add_subcommand("repro", "Recompute a worked example");
  re->add_option("example", o.example, "real | z8 | burnside-c2 | recon-ab")->required();
  re->add_option("--p", o.p, "Odd prime for z8")->capture_default_str();
  re->add_option("--seed", o.seed, "Random seed for recon-ab")->capture_default_str();

  auto* ev = app.add_subcommand("eval", "Evaluate a morphism expression");
  auto* no = app.add_subcommand("normalize", "Rewrite a morphism expression to R D I normal form");
  for (auto* sub : {ev, no}) {
    sub->add_option("--env", o.env_file, "Environment JSON file")->required();
    sub->add_option("--expr", o.expr, "Expression, e.g. \"I(pi)*R(pi)\"")->required();
    sub->add_option("--functor", o.functor, "burnside | gw | gw-real")->capture_default_str();
    sub->add_option("--p", o.p, "Odd prime for gw")->capture_default_str();
  }

  auto* ve = app.add_subcommand("verify", "Run the axiom and category-law suites");
  ve->add_option("--functor", o.functor, "burnside | gw | gw-real")->required();
  ve->add_option("--group", o.group, "trivial | Z/n | Sn")->required();
  ve->add_option("--p", o.p, "Odd prime for gw")->capture_default_str();
  ve->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  ve->add_option("--iters", o.iters, "Random instances per axiom")->capture_default_str();

  for (auto* sub : {gw, eu, re, ev, no, ve}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gw) return cmd_gw_table(o);
    if (*eu) return cmd_euler(o);
    if (*re) return cmd_repro(o);
    if (*ev) return cmd_eval(o, false);
    if (*no) return cmd_eval(o, true);
    if (*ve) return cmd_verify(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const json::exception& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
