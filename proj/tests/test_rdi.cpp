#include <gtest/gtest.h>

#include <fstream>

#include "gysin/rdi.hpp"
#include "instances.hpp"

using namespace gysin;

namespace {

json read_sample(const std::string& name) {
  std::ifstream in(std::string(GYSIN_SAMPLES_DIR) + "/" + name);
  if (!in) throw std::runtime_error("cannot open sample " + name);
  return json::parse(in);
}

const Environment<BurnsideFunctor>& c2_env() {
  static const auto env = load_environment(BurnsideFunctor{}, read_sample("c2_burnside.json"));
  return env;
}

const Environment<GWFiniteFieldFunctor>& z8_env() {
  static const auto env = load_environment(GWFiniteFieldFunctor(3), read_sample("z8_gw.json"));
  return env;
}

template <GysinFunctor F>
ExprError parse_error(const std::string& text, const Environment<F>& env) {
  try {
    parse_expr(text, env);
  } catch (const ExprError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for " << text;
  return ExprError(ExprError::Kind::Syntax, 0, "");
}

// ---------------------------------------------------------------------------
// Parsing and elaboration

TEST(Parse, CompositeAndSum) {
  const auto& env = c2_env();
  const auto e = parse_expr("R(pi)*I(pi)", env);
  ASSERT_EQ(e.kind, MorExpr::Kind::Comp);
  ASSERT_EQ(e.children.size(), 2u);
  EXPECT_EQ(e.children[0].kind, MorExpr::Kind::R);
  EXPECT_EQ(e.children[1].kind, MorExpr::Kind::I);
  EXPECT_EQ(*e.dom, env.gsets.at("pt"));
  EXPECT_EQ(*e.cod, env.gsets.at("pt"));

  const auto s = parse_expr("R(s)*D(u)*I(s) + 2*id(X)", env);
  ASSERT_EQ(s.kind, MorExpr::Kind::Sum);
  EXPECT_EQ(s.children.size(), 2u);
  EXPECT_EQ(s.coeffs, (std::vector<std::int64_t>{1, 2}));
  EXPECT_EQ(*s.dom, env.gsets.at("X"));
  EXPECT_EQ(*s.cod, env.gsets.at("X"));
}

TEST(Parse, WhitespaceIsInsignificant) {
  const auto& env = c2_env();
  EXPECT_EQ(to_string(parse_expr("  I( pi ) *R(pi)  ", env)), "I(pi)*R(pi)");
  EXPECT_EQ(to_string(parse_expr("3 * (id(X) - R(s))", env)), "3*(id(X) - R(s))");
}

TEST(Parse, BareIntegersTakeTheSurroundingObject) {
  const auto& env = c2_env();
  const auto e = parse_expr("I(pi)*R(pi) + 1", env);
  EXPECT_EQ(*e.children[1].dom, env.gsets.at("X"));
  const auto c = parse_expr("R(pi)*(2 + R(s))", env);
  EXPECT_EQ(*c.children[1].children[0].dom, env.gsets.at("X"));
  EXPECT_EQ(parse_error("3", env).kind, ExprError::Kind::Type);
  EXPECT_EQ(parse_error("R(pi) + 1", env).kind, ExprError::Kind::Type);
}

TEST(Parse, SyntaxErrorsCarryPositions) {
  const auto& env = c2_env();
  const auto e = parse_error("R(", env);
  EXPECT_EQ(e.kind, ExprError::Kind::Syntax);
  EXPECT_EQ(e.position, 2u);
  EXPECT_EQ(caret_diagnostic("R(", e).substr(0, 6), "R(\n  ^");
  EXPECT_EQ(parse_error("R(pi) I(pi)", env).position, 6u);
  EXPECT_EQ(parse_error("Q(pi)", env).position, 0u);
  EXPECT_EQ(parse_error("R(pi)*", env).kind, ExprError::Kind::Syntax);
  EXPECT_EQ(parse_error("(R(pi)", env).kind, ExprError::Kind::Syntax);
}

TEST(Parse, UnknownIdentifiers) {
  const auto& env = c2_env();
  const auto e = parse_error("R(pi)*I(nope)", env);
  EXPECT_EQ(e.kind, ExprError::Kind::UnknownIdentifier);
  EXPECT_EQ(e.position, 6u);
  EXPECT_EQ(parse_error("D(pi)", env).kind, ExprError::Kind::UnknownIdentifier);
  EXPECT_EQ(parse_error("id(s)", env).kind, ExprError::Kind::UnknownIdentifier);
}

TEST(Parse, CompositionErrorsNameBothObjects) {
  const auto& env = c2_env();
  const auto e = parse_error("R(pi)*R(pi)", env);
  EXPECT_EQ(e.kind, ExprError::Kind::Composability);
  const std::string msg = e.what();
  EXPECT_NE(msg.find("X is not pt"), std::string::npos) << msg;
  EXPECT_EQ(parse_error("R(pi) + I(pi)", env).kind, ExprError::Kind::Type);
}

// ---------------------------------------------------------------------------
// Evaluation

TEST(Eval, IdentityAndLifts) {
  const auto& env = c2_env();
  const BurnsideFunctor& b = env.functor;
  const GSet& x = env.gsets.at("X");
  EXPECT_EQ(eval_expr(env, parse_expr("id(X)", env)), identity(b, x));
  EXPECT_EQ(eval_expr(env, parse_expr("R(s)", env)), lift_r(b, env.maps.at("s")));
  EXPECT_EQ(eval_expr(env, parse_expr("0*R(pi)", env)), zero_correspondence(b, x, env.gsets.at("pt")));
}

TEST(Eval, TriplesMatchTheFoldedComposite) {
  const auto& env = c2_env();
  const auto direct = eval_expr(env, parse_expr("R(pi)*D(u)*I(s)", env));
  const auto folded = eval_expr(env, parse_expr("R(pi)*(D(u)*I(s))", env));
  EXPECT_EQ(direct, folded);
}

TEST(Eval, BurnsideC2Relations) {
  const auto& env = c2_env();
  EXPECT_EQ(format_correspondence(env.functor, eval_expr(env, parse_expr("I(pi)*R(pi)", env))), "1 + σ");
  EXPECT_TRUE(expr_equal(env, "R(pi)*I(pi)", "D(t)"));
  EXPECT_TRUE(expr_equal(env, "I(pi)*R(pi)", "1 + R(s)"));
  EXPECT_TRUE(expr_equal(env, "R(s)*R(s)", "1"));
  EXPECT_FALSE(expr_equal(env, "R(s)", "1"));
  EXPECT_THROW(expr_equal(env, "R(pi)", "R(s)"), std::invalid_argument);
}

TEST(Eval, Z8Relations) {
  const auto& env = z8_env();
  for (int n : {1, 2, 4}) {
    const std::string N = std::to_string(n), N2 = std::to_string(2 * n);
    const std::string pi = "pi_" + N;
    EXPECT_TRUE(expr_equal(env, "D(alpha_" + N + ")*R(" + pi + ")", "0")) << n;
    EXPECT_TRUE(expr_equal(env, "I(" + pi + ")*D(alpha_" + N + ")", "0")) << n;
    EXPECT_TRUE(expr_equal(env, "R(" + pi + ")*D(alpha_" + N2 + ")*I(" + pi + ")", "D(alpha_" + N + ")")) << n;
    EXPECT_TRUE(expr_equal(env, "R(" + pi + ")*I(" + pi + ")", "2 + D(alpha_" + N + ")")) << n;
    EXPECT_FALSE(expr_equal(env, "R(" + pi + ")*I(" + pi + ")", "2")) << n;
  }
}

// ---------------------------------------------------------------------------
// Normal forms

TEST(Normalize, NormalTripleIsOneTerm) {
  const auto& env = c2_env();
  const auto nf = normalize(env, parse_expr("R(pi)*D(u)*I(s)", env));
  ASSERT_EQ(nf.terms.size(), 1u);
  EXPECT_EQ(nf.terms[0].coeff, 1);
  EXPECT_EQ(nf.terms[0].f, env.maps.at("pi"));
  EXPECT_EQ(nf.terms[0].a, env.elements.at("u"));
  EXPECT_EQ(nf.terms[0].g, env.maps.at("s"));
}

TEST(Normalize, InversionSplitsOverPullbackOrbits) {
  const auto& env = c2_env();
  const auto e = parse_expr("I(pi)*R(pi)", env);
  const auto nf = normalize(env, e);
  ASSERT_EQ(nf.terms.size(), 2u);
  const GSet& x = env.gsets.at("X");
  for (const auto& t : nf.terms) {
    EXPECT_EQ(t.f.src(), x);
    EXPECT_TRUE(t.f.is_iso());
    EXPECT_TRUE(t.g.is_iso());
    EXPECT_EQ(t.a, env.functor.one(x));
  }
  // One term is the identity span, the other the swap.
  EXPECT_NE(compose(nf.terms[0].f, inverse_map(nf.terms[0].g)), compose(nf.terms[1].f, inverse_map(nf.terms[1].g)));
  EXPECT_EQ(eval_normal_form(env.functor, nf), eval_expr(env, e));
}

TEST(Normalize, ComposedTriplesFollowTheFiberProductFormula) {
  const auto& env = z8_env();
  const auto e = parse_expr("(R(pi_2)*D(alpha_4)*I(pi_2))*(R(pi_2)*D(alpha_4)*I(pi_2))", env);
  const auto nf = normalize(env, e, {.rule_d = false});
  // O4 x_{O2} O4 has two orbits, both copies of O4.
  ASSERT_EQ(nf.terms.size(), 2u);
  for (const auto& t : nf.terms) EXPECT_EQ(t.f.src().size(), 4);
  EXPECT_EQ(eval_normal_form(env.functor, nf), eval_expr(env, e));
}

TEST(Normalize, ShortcutCollapsesLoops) {
  const auto& env = z8_env();
  const auto e = parse_expr("R(pi_1)*D(alpha_2)*I(pi_1)", env);
  const auto nf = normalize(env, e);
  ASSERT_EQ(nf.terms.size(), 1u);
  EXPECT_EQ(nf.terms[0].a, env.elements.at("alpha_1"));
  EXPECT_TRUE(nf.terms[0].f == identity_map(env.gsets.at("O1")));
}

TEST(Normalize, Deterministic) {
  const auto& env = c2_env();
  const auto e = parse_expr("(I(pi)*R(pi) + R(s))*I(pi)*D(t)*R(pi)*(1 - R(s))", env);
  const auto a = normalize(env, e), b = normalize(env, e);
  ASSERT_EQ(a.terms.size(), b.terms.size());
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    EXPECT_EQ(a.terms[i].coeff, b.terms[i].coeff);
    EXPECT_EQ(a.terms[i].f, b.terms[i].f);
    EXPECT_EQ(a.terms[i].a, b.terms[i].a);
    EXPECT_EQ(a.terms[i].g, b.terms[i].g);
  }
  EXPECT_EQ(normal_form_to_json(env, a).dump(), normal_form_to_json(env, b).dump());
}

// Soundness over random expressions, with and without the loop shortcut.
TEST(Soundness, RandomExpressions) {
  inst::for_each_instance([](const auto& e, const GroupPtr& g, const char* label) {
    SCOPED_TRACE(label);
    const auto env = inst::random_env(e, g, 41);
    Rng rng(7);
    std::size_t split = 0;
    for (int i = 0; i < 200; ++i) {
      const MorExpr x = random_expr(env, rng, 5);
      const auto value = eval_expr(env, x);
      const auto with_d = normalize(env, x);
      ASSERT_EQ(eval_normal_form(e, with_d), value) << to_string(x);
      const auto without_d = normalize(env, x, {.rule_d = false});
      ASSERT_EQ(eval_normal_form(e, without_d), value) << to_string(x);
      split += without_d.terms.size() > 2;
    }
    // The sample must exercise orbit splitting, not only trivial words.
    EXPECT_GT(split, 20u);
  });
}

TEST(Soundness, RandomExpressionsRoundTripThroughText) {
  const auto env = inst::random_env(BurnsideFunctor{}, cyclic_group(4), 3);
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const MorExpr x = random_expr(env, rng, 5);
    const MorExpr y = parse_expr(to_string(x), env, std::pair{*x.dom, *x.cod});
    ASSERT_EQ(eval_expr(env, y), eval_expr(env, x)) << to_string(x);
  }
}

// Every correspondence c in E(Y x X) is R(pr_Y) D(c) I(pr_X).
TEST(Soundness, TautologicalNormalForm) {
  inst::for_each_instance([](const auto& e, const GroupPtr& g, const char* label) {
    SCOPED_TRACE(label);
    const auto env = inst::random_env(e, g, 5);
    Rng rng(13);
    for (const auto& [nx, x] : env.gsets)
      for (const auto& [ny, y] : env.gsets) {
        const auto c = inst::random_corr(e, x, y, rng);
        const auto pr = product_gset(y, x);
        ASSERT_EQ(from_triple(e, pr.first, c.elem, pr.second), c) << nx << " -> " << ny;
      }
  });
}

// ---------------------------------------------------------------------------
// Environments

TEST(Environment, LoadsAllSamples) {
  const auto real = load_environment(GWRealComplexFunctor{}, read_sample("c2_real.json"));
  EXPECT_EQ(real.maps.size(), 2u);
  EXPECT_EQ(format_correspondence(real.functor, eval_expr(real, parse_expr("R(pi)*I(pi)", real))), "⟨1⟩+⟨−1⟩");
  EXPECT_EQ(z8_env().elements.size(), 4u);
  EXPECT_EQ(c2_env().object_name(c2_env().gsets.at("X")), "X");
}

TEST(Environment, RejectsBadData) {
  const BurnsideFunctor b;
  json j = read_sample("c2_burnside.json");
  j["gmaps"]["bad"] = {{"src", "X"}, {"dst", "nowhere"}, {"table", {0, 0}}};
  EXPECT_THROW(load_environment(b, j), DataError);
  json k = read_sample("c2_burnside.json");
  k["gmaps"]["bad"] = {{"src", "pt"}, {"dst", "X"}, {"table", {0}}};
  EXPECT_THROW(load_environment(b, k), DataError);
  json l = read_sample("c2_burnside.json");
  l["elements"]["bad"] = {{"value", 1}};
  EXPECT_THROW(load_environment(b, l), DataError);
  EXPECT_THROW(load_environment(GWFiniteFieldFunctor(3), read_sample("c2_burnside.json")), DataError);
}

}  // namespace
