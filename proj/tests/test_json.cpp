#include <gtest/gtest.h>

#include <fstream>

#include "gysin/rdi.hpp"
#include "gysin/serialize.hpp"
#include "instances.hpp"

using namespace gysin;

namespace {

json load_sample(const std::string& name) {
  std::ifstream in(std::string(GYSIN_SAMPLES_DIR) + "/" + name);
  return json::parse(in);
}

}  // namespace

TEST(Json, GroupsRoundTrip) {
  for (const auto& g : {trivial_group(), cyclic_group(6), symmetric_group(3)}) {
    const GroupPtr h = group_from_json(group_to_json(*g));
    EXPECT_EQ(h->table(), g->table());
    EXPECT_TRUE(same_group(g, h));
  }
}

TEST(Json, GSetsAndMapsRoundTrip) {
  Rng rng(7);
  for (const auto& g : {cyclic_group(4), symmetric_group(3)}) {
    for (int it = 0; it < 20; ++it) {
      const GSet x = random_gset(g, rng, 3);
      const GSet y = gset_from_json(gset_to_json(x), inline_groups());
      EXPECT_EQ(y.rows(), x.rows());
      const GMap f = random_map_into(x, rng);
      const GMap f2 = gmap_from_json(gmap_to_json(f), inline_gsets());
      EXPECT_EQ(f2.table(), f.table());
      EXPECT_EQ(f2.src().rows(), f.src().rows());
    }
  }
}

TEST(Json, ElementsRoundTrip) {
  inst::for_each_instance([](const auto& e, const GroupPtr& g, const std::string& label) {
    SCOPED_TRACE(label);
    Rng rng(11);
    for (int it = 0; it < 20; ++it) {
      const GSet x = random_gset(g, rng, 3);
      const auto a = e.random_element(x, rng);
      const json j = element_to_json(a);
      EXPECT_EQ(element_from_json(e, x, j, inline_gsets()), a) << j.dump();
      EXPECT_EQ(json::parse(j.dump()), j);
    }
  });
}

TEST(Json, NamedReferencesUseTheEnvironmentIds) {
  const auto env = load_environment(BurnsideFunctor{}, load_sample("c2_burnside.json"));
  const NameTable names = env.names();
  const auto c = lift_r(env.functor, env.maps.at("pi"));
  const json j = correspondence_to_json(env.functor, c, &names);
  EXPECT_EQ(j.at("functor"), "burnside");
  EXPECT_EQ(j.at("dom"), "X");
  EXPECT_EQ(j.at("cod"), "pt");
}

TEST(Json, ElementLiterals) {
  const BurnsideFunctor e;
  const GSet x = regular_gset(cyclic_group(2));
  EXPECT_EQ(element_from_json(e, x, "one", inline_gsets()), e.one(x));
  EXPECT_EQ(element_from_json(e, x, "zero", inline_gsets()), e.zero(x));
  EXPECT_EQ(element_from_json(e, x, 3, inline_gsets()), scale(e, e.one(x), 3));
  EXPECT_THROW(element_from_json(e, x, "two", inline_gsets()), DataError);
}

TEST(Json, MalformedInputIsADataError) {
  const auto groups = inline_groups();
  EXPECT_THROW(group_from_json(json{{"mul", {{0, 1}, {0, 0}}}}), DataError);
  EXPECT_THROW(group_from_json(json{{"order", 3}, {"mul", {{0, 1}, {1, 0}}}}), DataError);
  EXPECT_THROW(gset_from_json(json{{"group", "Z/2"}, {"size", 2}, {"act", {{0, 1}}}}, groups), DataError);
  EXPECT_THROW(gset_from_json(json{{"group", "Z/2"}, {"size", 2}, {"act", {{0, 1}, {0, 0}}}}, groups), DataError);
  EXPECT_THROW(gset_from_json(json{{"group", "Z/4"}, {"cosets", {{1}}}}, groups), DataError);
  EXPECT_THROW(gset_from_json(json{{"group", "Q8"}, {"cosets", {{0}}}}, groups), DataError);
  const GSet pt = terminal_gset(cyclic_group(2)), reg = regular_gset(cyclic_group(2));
  EXPECT_THROW(gmap_from_json(json{{"src", gset_to_json(pt)}, {"dst", gset_to_json(reg)}, {"table", {0}}}, inline_gsets()), DataError);
  const GWFiniteFieldFunctor gw(3);
  EXPECT_THROW(element_from_json(gw, reg, json{{"rank", 1}, {"eps", 0}, {"p", 5}, {"d", 2}}, inline_gsets()), DataError);
  EXPECT_THROW(element_from_json(gw, reg, json{{"rank", 1}}, inline_gsets()), DataError);
}
