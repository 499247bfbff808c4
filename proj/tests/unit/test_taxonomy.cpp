#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "kgsim/error.hpp"
#include "kgsim/taxonomy.hpp"
#include "oracles.hpp"

namespace kgsim {
namespace {

using testing::load_fixture;
using testing::oracle_taxonomy;

bool contains(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

TEST(TaxonomyConfig, RejectsEmptyOrEqualProperties) {
  EXPECT_THROW((TaxonomyConfig{"", "P31"}.validate()), ConfigError);
  EXPECT_THROW((TaxonomyConfig{"P31", "P31"}.validate()), ConfigError);
  EXPECT_NO_THROW(TaxonomyConfig{}.validate());
}

TEST(BuildTaxonomy, SubclassChainIsTransitiveAndReflexive) {
  const auto store = load_fixture();
  const auto tx = build_taxonomy(store);
  const auto p = tx.parents("Q_dirtbike");
  for (const auto* c : {"Q_dirtbike", "Q_motorcycle", "Q_motor_vehicle", "Q_vehicle", "Q_entity"}) {
    EXPECT_TRUE(contains(p, c)) << c;
  }
}

TEST(BuildTaxonomy, InstancesAreNotTheirOwnParents) {
  const auto tx = build_taxonomy(load_fixture());
  const auto p = tx.parents("Q_fatboy");
  EXPECT_TRUE(contains(p, "Q_motorcycle"));
  EXPECT_TRUE(contains(p, "Q_motor_vehicle"));
  EXPECT_FALSE(contains(p, "Q_fatboy"));
}

TEST(BuildTaxonomy, NoIsaEdgesGivesEmptyParents) {
  const std::vector<EdgeRecord> edges{{"a", "P17", "b"}, {"b", "P17", "c"}};
  const auto tx = build_taxonomy(testing::store_from(edges));
  EXPECT_EQ(tx.node_count(), 3u);
  EXPECT_TRUE(tx.parents("a").empty());
  EXPECT_EQ(tx.class_similarity("a", "b"), 0.0);
}

TEST(BuildTaxonomy, FixtureMatchesDfsOracle) {
  const auto store = load_fixture();
  const auto tx = build_taxonomy(store);
  const auto oracle = oracle_taxonomy(store.edges());
  EXPECT_EQ(tx.node_count(), oracle.node_count);
  EXPECT_EQ(tx.node_count(), 23u);
  // vehicle itself, its 6 subclasses and 5 vehicle instances.
  EXPECT_EQ(tx.ext("Q_vehicle"), oracle.ext.at("Q_vehicle"));
  EXPECT_EQ(tx.ext("Q_vehicle"), 12u);
  for (const auto& [node, parents] : oracle.parents) {
    const auto got = tx.parents(node);
    EXPECT_EQ(std::set<std::string>(got.begin(), got.end()), parents) << node;
  }
  for (const auto& [cls, idf] : oracle.idf) EXPECT_EQ(tx.idf(cls), idf) << cls;
}

TEST(BuildTaxonomy, CyclesShareOneParentSet) {
  const std::vector<EdgeRecord> edges{
      {"a", "P279", "b"}, {"b", "P279", "c"}, {"c", "P279", "a"}, {"c", "P279", "top"}, {"x", "P31", "b"}};
  const auto tx = build_taxonomy(testing::store_from(edges));
  EXPECT_EQ(tx.parents("a"), tx.parents("b"));
  EXPECT_EQ(tx.parents("b"), tx.parents("c"));
  EXPECT_EQ(tx.parents("a"), (std::vector<std::string>{"a", "b", "c", "top"}));
  EXPECT_EQ(tx.parents("x"), (std::vector<std::string>{"a", "b", "c", "top"}));
  const auto oracle = oracle_taxonomy(edges);
  for (const auto& [node, parents] : oracle.parents) {
    const auto got = tx.parents(node);
    EXPECT_EQ(std::set<std::string>(got.begin(), got.end()), parents) << node;
  }
}

TEST(BuildTaxonomy, CustomProperties) {
  const std::vector<EdgeRecord> edges{{"a", "isa", "b"}, {"b", "sub", "c"}};
  const auto tx = build_taxonomy(testing::store_from(edges), {"sub", "isa"});
  EXPECT_EQ(tx.parents("a"), (std::vector<std::string>{"b", "c"}));
}

TEST(ClassSimilarity, SelfSimilarityIsOne) {
  const auto tx = build_taxonomy(load_fixture());
  EXPECT_EQ(tx.class_similarity("Q_motorcycle", "Q_motorcycle"), 1.0);
}

TEST(ClassSimilarity, ZeroWeightClosureScoresZero) {
  // The root is in every closure, so idf(root) = 0 and its own closure has
  // no weight at all.
  const std::vector<EdgeRecord> edges{{"a", "P279", "root"}, {"b", "P279", "root"}};
  const auto tx = build_taxonomy(testing::store_from(edges));
  EXPECT_EQ(tx.idf("root"), 0.0);
  EXPECT_EQ(tx.class_similarity("root", "root"), 0.0);
  EXPECT_EQ(tx.class_similarity("a", "a"), 1.0);
  EXPECT_EQ(tx.class_similarity("a", "b"), 0.0);
}

TEST(ClassSimilarity, DisjointParentsScoreZero) {
  const std::vector<EdgeRecord> edges{{"a", "P279", "b"}, {"c", "P279", "d"}};
  const auto tx = build_taxonomy(testing::store_from(edges));
  EXPECT_EQ(tx.class_similarity("a", "c"), 0.0);
  EXPECT_TRUE(tx.shared_parents("a", "c").empty());
}

TEST(ClassSimilarity, UnknownNodesScoreZero) {
  const auto tx = build_taxonomy(load_fixture());
  EXPECT_EQ(tx.class_similarity("Q_motorcycle", "Q_nope"), 0.0);
  EXPECT_EQ(tx.class_similarity("Q_nope", "Q_nope"), 0.0);
}

TEST(ClassSimilarity, MotorcycleBusPinnedValue) {
  // Computed by hand from the DFS closure: N = 23,
  // parents(motorcycle) = {motorcycle, motor_vehicle, vehicle, entity},
  // parents(bus) = {bus, motor_vehicle, vehicle, entity},
  // ext = {motorcycle: 5, bus: 2, motor_vehicle: 8, vehicle: 12, entity: 23}.
  const double motor_vehicle = std::log(23.0 / 8.0);
  const double vehicle = std::log(23.0 / 12.0);
  const double expected = (motor_vehicle + vehicle) /
                          (std::log(23.0 / 5.0) + std::log(23.0 / 2.0) + motor_vehicle + vehicle);
  EXPECT_NEAR(expected, 0.300727, 5e-7);
  const auto tx = build_taxonomy(load_fixture());
  EXPECT_NEAR(tx.class_similarity("Q_motorcycle", "Q_bus"), 0.300727, 5e-7);
}

TEST(ClassSimilarity, FixtureOrdering) {
  const auto tx = build_taxonomy(load_fixture());
  const auto s = [&](const char* other) { return tx.class_similarity("Q_motorcycle", other); };
  const char* similar[] = {"Q_bus", "Q_dirtbike", "Q_yacht"};
  const char* related[] = {"Q_engine", "Q_helmet", "Q_road", "Q_cyclist"};
  const char* unrelated[] = {"Q_cheese", "Q_country", "Q_shelf"};
  double min_similar = 1.0, max_related = 0.0, min_related = 1.0, max_unrelated = 0.0;
  for (auto n : similar) min_similar = std::min(min_similar, s(n));
  for (auto n : related) {
    max_related = std::max(max_related, s(n));
    min_related = std::min(min_related, s(n));
  }
  for (auto n : unrelated) max_unrelated = std::max(max_unrelated, s(n));
  EXPECT_GT(min_similar, max_related);
  EXPECT_GT(min_similar, max_unrelated);
  EXPECT_GE(min_related, max_unrelated);
}

TEST(ClassSimilarity, SiblingsBeatCousins) {
  const auto tx = build_taxonomy(load_fixture());
  EXPECT_GT(tx.class_similarity("Q_motorcycle", "Q_bus"), tx.class_similarity("Q_motorcycle", "Q_yacht"));
}

TEST(SharedParents, DirtBikeAndBus) {
  const auto store = load_fixture();
  const auto tx = build_taxonomy(store);
  const auto oracle = oracle_taxonomy(store.edges());
  const auto shared = tx.shared_parents("Q_dirtbike", "Q_bus");
  ASSERT_EQ(shared.size(), 3u);
  // idf desc: motor_vehicle (ext 8), vehicle (ext 12), entity (ext 23 -> 0).
  EXPECT_EQ(shared[0], (SharedParent{"Q_motor_vehicle", oracle.idf.at("Q_motor_vehicle")}));
  EXPECT_EQ(shared[1], (SharedParent{"Q_vehicle", oracle.idf.at("Q_vehicle")}));
  EXPECT_EQ(shared[2], (SharedParent{"Q_entity", 0.0}));
}

TEST(SharedParents, SelfIsAllParents) {
  const auto tx = build_taxonomy(load_fixture());
  EXPECT_EQ(tx.shared_parents("Q_dirtbike", "Q_dirtbike").size(), tx.parents("Q_dirtbike").size());
}

TEST(SharedParents, TiesOrderedById) {
  const std::vector<EdgeRecord> edges{{"x", "P31", "b"}, {"x", "P31", "a"}, {"y", "P31", "a"}, {"y", "P31", "b"}};
  const auto tx = build_taxonomy(testing::store_from(edges));
  const auto shared = tx.shared_parents("x", "y");
  ASSERT_EQ(shared.size(), 2u);
  EXPECT_EQ(shared[0].qnode, "a");
  EXPECT_EQ(shared[1].qnode, "b");
}

TEST(TaxonomyIdf, MonotoneInExtension) {
  const auto tx = build_taxonomy(load_fixture());
  for (const auto& c1 : tx.ids()) {
    for (const auto& c2 : tx.ids()) {
      if (tx.ext(c1) == 0 || tx.ext(c2) == 0) continue;
      if (tx.ext(c1) < tx.ext(c2)) EXPECT_GT(*tx.idf(c1), *tx.idf(c2));
    }
  }
  EXPECT_EQ(tx.idf("Q_entity"), 0.0);
  EXPECT_FALSE(tx.idf("Q_fatboy").has_value());
}

TEST(TaxonomyPersistence, SaveLoadRoundTrip) {
  const auto tx = build_taxonomy(load_fixture());
  std::stringstream buf;
  tx.save(buf);
  const auto copy = TaxonomyIndex::load(buf);
  EXPECT_EQ(copy, tx);
  EXPECT_EQ(copy.class_similarity("Q_motorcycle", "Q_bus"), tx.class_similarity("Q_motorcycle", "Q_bus"));
}

TEST(TaxonomyPersistence, TruncatedFileRejected) {
  const auto tx = build_taxonomy(load_fixture());
  std::stringstream buf;
  tx.save(buf);
  auto bytes = buf.str();
  bytes.resize(bytes.size() / 2);
  std::stringstream half(bytes);
  EXPECT_THROW(TaxonomyIndex::load(half), IoError);
}

// Property sweep over random graphs (cycles included).
TEST(ClassSimilarityProperties, RandomGraphs) {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    testing::RandomGraphOptions opts;
    opts.allow_cycles = trial % 2 == 1;
    const auto edges = testing::random_isa_graph(rng, opts);
    const auto store = testing::store_from(edges);
    const auto tx = build_taxonomy(store);
    const auto oracle = oracle_taxonomy(edges);
    const auto& nodes = store.nodes();
    for (const auto& a : nodes) {
      for (const auto& b : nodes) {
        const double s = tx.class_similarity(a, b);
        ASSERT_EQ(s, tx.class_similarity(b, a));
        ASSERT_GE(s, 0.0);
        ASSERT_LE(s, 1.0);
        ASSERT_NEAR(s, oracle.similarity(a, b), 1e-12);
      }
    }
  }
}

}  // namespace
}  // namespace kgsim
