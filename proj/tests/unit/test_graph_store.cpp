#include <gtest/gtest.h>

#include <sstream>

#include "kgsim/error.hpp"
#include "kgsim/graph_store.hpp"
#include "oracles.hpp"

namespace kgsim {
namespace {

std::size_t ingest_text(GraphStore& store, const std::string& text) {
  std::istringstream in(text);
  return store.ingest_edges(in, "test.tsv");
}

TEST(GraphStoreIngest, MinimalFile) {
  GraphStore store;
  EXPECT_EQ(ingest_text(store, "node1\tlabel\tnode2\nQ1\tP279\tQ2\nQ1\tlabel\t\"one\"\nQ2\tlabel\t\"two\"\n"), 3u);
  EXPECT_EQ(store.meta_count(), 2u);
  EXPECT_EQ(store.label_of("Q1"), "one");
  EXPECT_EQ(store.nodes(), (std::vector<std::string>{"Q1", "Q2"}));
}

TEST(GraphStoreIngest, HeaderOnlyAndEmptyFiles) {
  GraphStore a;
  EXPECT_EQ(ingest_text(a, "node1\tlabel\tnode2\n"), 0u);
  GraphStore b;
  EXPECT_EQ(ingest_text(b, ""), 0u);
}

TEST(GraphStoreIngest, FixtureRowCount) {
  GraphStore store;
  EXPECT_EQ(store.ingest_edges(testing::fixture_path("mini_vehicles.tsv")), 37u);
  EXPECT_EQ(store.meta_count(), 14u);
  EXPECT_EQ(store.nodes().size(), 23u);
}

TEST(GraphStoreIngest, CommentsAndCarriageReturnsIgnored) {
  GraphStore store;
  EXPECT_EQ(ingest_text(store, "# header comment\r\nnode1\tlabel\tnode2\r\n# c\r\nQ1\tP31\tQ2\r\n"), 1u);
}

TEST(GraphStoreIngest, WrongColumnCountReportsLine) {
  GraphStore store;
  try {
    ingest_text(store, "node1\tlabel\tnode2\nQ1\tP31\tQ2\nQ3\tP31\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(GraphStoreIngest, BadHeaderIsParseError) {
  GraphStore store;
  EXPECT_THROW(ingest_text(store, "a\tb\tc\n"), ParseError);
}

TEST(GraphStoreIngest, MissingFileIsIoError) {
  GraphStore store;
  EXPECT_THROW(store.ingest_edges("/nonexistent/edges.tsv"), IoError);
}

TEST(GraphStoreIngest, LanguageTagsStripped) {
  GraphStore store;
  ingest_text(store, "node1\tlabel\tnode2\nQ1\tlabel\t'one'@en\nQ1\tdescription\t'first'@en\n");
  EXPECT_EQ(store.label_of("Q1"), "one");
  EXPECT_EQ(store.meta("Q1")->description, "first");
}

TEST(GraphStoreIngest, ReingestDoublesEdgesButNotMeta) {
  GraphStore store;
  const auto path = testing::fixture_path("mini_vehicles.tsv");
  store.ingest_edges(path);
  const auto meta = store.meta_count();
  store.ingest_edges(path);
  EXPECT_EQ(store.edges().size(), 74u);
  EXPECT_EQ(store.meta_count(), meta);
}

TEST(GraphStoreIngest, AliasesDeduplicatedCaseInsensitively) {
  GraphStore store;
  ingest_text(store, "node1\tlabel\tnode2\nQ1\talias\t\"Motorbike\"\nQ1\talias\t\"motorbike\"\nQ1\talias\t\"moto\"\n");
  EXPECT_EQ(store.meta("Q1")->aliases, (std::vector<std::string>{"Motorbike", "moto"}));
}

TEST(GraphStoreIngest, FrozenStoreRejectsWrites) {
  GraphStore store;
  store.freeze();
  EXPECT_THROW(store.add_edge({"a", "p", "b"}), std::logic_error);
}

TEST(OutgoingEdges, FixtureDirtBike) {
  const auto store = testing::load_fixture();
  const auto edges = store.outgoing_edges("Q_dirtbike");
  ASSERT_EQ(edges.size(), 2u);
  EXPECT_EQ(edges[0], (EdgeRecord{"Q_dirtbike", "P279", "Q_motorcycle", false}));
  EXPECT_EQ(edges[1], (EdgeRecord{"Q_dirtbike", "label", "dirt bike", true}));
}

TEST(OutgoingEdges, UnknownAndIncomingOnlyNodesAreEmpty) {
  const auto store = testing::load_fixture();
  EXPECT_TRUE(store.outgoing_edges("Q999999").empty());
  EXPECT_TRUE(store.outgoing_edges("Q_entity").empty());
}

TEST(OutgoingEdges, EveryRowRoundTrips) {
  const auto store = testing::load_fixture();
  for (const auto& e : store.edges()) {
    const auto out = store.outgoing_edges(e.node1);
    EXPECT_EQ(std::count(out.begin(), out.end(), e), 1) << e.node1 << " " << e.property;
  }
}

TEST(SearchLabels, PrefixMatchRanksShortestFirst) {
  const auto store = testing::load_fixture();
  const auto hits = store.search_labels("motorcyc", 10);
  ASSERT_FALSE(hits.empty());
  EXPECT_EQ(hits[0].qnode, "Q_motorcycle");
  EXPECT_EQ(hits[0].label, "motorcycle");
}

TEST(SearchLabels, NoMatchAndEmptyQuery) {
  const auto store = testing::load_fixture();
  EXPECT_TRUE(store.search_labels("zzz-no-such", 10).empty());
  EXPECT_TRUE(store.search_labels("", 10).empty());
  EXPECT_TRUE(store.search_labels(" - ", 10).empty());
}

TEST(SearchLabels, LimitHonored) {
  const auto store = testing::load_fixture();
  EXPECT_EQ(store.search_labels("bike", 1).size(), 1u);
}

TEST(SearchLabels, ExactMatchesBeatPrefixMatches) {
  GraphStore store;
  ingest_text(store,
              "node1\tlabel\tnode2\nQa\tlabel\t\"motor\"\nQb\tlabel\t\"motorboat\"\n"
              "Qc\tlabel\t\"mot\"\nQd\tlabel\t\"motor vehicle\"\n");
  const auto hits = store.search_labels("motor", 10);
  ASSERT_EQ(hits.size(), 3u);
  EXPECT_EQ(hits[0].qnode, "Qa");
  EXPECT_EQ(hits[1].qnode, "Qd");
  EXPECT_EQ(hits[2].qnode, "Qb");
}

TEST(SearchLabels, MatchesAliasesAndRequiresAllTokens) {
  GraphStore store;
  ingest_text(store,
              "node1\tlabel\tnode2\nQ1\tlabel\t\"motorcycle\"\nQ1\talias\t\"motorbike\"\n"
              "Q2\tlabel\t\"dirt bike\"\nQ3\tlabel\t\"bike shed\"\n");
  auto hits = store.search_labels("motorb", 5);
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0].qnode, "Q1");
  EXPECT_EQ(hits[0].label, "motorcycle");
  EXPECT_EQ(hits[0].matched_name, "motorbike");
  hits = store.search_labels("DIRT bi", 5);
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0].qnode, "Q2");
}

TEST(SearchLabels, RelabelingDropsOldTokens) {
  GraphStore store;
  ingest_text(store, "node1\tlabel\tnode2\nQ1\tlabel\t\"old name\"\nQ1\tlabel\t\"new name\"\n");
  EXPECT_TRUE(store.search_labels("old", 5).empty());
  EXPECT_EQ(store.search_labels("new", 5).size(), 1u);
}

TEST(SearchLabels, LimitResultsArePrefixes) {
  GraphStore store;
  std::string text = "node1\tlabel\tnode2\n";
  for (int i = 0; i < 30; ++i) {
    text += "Q" + std::to_string(i) + "\tlabel\t\"bike" + std::string(i % 7, 'x') + " " +
            (i % 3 == 0 ? "bike" : "trail") + "\"\n";
  }
  ingest_text(store, text);
  for (std::size_t k = 1; k < 30; ++k) {
    const auto a = store.search_labels("bike", k);
    const auto b = store.search_labels("bike", k + 1);
    ASSERT_LE(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].qnode, b[i].qnode);
    const auto again = store.search_labels("bike", k);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].qnode, again[i].qnode);
  }
}

TEST(WriteEdges, ReingestReproducesStore) {
  const auto store = testing::load_fixture();
  std::stringstream buf;
  store.write_edges(buf);
  GraphStore copy;
  copy.ingest_edges(buf, "copy");
  ASSERT_EQ(copy.edges().size(), store.edges().size());
  for (std::size_t i = 0; i < store.edges().size(); ++i) EXPECT_EQ(copy.edges()[i], store.edges()[i]);
}

}  // namespace
}  // namespace kgsim
