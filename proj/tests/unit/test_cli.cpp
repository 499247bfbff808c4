#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>

#include "kgsim/cli.hpp"
#include "oracles.hpp"
#include "pipeline.hpp"

namespace kgsim {
namespace {

using testing::run_cli;

std::vector<std::string> in_workspace(std::vector<std::string> args) {
  args.insert(args.begin(), {"--out", testing::shared_fixture_workspace().string()});
  return args;
}

TEST(Cli, SimilaritySelfPair) {
  const auto r = run_cli(in_workspace({"similarity", "--q1", "Q_motorcycle", "--q2", "Q_motorcycle"}));
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(r.out,
            "qnode1\tqnode2\tclass\ttranse\tcomplex\ttext\n"
            "Q_motorcycle\tQ_motorcycle\t1\t1\t1\t1\n");
}

TEST(Cli, SimilarityJsonMatchesService) {
  const auto r = run_cli(in_workspace({"--json", "similarity", "--q1", "Q_motorcycle", "--q2", "Q_bus,Q_cheese"}));
  ASSERT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out.front(), '[');
  EXPECT_NE(r.out.find("\"class\""), std::string::npos);
}

TEST(Cli, NeighborsJsonMatchesGoldenFile) {
  const auto r = run_cli(in_workspace({"neighbors", "--qnode", "Q_motorcycle", "--k", "5", "--json"}));
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(r.out, testing::read_file(testing::golden_path("nearest_neighbors_Q_motorcycle_k5.json")));
  const auto f = run_cli(in_workspace({"--format", "json", "neighbors", "--qnode", "Q_motorcycle", "--k", "5"}));
  EXPECT_EQ(f.out, r.out);
}

TEST(Cli, NeighborsTsv) {
  const auto r = run_cli(in_workspace({"neighbors", "--qnode", "Q_motorcycle", "--k", "3"}));
  ASSERT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out.rfind("qnode\tscore\tlabel\nQ_bus\t", 0), 0u) << r.out;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);
}

TEST(Cli, Search) {
  const auto r = run_cli(in_workspace({"search", "--q", "motorcyc"}));
  ASSERT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out.rfind("qnode\tlabel\tdescription\nQ_motorcycle\tmotorcycle\t", 0), 0u) << r.out;
}

TEST(Cli, UsageErrors) {
  auto r = run_cli({"frobnicate"});
  EXPECT_EQ(r.code, cli::kUsageError);
  EXPECT_NE(r.err.find("ingest"), std::string::npos);
  EXPECT_EQ(run_cli({}).code, cli::kUsageError);
  EXPECT_EQ(run_cli({"similarity", "--q1", "Q_bus"}).code, cli::kUsageError);
  EXPECT_EQ(run_cli(in_workspace({"neighbors", "--qnode", "Q_bus", "--k", "0"})).code, cli::kUsageError);
  EXPECT_EQ(run_cli({"train", "--model", "word2vec"}).code, cli::kUsageError);
}

TEST(Cli, DataErrors) {
  testing::TempDir dir;
  const auto bad = dir.path() / "bad.tsv";
  std::ofstream(bad) << "node1\tlabel\tnode2\nQ1\tP1\n";
  auto r = run_cli({"--out", dir.path().string(), "ingest", bad.string()});
  EXPECT_EQ(r.code, cli::kDataError);
  EXPECT_NE(r.err.find(":2"), std::string::npos) << r.err;
  EXPECT_EQ(run_cli({"--out", dir.path().string(), "build-taxonomy"}).code, cli::kDataError);
  EXPECT_EQ(run_cli(in_workspace({"neighbors", "--qnode", "Q_nowhere"})).code, cli::kDataError);
}

TEST(Cli, IngestVectorsAndLexicalize) {
  testing::TempDir dir;
  const auto out = dir.path().string();
  ASSERT_EQ(run_cli({"--out", out, "ingest", testing::fixture_path("mini_vehicles.tsv").string()}).code, 0);
  const auto lex = run_cli({"--out", out, "lexicalize", "--qnode", "Q_motorcycle"});
  EXPECT_EQ(lex.out, "Q_motorcycle\tmotorcycle. motorcycle subclass of motor vehicle.\n");

  const auto vectors = dir.path() / "vectors.tsv";
  std::ofstream(vectors) << "Q_motorcycle\t1\t0\nQ_bus\t1\t1\n";
  ASSERT_EQ(run_cli({"--out", out, "ingest-vectors", vectors.string(), "--kind", "text"}).code, 0);
  const auto r = run_cli({"--out", out, "similarity", "--q1", "Q_motorcycle", "--q2", "Q_bus,Q_yacht"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Q_motorcycle\tQ_bus\t0.30072724844424725\tnull\tnull\t0.7071067811865475"),
            std::string::npos)
      << r.out;
  EXPECT_NE(r.out.find("Q_yacht\t0.0843612358018075\tnull\tnull\tnull"), std::string::npos);
}

}  // namespace
}  // namespace kgsim
