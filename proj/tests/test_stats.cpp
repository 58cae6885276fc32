#include "doctest.h"
#include "emend/stats.hpp"
#include "test_helpers.hpp"

using namespace emend;

TEST_CASE("fixture corpus statistics match the hand-tallied gold counts exactly") {
  const std::vector<AnnotatedDocument> corpus = test::annotate_fixture_corpus(test::engine());
  const std::vector<StatsRecord> rows = compute_stats(corpus);
  const std::string csv = render_stats_csv(rows);
  const std::string gold = test::read_file(test::fixture_dir() + "/gold/stats_gold.csv");
  CHECK(csv == gold);
}

TEST_CASE("column-sum invariant holds on every row including the total") {
  const std::vector<AnnotatedDocument> corpus = test::annotate_fixture_corpus(test::engine());
  const std::vector<StatsRecord> rows = compute_stats(corpus);
  REQUIRE(rows.size() == 7);  // six documents plus Total
  for (const StatsRecord& r : rows) {
    INFO(r.doc_id);
    CHECK(r.column_sum_holds());
  }
  CHECK(rows.back().doc_id == "Total");
}

TEST_CASE("empty corpus yields only an all-zero Total row") {
  const std::vector<StatsRecord> rows = compute_stats({});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].doc_id == "Total");
  CHECK(rows[0].corpus_size == 0);
  CHECK(rows[0].n_apostrophes == 0);
  CHECK(rows[0].column_sum_holds());
}

TEST_CASE("stats are a pure function of the annotated documents") {
  const std::vector<AnnotatedDocument> corpus = test::annotate_fixture_corpus(test::engine());
  const std::string a = render_stats_csv(compute_stats(corpus));
  const std::string b = render_stats_csv(compute_stats(corpus));
  CHECK(a == b);
}

TEST_CASE("column-sum invariant holds on random documents (property)") {
  const Engine& eng = test::engine();
  test::SentenceGen gen(31337);
  std::vector<AnnotatedDocument> docs;
  for (int i = 0; i < 120; ++i) {
    docs.push_back(eng.annotate(make_document("d" + std::to_string(i), gen.sentence(3, 20))));
  }
  const std::vector<StatsRecord> rows = compute_stats(docs);
  REQUIRE(rows.size() == docs.size() + 1);
  for (const StatsRecord& r : rows) {
    INFO(r.doc_id);
    CHECK(r.column_sum_holds());
  }
}

TEST_CASE("rows order by year then id; the total sums every column") {
  const std::vector<AnnotatedDocument> corpus = test::annotate_fixture_corpus(test::engine());
  const std::vector<StatsRecord> rows = compute_stats(corpus);
  REQUIRE(rows.size() == 7);
  CHECK(rows[0].doc_id == "blount_1636");
  CHECK(rows[1].doc_id == "sandys_1652");
  CHECK(rows[2].doc_id == "rycaut_1679");
  CHECK(rows[3].doc_id == "smith_1682");
  CHECK(rows[4].doc_id == "wheler_1682");
  CHECK(rows[5].doc_id == "ray_1693");
  std::size_t apostrophes = 0;
  std::size_t size = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    apostrophes += rows[i].n_apostrophes;
    size += rows[i].corpus_size;
  }
  CHECK(rows[6].n_apostrophes == apostrophes);
  CHECK(rows[6].corpus_size == size);
}

TEST_CASE("text table renders the same cells as the csv") {
  const std::vector<AnnotatedDocument> corpus = test::annotate_fixture_corpus(test::engine());
  const std::vector<StatsRecord> rows = compute_stats(corpus);
  const std::string table = render_stats_table(rows);
  CHECK(table.find("smith_1682") != std::string::npos);
  CHECK(table.find("Total") != std::string::npos);
  CHECK(table.find("apostrophes") != std::string::npos);
}
