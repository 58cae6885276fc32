#ifndef EMEND_STATS_HPP
#define EMEND_STATS_HPP

#include <map>
#include <string>
#include <vector>

#include "emend/normalize.hpp"

namespace emend {

// Per-document apostrophe bookkeeping. Every apostrophe occurrence lands in
// exactly one bucket, so
//   n_apostrophes == n_gen_s + n_plural_s + n_d + n_t + sum(n_other) + n_unresolved
// holds on every row.
struct StatsRecord {
  std::string doc_id;
  std::string author;
  std::string year;  // empty when unknown
  std::size_t corpus_size = 0;     // WordCluster count
  std::size_t distinct_words = 0;  // case-folded distinct cluster surfaces
  std::size_t n_apostrophes = 0;
  std::size_t n_gen_s = 0;     // validated genitive apostrophes
  std::size_t n_plural_s = 0;  // validated interlingual plural apostrophes
  std::size_t n_d = 0;         // validated 'd elisions
  std::size_t n_t = 0;         // validated 't elisions
  std::map<std::string, std::size_t> n_other;  // tho', thro', 'tis, th', contraction:other
  std::size_t n_unresolved = 0;

  std::size_t other_sum() const;
  bool column_sum_holds() const;
};

// Per-document rows ordered by (year, id) plus a Total row summing each
// column. Pure function of the annotated documents.
std::vector<StatsRecord> compute_stats(const std::vector<AnnotatedDocument>& docs);

// Fixed column order:
// doc,author,year,corpus_size,distinct_words,apostrophes,genitive_s,plural_s,
// elision_d,elision_t,tho,thro,tis,th,contraction_other,unresolved
std::string render_stats_csv(const std::vector<StatsRecord>& rows);
std::string render_stats_table(const std::vector<StatsRecord>& rows);

}  // namespace emend

#endif
