#include "emend/stats.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace emend {

namespace {

const char* const kOtherKeys[] = {"tho'", "thro'", "'tis", "th'", "contraction:other"};

const Analysis* first_validated(const AnnotatedDocument& doc, std::size_t tok) {
  for (const Analysis& a : doc.analyses) {
    if (a.status != AnalysisStatus::Validated) continue;
    if (a.token_begin <= tok && tok < a.token_end) return &a;
  }
  return nullptr;
}

}  // namespace

std::size_t StatsRecord::other_sum() const {
  std::size_t sum = 0;
  for (const auto& [k, v] : n_other) sum += v;
  return sum;
}

bool StatsRecord::column_sum_holds() const {
  return n_apostrophes == n_gen_s + n_plural_s + n_d + n_t + other_sum() + n_unresolved;
}

std::vector<StatsRecord> compute_stats(const std::vector<AnnotatedDocument>& docs) {
  std::vector<StatsRecord> rows;
  for (const AnnotatedDocument& doc : docs) {
    StatsRecord row;
    row.doc_id = doc.doc.id;
    row.author = doc.doc.author;
    if (doc.doc.year) row.year = std::to_string(*doc.doc.year);
    for (const char* k : kOtherKeys) row.n_other[k] = 0;

    std::set<std::string> distinct;
    for (std::size_t t = 0; t < doc.tokens.size(); ++t) {
      const Token& tok = doc.tokens[t];
      if (tok.kind == TokenKind::WordCluster) {
        ++row.corpus_size;
        distinct.insert(fold_case_utf8(tok.surface));
      }
      const std::size_t apostrophes = tok.apostrophe_offsets.size();
      if (apostrophes == 0) continue;
      row.n_apostrophes += apostrophes;

      const Analysis* a = first_validated(doc, t);
      bool counted = false;
      if (a != nullptr) {
        switch (a->family) {
          case Family::Genitive:
          case Family::GenitiveBare:
            row.n_gen_s += apostrophes;
            counted = true;
            break;
          case Family::Interlingual:
            row.n_plural_s += apostrophes;
            counted = true;
            break;
          case Family::Elision: {
            const std::string folded = fold_case_utf8(tok.surface);
            if (!folded.empty() && folded.back() == 't') {
              row.n_t += apostrophes;
            } else {
              row.n_d += apostrophes;
            }
            counted = true;
            break;
          }
          case Family::Contraction: {
            const std::string folded = fold_case_utf8(tok.surface);
            bool named = false;
            for (const char* k : kOtherKeys) {
              if (folded == k) {
                row.n_other[k] += apostrophes;
                named = true;
                break;
              }
            }
            if (!named) row.n_other["contraction:other"] += apostrophes;
            counted = true;
            break;
          }
          case Family::Lexical:
            if (a->surface.find('\'') != std::string::npos) {
              row.n_other["contraction:other"] += apostrophes;
              counted = true;
            }
            break;
          default:
            break;
        }
      }
      if (!counted) row.n_unresolved += apostrophes;
    }
    row.distinct_words = distinct.size();
    rows.push_back(std::move(row));
  }

  std::sort(rows.begin(), rows.end(), [](const StatsRecord& a, const StatsRecord& b) {
    if (a.year != b.year) {
      if (a.year.empty() != b.year.empty()) return !a.year.empty();  // dated rows first
      return a.year < b.year;
    }
    return a.doc_id < b.doc_id;
  });

  StatsRecord total;
  total.doc_id = "Total";
  for (const char* k : kOtherKeys) total.n_other[k] = 0;
  for (const StatsRecord& r : rows) {
    total.corpus_size += r.corpus_size;
    total.distinct_words += r.distinct_words;
    total.n_apostrophes += r.n_apostrophes;
    total.n_gen_s += r.n_gen_s;
    total.n_plural_s += r.n_plural_s;
    total.n_d += r.n_d;
    total.n_t += r.n_t;
    for (const auto& [k, v] : r.n_other) total.n_other[k] += v;
    total.n_unresolved += r.n_unresolved;
  }
  rows.push_back(std::move(total));
  return rows;
}

namespace {

std::vector<std::string> header_cells() {
  return {"doc",       "author",    "year",      "corpus_size",       "distinct_words",
          "apostrophes", "genitive_s", "plural_s", "elision_d",        "elision_t",
          "tho",       "thro",      "tis",       "th",                "contraction_other",
          "unresolved"};
}

std::vector<std::string> row_cells(const StatsRecord& r) {
  auto other = [&r](const char* k) {
    auto it = r.n_other.find(k);
    return std::to_string(it == r.n_other.end() ? 0 : it->second);
  };
  return {r.doc_id,
          r.author,
          r.year,
          std::to_string(r.corpus_size),
          std::to_string(r.distinct_words),
          std::to_string(r.n_apostrophes),
          std::to_string(r.n_gen_s),
          std::to_string(r.n_plural_s),
          std::to_string(r.n_d),
          std::to_string(r.n_t),
          other("tho'"),
          other("thro'"),
          other("'tis"),
          other("th'"),
          other("contraction:other"),
          std::to_string(r.n_unresolved)};
}

}  // namespace

std::string render_stats_csv(const std::vector<StatsRecord>& rows) {
  std::ostringstream os;
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      os << cells[i];
    }
    os << '\n';
  };
  line(header_cells());
  for (const StatsRecord& r : rows) line(row_cells(r));
  return os.str();
}

std::string render_stats_table(const std::vector<StatsRecord>& rows) {
  std::vector<std::vector<std::string>> grid;
  grid.push_back(header_cells());
  for (const StatsRecord& r : rows) grid.push_back(row_cells(r));
  std::vector<std::size_t> widths(grid[0].size(), 0);
  for (const auto& row : grid) {
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  }
  std::ostringstream os;
  for (const auto& row : grid) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << "  ";
      os << row[i] << std::string(widths[i] - row[i].size(), ' ');
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace emend
