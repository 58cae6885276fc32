#ifndef EMEND_LEXICON_HPP
#define EMEND_LEXICON_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace emend {

enum class Pos { N, V, ADJ, ADV, PRO, DET, CONJ, PREP, INTJ };

const char* pos_name(Pos pos);
Pos pos_from_string(const std::string& s);  // throws std::invalid_argument

// Feature set: ordered key=value pairs; flags carry an empty value.
// Rendered as Tense, Pers, Nb first, remaining keys alphabetically.
class Features {
 public:
  void set(const std::string& key, const std::string& value = "");
  bool has(const std::string& key) const;
  std::string get(const std::string& key) const;  // "" when absent
  bool empty() const { return values_.empty(); }
  std::string render() const;               // "Tense=PP+gen_sax"
  std::string render_with(Pos pos) const;   // "V+Tense=PP"
  bool operator==(const Features& other) const { return values_ == other.values_; }
  const std::map<std::string, std::string>& items() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

struct LexEntry {
  std::string form;   // case-folded
  std::string lemma;
  Pos pos = Pos::N;
  Features features;
  std::vector<std::string> subcat;  // collocate lemmas, verbs only
};

enum class ContractionSource { Miege, Corpus, Editor };

struct ContractionToken {
  std::string surface;
  std::string lemma;
  Pos pos = Pos::N;
  Features features;
};

struct ContractionEntry {
  std::string short_form;  // canonical apostrophes, case-folded
  std::vector<ContractionToken> expansion;
  bool keep_in_modern = false;
  ContractionSource source = ContractionSource::Miege;
  std::string note;
};

class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Immutable dictionary: word forms, the contraction table, the foreign-noun
// flags used by the interlingual plural, and verb subcategorization contexts.
class Lexicon {
 public:
  Lexicon() = default;
  // move-only: the lemma index points into the entry storage
  Lexicon(const Lexicon&) = delete;
  Lexicon& operator=(const Lexicon&) = delete;
  Lexicon(Lexicon&&) = default;
  Lexicon& operator=(Lexicon&&) = default;

  // Lexicon file: form<TAB>lemma<TAB>pos<TAB>feature,feature,...  '#' comments.
  // Within the feature field, subcat=a,b,c consumes trailing bare items, so
  // flag features must precede it. Duplicate quadruples are load errors.
  static Lexicon load(const std::string& lexicon_path, const std::string& contractions_path);
  static Lexicon load_from_strings(const std::string& lexicon_text,
                                   const std::string& contractions_text,
                                   const std::string& lexicon_name = "<lexicon>",
                                   const std::string& contractions_name = "<contractions>");

  // All entries whose form matches case-insensitively; empty means UNKNOWN.
  const std::vector<LexEntry>& lookup(const std::string& form) const;

  // Exact case-insensitive match against the contraction table.
  const ContractionEntry* lookup_contraction(const std::string& cluster) const;

  const std::vector<ContractionEntry>& contractions() const { return contractions_; }
  std::map<std::string, std::size_t> entry_counts_by_pos() const;
  std::size_t size() const { return total_entries_; }

  // Every distinct verb lemma with the given features present.
  std::vector<std::string> verb_lemmas() const;

  // First PT/PP verb form of the lemma, nullptr when the lexicon has none.
  const LexEntry* find_verb_past(const std::string& lemma) const;
  // First plural noun form of the lemma.
  const LexEntry* find_noun_plural(const std::string& lemma) const;

 private:
  std::map<std::string, std::vector<LexEntry>> entries_;  // keyed by folded form
  std::map<std::string, std::vector<const LexEntry*>> by_lemma_;
  std::map<std::string, std::size_t> contraction_index_;  // folded short form
  std::vector<ContractionEntry> contractions_;
  std::size_t total_entries_ = 0;

  void parse_lexicon(const std::string& text, const std::string& name);
  void parse_contractions(const std::string& text, const std::string& name);
  void build_index();
};

}  // namespace emend

#endif
