#ifndef EMEND_NORMALIZE_HPP
#define EMEND_NORMALIZE_HPP

#include <string>
#include <vector>

#include "emend/config.hpp"
#include "emend/lexicon.hpp"
#include "emend/morph.hpp"
#include "emend/syntax.hpp"
#include "emend/text_ingest.hpp"

namespace emend {

struct AnnotatedDocument {
  SourceDocument doc;
  std::vector<Token> tokens;
  std::vector<Analysis> analyses;  // Validated + Invalidated + residual hypotheses
  std::vector<Diagnostic> diagnostics;
};

struct AlignPair {
  std::size_t src_begin = 0;  // codepoint spans
  std::size_t src_end = 0;
  std::size_t out_begin = 0;
  std::size_t out_end = 0;
};

struct NormalizeResult {
  std::string modern_text;  // UTF-8
  std::vector<AlignPair> alignment;
};

// The resource bundle plus the whole pipeline: ingest -> cascade -> syntax
// validation -> selection. Immutable after construction; annotate() is pure,
// so documents can be processed in parallel on one Engine.
class Engine {
 public:
  Engine(Lexicon lexicon, MorphRuleSet morph_rules, SyntaxRuleSet syntax_rules,
         RunConfig config);

  // internal sub-engines hold references into this object
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  AnnotatedDocument annotate(const SourceDocument& doc,
                             ScanDirection dir = ScanDirection::LeftToRight) const;

  NormalizeResult normalize(const AnnotatedDocument& annotated) const;

  // Hypothesis/validation trace for the n-th occurrence (1-based) of `word`,
  // matched case-insensitively against token surfaces.
  std::string explain(const SourceDocument& doc, const std::string& word, int occurrence) const;

  // Same trace, addressed by a codepoint span instead of a surface.
  std::string explain_span(const SourceDocument& doc, std::size_t begin, std::size_t end) const;

  // One line per resource: lexicon size, entry counts per POS, contraction
  // and rule counts.
  std::string resource_summary() const;

  // Single-word convenience used throughout the tests: annotate `text` and
  // return the modern text.
  std::string normalize_text(const std::string& text) const;

  const Lexicon& lexicon() const { return lexicon_; }
  const RunConfig& config() const { return config_; }
  const MorphEngine& morph() const { return morph_; }

 private:
  void select(const std::vector<Token>& tokens, std::vector<Analysis>& analyses,
              std::vector<Diagnostic>& diagnostics) const;
  std::string explain_token(const SourceDocument& doc, const std::vector<Token>& tokens,
                            std::size_t index) const;

  Lexicon lexicon_;
  MorphRuleSet morph_rules_;
  SyntaxRuleSet syntax_rules_;
  RunConfig config_;
  MorphEngine morph_;
  SyntaxEngine syntax_;
};

// Line-delimited annotation records:
// doc<TAB>span<TAB>surface<TAB>lemma<TAB>pos+features<TAB>modern<TAB>status<TAB>tier<TAB>trace<TAB>note
std::string render_records(const AnnotatedDocument& annotated);

// doc<TAB>span<TAB>token<TAB>kind<TAB>message
std::string render_diagnostics(const AnnotatedDocument& annotated);

// src_begin<TAB>src_end<TAB>out_begin<TAB>out_end, one pair per line
std::string render_alignment(const NormalizeResult& result);

}  // namespace emend

#endif
