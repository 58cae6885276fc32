#ifndef EMEND_MORPH_HPP
#define EMEND_MORPH_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "emend/config.hpp"
#include "emend/lexicon.hpp"
#include "emend/text_ingest.hpp"

namespace emend {

// What a rule's match produces; drives both hypothesis packaging and the
// syntax pass that later confirms or kills it.
enum class Family {
  Lexical,       // direct dictionary hit
  Contraction,   // short form from the contraction table
  Elision,       // stem of a 'd/'t cluster restored to its -ed form
  TPreterit,     // bare t-final preterit (linkt)
  Genitive,      // Saxon genitive, marker present or omitted
  GenitiveBare,  // plural noun that doubles as an unmarked genitive (wives)
  Interlingual,  // foreign-noun plural in 's
  PluralNoun,    // -es plural reading of a bare stem (profes -> profs)
};

const char* family_name(Family family);

enum class AnalysisStatus { Hypothesis, Validated, Invalidated };
const char* status_name(AnalysisStatus status);

struct Analysis {
  std::size_t token_begin = 0;  // contiguous token index range, half open
  std::size_t token_end = 0;
  std::string surface;
  std::string lemma;
  Pos pos = Pos::N;
  Features features;
  std::string modern_form;
  std::vector<std::string> rule_trace;  // empty only for direct lexicon hits
  int tier = 0;
  AnalysisStatus status = AnalysisStatus::Hypothesis;
  Family family = Family::Lexical;
  int expansion_index = -1;  // position within a contraction expansion
  std::string note;          // validated_by=<rule> / invalidated_by=<rule>
};

enum class TransformKind {
  None,
  Append,
  StripSuffix,
  SubPrefix,
  SubSuffix,
  SubChar,
  DoubleFinal,
  UndoubleFinal,
};

enum class EmitKind {
  VerbPast,       // candidate must be a lexicon V with Tense PT or PP
  VerbPastLemmaE, // stem+e must be a lexicon V lemma; past derived from it
  PluralOfNoun,   // stripped stem must be a lexicon singular noun
  Genitive,       // stripped stem must be a lexicon N/PRO
  GenitiveBare,   // surface itself must be a plural s-final lexicon noun
  Interlingual,   // vowel-final Foreign stem
  TPreterit,      // stem must be a lexicon verb ending p/k/x/ss/sh
  Variant,        // candidate re-enters the cascade at the next depth
};

struct MorphCondition {
  enum class Kind { Any, Prefix, Suffix, Contains, DoubledFinal, EndsVowel, EndsIn };
  Kind kind = Kind::Any;
  bool on_stem = false;  // evaluated after the transform instead of before
  std::string text;
  std::vector<std::string> ends;  // for EndsIn
};

struct MorphRule {
  std::string id;
  int tier = 0;
  std::vector<MorphCondition> conditions;
  TransformKind transform = TransformKind::None;
  std::string arg_a;
  std::string arg_b;
  EmitKind emit = EmitKind::Variant;
};

// Rule file: id<TAB>tier<TAB>condition<TAB>transform<TAB>emit, '#' comments.
// Conditions are ';'-joined atoms: any, prefix=X, suffix=X, contains=X,
// doubledFinal, endsVowel, endsIn=a,b,c; a 'stem:' prefix applies the atom to
// the transformed stem. Transforms: none, append:X, strip_suffix:X,
// sub_prefix:A:B, sub_suffix:A:B, sub_char:A:B, double_final, undouble_final.
class MorphRuleSet {
 public:
  static MorphRuleSet load(const std::string& path);
  static MorphRuleSet load_from_string(const std::string& text,
                                       const std::string& name = "<rules>");
  const std::vector<MorphRule>& rules() const { return rules_; }
  std::vector<const MorphRule*> rules_for(EmitKind kind) const;

 private:
  std::vector<MorphRule> rules_;
};

// One attempted rule application, kept for the explain trace.
struct CascadeAttempt {
  int tier = 0;
  std::string rule_id;
  std::string candidate;
  std::string outcome;  // "hypothesis", "no lexicon entry", ...
};

struct CascadeResult {
  std::vector<Analysis> analyses;
  std::vector<CascadeAttempt> attempts;
  bool cap_exceeded = false;
  std::size_t generated = 0;
};

// Candidate generation for one word cluster. Pure; all hypotheses carry the
// tier they were produced at, and ties inside a tier are ordered by rule id
// then lemma so results do not depend on evaluation order.
class MorphEngine {
 public:
  MorphEngine(const Lexicon& lexicon, const MorphRuleSet& rules, const RunConfig& config)
      : lexicon_(lexicon), rules_(rules), config_(config) {}

  // Elided -ed verb readings of a bare stem via the ed/ted/sed suffix rules
  // plus mute-e restoration.
  std::vector<Analysis> hypothesize_elided_verb(const std::string& stem) const;

  // Orthographic-variant readings: applies the variant table up to `depth`
  // chained edits, re-attempting lookup and elision on each variant.
  std::vector<Analysis> hypothesize_orthographic_variant(const std::string& surface,
                                                         int depth) const;

  // Saxon genitive readings of s / 's / s' surfaces.
  std::vector<Analysis> hypothesize_genitive(const std::string& surface) const;

  // Interlingual plural readings of vowel-final foreign stems with 's.
  std::vector<Analysis> hypothesize_interlingual_plural(const std::string& surface) const;

  // Full tiered cascade over one token. Tier 0 is dictionary/contraction
  // lookup; later tiers add elision, genitive, plural and variant readings.
  CascadeResult run_cascade(const Token& token) const;

  const Lexicon& lexicon() const { return lexicon_; }
  const RunConfig& config() const { return config_; }

 private:
  struct Gen;  // per-token generation state
  bool rule_applies(const MorphRule& rule, const std::string& folded) const;
  bool stem_condition_holds(const MorphRule& rule, const std::string& stem) const;
  const Lexicon& lexicon_;
  const MorphRuleSet& rules_;
  const RunConfig& config_;
};

// True when the final d/t of the verb's -ed past may be elided: stems in
// p, k, x, ss, sh have the four surface forms -ed/-'d/-'t/-t.
bool stem_supports_t_preterit(const std::string& stem);

// Modern -ed past of a verb lemma: the lexicon PT/PP form when present,
// otherwise lemma+(e)d.
std::string modern_past_of(const Lexicon& lexicon, const std::string& lemma);

}  // namespace emend

#endif
