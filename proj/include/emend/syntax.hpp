#ifndef EMEND_SYNTAX_HPP
#define EMEND_SYNTAX_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "emend/config.hpp"
#include "emend/lexicon.hpp"
#include "emend/morph.hpp"
#include "emend/text_ingest.hpp"

namespace emend {

struct Diagnostic {
  std::size_t token_index = 0;
  std::size_t begin = 0;  // codepoint span of the token
  std::size_t end = 0;
  std::string kind;  // UNKNOWN | unresolved_apostrophe | ambiguous | unconfirmed | hypothesis_cap
  std::string message;
};

// Matches are collected first and overlaps resolved leftmost-longest, so the
// validated set does not depend on the scan direction; the parameter exists
// so tests can assert exactly that.
enum class ScanDirection { LeftToRight, RightToLeft };

struct SyntaxCond {
  enum class Kind { Hyp, Val, PosIs, NoPos, NotFeature, Lemma, Lit };
  Kind kind = Kind::Hyp;
  std::vector<std::string> values;  // '|' alternation
};

struct SyntaxSlot {
  bool head = false;
  std::vector<SyntaxCond> conds;
};

enum class SyntaxAction {
  ExpandContraction,
  ConfirmElision,
  ConfirmTPreterit,
  ValidateGenitive,
  ValidateGenitiveConj,
  ValidateInterlingual,
  DisambiguateNounVerb,
};

struct SyntaxRule {
  std::string id;
  std::vector<SyntaxSlot> slots;  // matched against consecutive word clusters
  SyntaxAction action = SyntaxAction::ExpandContraction;
  int window = -1;  // -1: use the engine config
};

// Rule file: id<TAB>pattern<TAB>action<TAB>param. Pattern is space-separated
// slots, each [cond;cond;...] with the head slot prefixed by '*'. Conditions:
// hyp=FAMILY, val=FAMILY, pos=P, nopos=P, not=FEATURE, lemma=L, lit=S; values
// may alternate with '|'. Rules apply in file order.
class SyntaxRuleSet {
 public:
  static SyntaxRuleSet load(const std::string& path);
  static SyntaxRuleSet load_from_string(const std::string& text,
                                        const std::string& name = "<syntax>");
  const std::vector<SyntaxRule>& rules() const { return rules_; }

 private:
  std::vector<SyntaxRule> rules_;
};

// Contextual validation over adjacent tokens: confirms or kills hypotheses,
// expands contractions, transcribes genitives. Never deletes tokens; it only
// marks analyses and sets modern forms. Every invalidation records the rule
// id that made the call.
class SyntaxEngine {
 public:
  SyntaxEngine(const Lexicon& lexicon, const SyntaxRuleSet& rules, const RunConfig& config)
      : lexicon_(lexicon), rules_(rules), config_(config) {}

  void run(const std::vector<Token>& tokens, std::vector<Analysis>& analyses,
           std::vector<Diagnostic>& diagnostics,
           ScanDirection dir = ScanDirection::LeftToRight) const;

 private:
  struct Pass;
  const Lexicon& lexicon_;
  const SyntaxRuleSet& rules_;
  const RunConfig& config_;
};

}  // namespace emend

#endif
