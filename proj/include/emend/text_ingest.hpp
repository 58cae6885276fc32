#ifndef EMEND_TEXT_INGEST_HPP
#define EMEND_TEXT_INGEST_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "emend/utf8.hpp"

namespace emend {

// The canonical apostrophe every variant codepoint is folded onto.
inline constexpr char32_t kApostrophe = U'\'';

// Codepoints treated as apostrophes on input: ' (U+0027), the single
// quotation marks U+2018/U+2019, and the modifier letter U+02BC.
const std::vector<char32_t>& apostrophe_codepoints();

struct UnifyResult {
  std::string canonical;  // UTF-8, every apostrophe variant replaced by '
  // (codepoint position, original codepoint) for each replacement
  std::vector<std::pair<std::size_t, char32_t>> substitutions;
};

// Total function: replaces every member of the apostrophe set with ' and
// records the replacements so the original is recoverable. Idempotent.
UnifyResult unify_apostrophes(const std::string& raw);

enum class TokenKind { WordCluster, Punct, Number };

struct Token {
  std::string surface;     // UTF-8, canonical apostrophes
  std::size_t begin = 0;   // half-open codepoint interval into the document text
  std::size_t end = 0;
  TokenKind kind = TokenKind::Punct;
  // (codepoint offset within surface, original codepoint before unification)
  std::vector<std::pair<std::size_t, char32_t>> apostrophe_offsets;
};

struct SourceDocument {
  std::string id;
  std::string author;  // empty when unknown
  std::optional<int> year;
  std::u32string text;  // canonicalized codepoints, non-empty
  std::vector<std::pair<std::size_t, char32_t>> apostrophe_subs;
};

// Canonicalizes and wraps raw UTF-8 text. Throws std::invalid_argument on
// empty text; empty documents are rejected before they reach the pipeline.
SourceDocument make_document(const std::string& id, const std::string& raw_utf8,
                             const std::string& author = "",
                             std::optional<int> year = std::nullopt);

// Segments the canonicalized text. A WordCluster is a maximal run of letters
// and apostrophes containing at least one letter; the split of a cluster into
// stem + clitic is left to the analysis cascade. Hyphens separate clusters.
std::vector<Token> tokenize(const SourceDocument& doc);

// Rebuilds the canonicalized text from tokens plus the separator characters
// they skipped. Used by tests to check the lossless round trip.
std::string reassemble(const SourceDocument& doc, const std::vector<Token>& tokens);

}  // namespace emend

#endif
