#include "emend/text_ingest.hpp"

#include <algorithm>
#include <stdexcept>

namespace emend {

const std::vector<char32_t>& apostrophe_codepoints() {
  static const std::vector<char32_t> set = {U'\'', U'‘', U'’', U'ʼ'};
  return set;
}

static bool is_apostrophe_codepoint(char32_t cp) {
  const auto& set = apostrophe_codepoints();
  return std::find(set.begin(), set.end(), cp) != set.end();
}

UnifyResult unify_apostrophes(const std::string& raw) {
  std::u32string text = utf8_decode(raw);
  UnifyResult result;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (is_apostrophe_codepoint(text[i]) && text[i] != kApostrophe) {
      result.substitutions.emplace_back(i, text[i]);
      text[i] = kApostrophe;
    }
  }
  result.canonical = utf8_encode(text);
  return result;
}

SourceDocument make_document(const std::string& id, const std::string& raw_utf8,
                             const std::string& author, std::optional<int> year) {
  if (raw_utf8.empty()) {
    throw std::invalid_argument("document '" + id + "' has empty text");
  }
  UnifyResult unified = unify_apostrophes(raw_utf8);
  SourceDocument doc;
  doc.id = id;
  doc.author = author;
  doc.year = year;
  doc.text = utf8_decode(unified.canonical);
  doc.apostrophe_subs = std::move(unified.substitutions);
  return doc;
}

static char32_t original_apostrophe_at(const SourceDocument& doc, std::size_t pos) {
  for (const auto& [p, cp] : doc.apostrophe_subs) {
    if (p == pos) return cp;
  }
  return kApostrophe;
}

std::vector<Token> tokenize(const SourceDocument& doc) {
  std::vector<Token> tokens;
  const std::u32string& text = doc.text;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char32_t c = text[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (is_letter(c) || c == kApostrophe) {
      // maximal run of letters and apostrophes
      std::size_t j = i;
      bool has_letter = false;
      while (j < n && (is_letter(text[j]) || text[j] == kApostrophe)) {
        if (is_letter(text[j])) has_letter = true;
        ++j;
      }
      if (has_letter) {
        Token tok;
        tok.begin = i;
        tok.end = j;
        tok.kind = TokenKind::WordCluster;
        tok.surface = utf8_encode(text.substr(i, j - i));
        for (std::size_t k = i; k < j; ++k) {
          if (text[k] == kApostrophe) {
            tok.apostrophe_offsets.emplace_back(k - i, original_apostrophe_at(doc, k));
          }
        }
        tokens.push_back(std::move(tok));
        i = j;
        continue;
      }
      // apostrophes only: fall through as punctuation, one token each
      for (std::size_t k = i; k < j; ++k) {
        Token tok;
        tok.begin = k;
        tok.end = k + 1;
        tok.kind = TokenKind::Punct;
        tok.surface = utf8_encode(text[k]);
        tok.apostrophe_offsets.emplace_back(0, original_apostrophe_at(doc, k));
        tokens.push_back(std::move(tok));
      }
      i = j;
      continue;
    }
    if (is_digit(c)) {
      std::size_t j = i;
      while (j < n && is_digit(text[j])) ++j;
      Token tok;
      tok.begin = i;
      tok.end = j;
      tok.kind = TokenKind::Number;
      tok.surface = utf8_encode(text.substr(i, j - i));
      tokens.push_back(std::move(tok));
      i = j;
      continue;
    }
    Token tok;
    tok.begin = i;
    tok.end = i + 1;
    tok.kind = TokenKind::Punct;
    tok.surface = utf8_encode(text[i]);
    tokens.push_back(std::move(tok));
    ++i;
  }
  return tokens;
}

std::string reassemble(const SourceDocument& doc, const std::vector<Token>& tokens) {
  std::u32string out;
  std::size_t pos = 0;
  for (const Token& tok : tokens) {
    out += doc.text.substr(pos, tok.begin - pos);
    out += utf8_decode(tok.surface);
    pos = tok.end;
  }
  out += doc.text.substr(pos);
  return utf8_encode(out);
}

}  // namespace emend
