#ifndef EMEND_UTF8_HPP
#define EMEND_UTF8_HPP

#include <string>

namespace emend {

// Decode UTF-8 into codepoints. Malformed bytes are interpreted as the
// Latin-1 characters with the same value, so decoding is total.
std::u32string utf8_decode(const std::string& bytes);

// Encode codepoints as UTF-8.
std::string utf8_encode(const std::u32string& text);
std::string utf8_encode(char32_t cp);

bool is_letter(char32_t cp);
bool is_digit(char32_t cp);
bool is_space(char32_t cp);
bool is_vowel(char32_t cp);
char32_t to_lower(char32_t cp);
char32_t to_upper(char32_t cp);
bool is_upper(char32_t cp);

// Case-folded copy (ASCII + Latin-1 letters).
std::u32string fold_case(const std::u32string& s);
std::string fold_case_utf8(const std::string& s);

}  // namespace emend

#endif
