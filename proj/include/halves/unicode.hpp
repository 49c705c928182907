#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace halves::uni {

// Strict UTF-8 decoding. Overlong forms, surrogates and out-of-range
// code points are rejected.
bool valid_utf8(std::string_view bytes);

// Decodes the code point starting at byte offset `pos` and advances `pos`
// past it. Returns U+FFFD and advances by one byte on malformed input
// (callers validating up front never see that path).
char32_t next_codepoint(std::string_view bytes, std::size_t& pos);

void append_utf8(std::string& out, char32_t cp);
std::size_t utf8_length(char32_t cp);

// Canonical composition (NFC) of a UTF-8 string.
std::string nfc(const std::string& utf8);

// Reverses a UTF-8 string code point by code point.
std::string reverse_codepoints(std::string_view utf8);

bool is_letter(char32_t cp);
bool is_digit(char32_t cp);
char32_t to_lower(char32_t cp); // simple (locale-free) case mapping

} // namespace halves::uni
