#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "halves/document.hpp"

namespace halves::tokenize {

struct TokenizerConfig {
    bool case_fold = true;
    bool merge_plural = false;
    // Sentence delimiters: comma, dot, semicolon, question mark,
    // exclamation mark. `comma_is_delim = false` removes the comma
    // without touching the configured set.
    std::set<char32_t> sentence_delims = {U',', U'.', U';', U'?', U'!'};
    bool comma_is_delim = true;

    std::set<char32_t> effective_delims() const;
};

// Word/sentence/paragraph segmentation of one document. The per-word
// vectors carry enough positional information to cut the text at any
// word boundary later without re-tokenizing.
struct TokenizedText {
    std::vector<std::string> words;               // normalized word tokens
    std::uint64_t letter_count = 0;               // L, letters only, post-fold
    std::uint64_t punctuation_count = 0;
    std::vector<std::uint32_t> sentence_lengths;  // words per sentence, all >= 1
    std::uint64_t paragraph_count = 0;            // blank-line blocks with >= 1 word
    double avg_word_length = 0.0;                 // L / N, 0 when empty

    // Split support, indexed like `words`.
    std::vector<std::uint32_t> word_letters;      // letters in words[i]
    std::vector<std::uint64_t> word_begin;        // byte offset of words[i] in body
    std::vector<std::uint64_t> word_end;          // one past last byte of words[i]
    std::vector<std::uint32_t> punct_word_index;  // words completed before each punctuation char
    std::vector<std::uint32_t> paragraph_lengths; // words per counted paragraph
    std::uint64_t body_bytes = 0;

    std::uint64_t total_words() const { return words.size(); }
};

TokenizedText tokenize(const TextDocument& doc, const TokenizerConfig& config);
TokenizedText tokenize(std::string_view body, const TokenizerConfig& config);

struct SentenceStats {
    double mean = 0.0;        // average sentence length in words
    double dispersion = 0.0;  // variance of the length distribution
    double entropy = 0.0;     // -sum k_a ln k_a, natural log
};

// Throws UndefinedStatistic when there are no sentences.
SentenceStats sentence_stats(const std::vector<std::uint32_t>& sentence_lengths);
SentenceStats sentence_stats(const TokenizedText& text);

} // namespace halves::tokenize
