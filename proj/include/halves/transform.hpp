#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "halves/tokenize.hpp"

namespace halves::transform {

// The two equal-word-count halves of a word sequence. For odd N the
// middle word is dropped (belongs to neither half).
struct HalfPair {
    std::vector<std::string> first;
    std::vector<std::string> second;
    bool dropped_middle = false;
};

// Throws UndefinedStatistic for fewer than two words.
HalfPair split_halves(const std::vector<std::string>& words);

// One half of a tokenized text with the structural counts cut at the
// same word boundary: a sentence or paragraph straddling the midpoint
// contributes its within-half part to each side.
struct HalfTokens {
    std::vector<std::string> words;
    std::uint64_t letters = 0;
    std::vector<std::uint32_t> sentence_lengths;
    std::uint64_t paragraphs = 0;
    std::uint64_t punctuation = 0;
    std::uint64_t byte_size = 0; // raw body bytes covered by this half
    bool dropped_middle = false;
};

std::pair<HalfTokens, HalfTokens> split_tokenized(const tokenize::TokenizedText& text);

struct ShuffleSpec {
    std::uint64_t seed = 1;
    std::uint32_t repetitions = 10;
};

// Fisher-Yates permutation on a stream keyed by (seed, doc_id, repetition),
// so results do not depend on processing order across a corpus.
std::vector<std::string> shuffle_words(const std::vector<std::string>& words,
                                       const ShuffleSpec& spec,
                                       std::uint32_t repetition_index,
                                       std::string_view doc_id = {});

// Word-order inversion: last word first. Words themselves are untouched.
std::vector<std::string> invert_words(const std::vector<std::string>& words);

// Full code-point reversal of a rendered text.
std::string invert_letters(std::string_view body);

// Canonical rendering of a word sequence: single spaces, no punctuation.
// Original/shuffled/inverted variants are all rendered through this one
// rule before compression so comparisons are like-for-like.
std::string render_words(std::span<const std::string> words);

} // namespace halves::transform
