#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "halves/tokenize.hpp"
#include "halves/transform.hpp"

namespace halves::features {

// m -> V_m: how many distinct words occur exactly m times.
struct FrequencySpectrum {
    std::map<std::uint64_t, std::uint64_t> counts;
    std::uint64_t total_words = 0;    // N = sum m * V_m
    std::uint64_t distinct_words = 0; // n = sum V_m
    std::uint64_t max_count = 0;      // occurrences of the most frequent word
};

// Throws UndefinedStatistic on an empty word list.
FrequencySpectrum spectrum(std::span<const std::string> words);

struct RareCounts {
    // Index kappa-1, kappa = 1..kappa_max.
    std::vector<std::uint64_t> h;         // words occurring at most kappa times
    std::vector<double> h_norm;           // h(kappa) / n
    std::vector<std::uint64_t> rare_mass; // sum_{m<=kappa} m * V_m
};

RareCounts rare_counts(const FrequencySpectrum& s, std::uint32_t kappa_max = 5);

struct CommonWordStats {
    std::uint64_t common_types = 0; // C
    double freq_first = 0.0;        // c1: relative frequency of common types in half 1
    double freq_second = 0.0;       // c2
};

CommonWordStats common_words(std::span<const std::string> first,
                             std::span<const std::string> second);

// K = 100 * (-1/N + sum V_m m^2 / N^2); `per_type` divides by n as well.
// Throws UndefinedStatistic for N < 2.
double yule_k(const FrequencySpectrum& s, bool per_type = false);

// -sum_m (V_m/n) ln (V_m/n) over occupied spectrum classes.
double spectrum_entropy(const FrequencySpectrum& s);

// Everything the relation battery needs from one half.
struct HalfFeatures {
    std::uint64_t words = 0;    // N
    std::uint64_t distinct = 0; // n
    std::uint64_t letters = 0;  // L
    RareCounts rare;
    double yule = 0.0;
    double entropy = 0.0; // spectrum entropy
    double avg_word_length = 0.0;
    std::uint64_t sentences = 0;
    std::uint64_t paragraphs = 0;
    std::uint64_t punctuation = 0;
    std::uint64_t byte_size = 0;
    std::optional<tokenize::SentenceStats> sentence_stats;
};

HalfFeatures half_features(const transform::HalfTokens& half,
                           std::uint32_t kappa_max = 5,
                           bool yule_per_type = false);

} // namespace halves::features
