#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace halves::spatial {

struct WordOccurrences {
    std::string word;
    std::vector<std::uint32_t> positions; // 1-based, strictly increasing
};

struct PeriodStats {
    double frequency = 0.0;      // f = count / N_half
    double period = 0.0;         // t, mean inclusive gap between occurrences
    double inverse_period = 0.0; // g = 1/t
    double mean_gap_rate = 0.0;  // omega-bar, mean of 1/(gap)
};

// Throws UndefinedStatistic for fewer than two occurrences (the period is
// not defined for words that appear once).
PeriodStats period_stats(const WordOccurrences& occ, std::uint64_t half_words);

struct MuConfig {
    std::uint32_t min_count = 15; // words entering mu appear at least this often
    bool common_only = false;     // restrict to common types of both halves
    bool inclusive = true;        // count >= min_count; false means strictly >
};

// Occurrence lists per type, in order of first appearance.
std::vector<WordOccurrences> occurrences(std::span<const std::string> words);

// mu = mean |f(w) - g(w)| over eligible types. Throws UndefinedStatistic
// when no type qualifies. `common_types` is required by common_only mode.
double mu(std::span<const std::string> half_words,
          const MuConfig& config,
          const std::set<std::string>* common_types = nullptr);

} // namespace halves::spatial
