#include "halves/spatial.hpp"

#include <cmath>
#include <unordered_map>

#include "halves/errors.hpp"

namespace halves::spatial {

PeriodStats period_stats(const WordOccurrences& occ, std::uint64_t half_words) {
    const std::size_t count = occ.positions.size();
    if (count < 2) {
        throw UndefinedStatistic("spatial period undefined for fewer than two occurrences");
    }
    PeriodStats stats;
    stats.frequency = static_cast<double>(count) / static_cast<double>(half_words);

    // Integer gap sum first: the period then depends only on the first and
    // last occurrence, exactly.
    std::uint64_t gap_sum = 0;
    double rate_sum = 0.0;
    for (std::size_t i = 0; i + 1 < count; ++i) {
        const std::uint64_t gap = occ.positions[i + 1] - occ.positions[i]; // zeta + 1
        gap_sum += gap;
        rate_sum += 1.0 / static_cast<double>(gap);
    }
    const double intervals = static_cast<double>(count - 1);
    stats.period = static_cast<double>(gap_sum) / intervals;
    stats.inverse_period = 1.0 / stats.period;
    stats.mean_gap_rate = rate_sum / intervals;
    return stats;
}

std::vector<WordOccurrences> occurrences(std::span<const std::string> words) {
    std::unordered_map<std::string_view, std::size_t> index;
    index.reserve(words.size());
    std::vector<WordOccurrences> out;
    for (std::size_t i = 0; i < words.size(); ++i) {
        const auto [it, inserted] = index.try_emplace(words[i], out.size());
        if (inserted) out.push_back(WordOccurrences{words[i], {}});
        out[it->second].positions.push_back(static_cast<std::uint32_t>(i + 1));
    }
    return out;
}

double mu(std::span<const std::string> half_words,
          const MuConfig& config,
          const std::set<std::string>* common_types) {
    if (config.min_count < 2) {
        throw std::invalid_argument("mu requires min_count >= 2: the period is undefined "
                                    "for single occurrences");
    }
    if (config.common_only && common_types == nullptr) {
        throw std::invalid_argument("common_only mu requires the common type set");
    }
    const std::uint64_t n_half = half_words.size();
    double distance_sum = 0.0;
    std::size_t eligible = 0;
    for (const auto& occ : occurrences(half_words)) {
        const std::uint64_t count = occ.positions.size();
        const bool frequent_enough =
            config.inclusive ? count >= config.min_count : count > config.min_count;
        if (!frequent_enough) continue;
        if (config.common_only && common_types->count(occ.word) == 0) continue;
        const PeriodStats stats = period_stats(occ, n_half);
        distance_sum += std::abs(stats.frequency - stats.inverse_period);
        ++eligible;
    }
    if (eligible == 0) {
        throw UndefinedStatistic("mu undefined: no word reaches the occurrence threshold");
    }
    return distance_sum / static_cast<double>(eligible);
}

} // namespace halves::spatial
