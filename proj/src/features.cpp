#include "halves/features.hpp"

#include <cassert>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "halves/errors.hpp"

namespace halves::features {

FrequencySpectrum spectrum(std::span<const std::string> words) {
    if (words.empty()) throw UndefinedStatistic("frequency spectrum undefined on empty input");
    std::unordered_map<std::string_view, std::uint64_t> occurrences;
    occurrences.reserve(words.size());
    for (const auto& w : words) ++occurrences[w];

    FrequencySpectrum s;
    s.total_words = words.size();
    s.distinct_words = occurrences.size();
    for (const auto& [word, count] : occurrences) {
        ++s.counts[count];
        if (count > s.max_count) s.max_count = count;
    }

#ifndef NDEBUG
    std::uint64_t n = 0, total = 0;
    for (const auto& [m, vm] : s.counts) {
        n += vm;
        total += m * vm;
    }
    assert(n == s.distinct_words && total == s.total_words);
    assert(!s.counts.empty() && s.counts.rbegin()->first == s.max_count);
#endif
    return s;
}

RareCounts rare_counts(const FrequencySpectrum& s, std::uint32_t kappa_max) {
    RareCounts rc;
    rc.h.assign(kappa_max, 0);
    rc.h_norm.assign(kappa_max, 0.0);
    rc.rare_mass.assign(kappa_max, 0);
    std::uint64_t h = 0;
    std::uint64_t mass = 0;
    auto it = s.counts.begin();
    for (std::uint32_t kappa = 1; kappa <= kappa_max; ++kappa) {
        while (it != s.counts.end() && it->first <= kappa) {
            h += it->second;
            mass += it->first * it->second;
            ++it;
        }
        rc.h[kappa - 1] = h;
        rc.h_norm[kappa - 1] = static_cast<double>(h) / static_cast<double>(s.distinct_words);
        rc.rare_mass[kappa - 1] = mass;
    }
    return rc;
}

CommonWordStats common_words(std::span<const std::string> first,
                             std::span<const std::string> second) {
    std::unordered_map<std::string_view, std::uint64_t> count1;
    count1.reserve(first.size());
    for (const auto& w : first) ++count1[w];
    std::unordered_map<std::string_view, std::uint64_t> count2;
    count2.reserve(second.size());
    for (const auto& w : second) ++count2[w];

    CommonWordStats stats;
    std::uint64_t occ1 = 0, occ2 = 0;
    for (const auto& [word, c1] : count1) {
        const auto it = count2.find(word);
        if (it == count2.end()) continue;
        ++stats.common_types;
        occ1 += c1;
        occ2 += it->second;
    }
    if (!first.empty()) stats.freq_first = static_cast<double>(occ1) / first.size();
    if (!second.empty()) stats.freq_second = static_cast<double>(occ2) / second.size();
    return stats;
}

double yule_k(const FrequencySpectrum& s, bool per_type) {
    if (s.total_words < 2) throw UndefinedStatistic("Yule's constant undefined for N < 2");
    const double n_words = static_cast<double>(s.total_words);
    double sum = 0.0;
    for (const auto& [m, vm] : s.counts) {
        const double md = static_cast<double>(m);
        sum += static_cast<double>(vm) * md * md;
    }
    double k = 100.0 * (-1.0 / n_words + sum / (n_words * n_words));
    if (per_type) k /= static_cast<double>(s.distinct_words);
    return k;
}

double spectrum_entropy(const FrequencySpectrum& s) {
    const double n = static_cast<double>(s.distinct_words);
    double entropy = 0.0;
    for (const auto& [m, vm] : s.counts) {
        const double share = static_cast<double>(vm) / n;
        entropy -= share * std::log(share);
    }
    return entropy;
}

HalfFeatures half_features(const transform::HalfTokens& half, std::uint32_t kappa_max,
                           bool yule_per_type) {
    const FrequencySpectrum s = spectrum(half.words);

    HalfFeatures f;
    f.words = s.total_words;
    f.distinct = s.distinct_words;
    f.letters = half.letters;
    f.rare = rare_counts(s, kappa_max);
    f.yule = s.total_words >= 2 ? yule_k(s, yule_per_type) : 0.0;
    f.entropy = spectrum_entropy(s);
    f.avg_word_length = static_cast<double>(half.letters) / static_cast<double>(s.total_words);
    f.sentences = half.sentence_lengths.size();
    f.paragraphs = half.paragraphs;
    f.punctuation = half.punctuation;
    f.byte_size = half.byte_size;
    if (!half.sentence_lengths.empty()) {
        f.sentence_stats = tokenize::sentence_stats(half.sentence_lengths);
    }
    return f;
}

} // namespace halves::features
