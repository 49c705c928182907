#include "halves/transform.hpp"

#include <algorithm>
#include <numeric>

#include "halves/errors.hpp"
#include "halves/rng.hpp"
#include "halves/unicode.hpp"

namespace halves::transform {

HalfPair split_halves(const std::vector<std::string>& words) {
    const std::size_t n = words.size();
    if (n < 2) throw UndefinedStatistic("cannot split fewer than two words into halves");
    const std::size_t half = n / 2;
    HalfPair pair;
    pair.first.assign(words.begin(), words.begin() + half);
    pair.second.assign(words.end() - half, words.end());
    pair.dropped_middle = (n % 2) != 0;
    return pair;
}

namespace {

// Cuts sentence/paragraph word-length lists at the word midpoint. A block
// straddling a boundary contributes its within-range word count.
std::vector<std::uint32_t> cut_lengths(const std::vector<std::uint32_t>& lengths,
                                       std::uint64_t from, std::uint64_t to) {
    std::vector<std::uint32_t> out;
    std::uint64_t begin = 0;
    for (const auto len : lengths) {
        const std::uint64_t end = begin + len;
        const std::uint64_t lo = std::max(begin, from);
        const std::uint64_t hi = std::min(end, to);
        if (hi > lo) out.push_back(static_cast<std::uint32_t>(hi - lo));
        begin = end;
        if (begin >= to) break;
    }
    return out;
}

HalfTokens make_half(const tokenize::TokenizedText& text, std::uint64_t from, std::uint64_t to,
                     bool dropped_middle) {
    HalfTokens half;
    half.words.assign(text.words.begin() + static_cast<std::ptrdiff_t>(from),
                      text.words.begin() + static_cast<std::ptrdiff_t>(to));
    for (std::uint64_t i = from; i < to; ++i) half.letters += text.word_letters[i];
    half.sentence_lengths = cut_lengths(text.sentence_lengths, from, to);
    half.paragraphs = cut_lengths(text.paragraph_lengths, from, to).size();
    half.dropped_middle = dropped_middle;
    return half;
}

} // namespace

std::pair<HalfTokens, HalfTokens> split_tokenized(const tokenize::TokenizedText& text) {
    const std::uint64_t n = text.total_words();
    if (n < 2) throw UndefinedStatistic("cannot split fewer than two words into halves");
    const std::uint64_t half = n / 2;
    const bool dropped = (n % 2) != 0;

    HalfTokens first = make_half(text, 0, half, dropped);
    HalfTokens second = make_half(text, n - half, n, dropped);

    // Punctuation goes to the first half up to and including characters
    // directly after its last word.
    for (const auto w : text.punct_word_index) {
        if (w <= half) {
            ++first.punctuation;
        } else {
            ++second.punctuation;
        }
    }

    // Raw byte spans: [body start, end of last first-half word] and
    // [start of first second-half word, body end]. For odd N the bytes
    // around the dropped middle word belong to neither half.
    first.byte_size = text.word_end[half - 1];
    second.byte_size = text.body_bytes - text.word_begin[n - half];
    return {std::move(first), std::move(second)};
}

std::vector<std::string> shuffle_words(const std::vector<std::string>& words,
                                       const ShuffleSpec& spec,
                                       std::uint32_t repetition_index,
                                       std::string_view doc_id) {
    if (repetition_index >= spec.repetitions) {
        throw std::invalid_argument("repetition_index out of range");
    }
    std::vector<std::string> out = words;
    rng::Xoshiro256 gen(rng::stream_key(spec.seed, doc_id, repetition_index));
    for (std::size_t i = out.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(gen.bounded(i));
        std::swap(out[i - 1], out[j]);
    }
    return out;
}

std::vector<std::string> invert_words(const std::vector<std::string>& words) {
    return {words.rbegin(), words.rend()};
}

std::string invert_letters(std::string_view body) {
    return uni::reverse_codepoints(body);
}

std::string render_words(std::span<const std::string> words) {
    std::size_t size = words.empty() ? 0 : words.size() - 1;
    for (const auto& w : words) size += w.size();
    std::string out;
    out.reserve(size);
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i != 0) out.push_back(' ');
        out += words[i];
    }
    return out;
}

} // namespace halves::transform
