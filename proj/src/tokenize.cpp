#include "halves/tokenize.hpp"

#include <cmath>
#include <map>
#include <unordered_set>

#include "halves/errors.hpp"
#include "halves/unicode.hpp"

namespace halves::tokenize {

namespace {

// Characters counted as punctuation when they occur outside words.
bool is_punctuation(char32_t cp) {
    switch (cp) {
        case U'.': case U',': case U';': case U':': case U'!': case U'?':
        case U'"': case U'\'': case U'(': case U')': case U'—': case U'-':
            return true;
        default:
            return false;
    }
}

bool is_apostrophe(char32_t cp) { return cp == U'\'' || cp == U'’'; }
bool is_hyphen(char32_t cp) { return cp == U'-'; }

bool is_word_char(char32_t cp) {
    return uni::is_letter(cp) || uni::is_digit(cp) || is_apostrophe(cp) || is_hyphen(cp);
}

struct RawChar {
    char32_t cp;
    std::uint64_t begin;
    std::uint64_t end;
};

class Scanner {
public:
    Scanner(std::string_view body, const TokenizerConfig& config)
        : body_(body), config_(config), delims_(config.effective_delims()) {}

    TokenizedText scan() {
        std::size_t pos = 0;
        while (pos < body_.size()) {
            const std::uint64_t begin = pos;
            const char32_t cp = uni::next_codepoint(body_, pos);
            const std::uint64_t end = pos;

            if (cp == U'\n') {
                flush_token();
                ++newline_run_;
                continue;
            }
            if (cp == U' ' || cp == U'\t' || cp == U'\r') {
                flush_token();
                continue; // neutral between newlines: blank lines may hold spaces
            }
            if (newline_run_ >= 2) paragraph_break();
            newline_run_ = 0;

            if (is_word_char(cp)) {
                // A run of two hyphens acts as a dash, not as word glue.
                if (is_hyphen(cp) && !token_.empty() && is_hyphen(token_.back().cp)) {
                    const RawChar prev = token_.back();
                    token_.pop_back();
                    flush_token();
                    outside_char(prev.cp);
                    outside_char(cp);
                    continue;
                }
                token_.push_back({cp, begin, end});
                continue;
            }
            flush_token();
            outside_char(cp);
        }
        flush_token();
        if (words_in_sentence_ > 0) {
            out_.sentence_lengths.push_back(words_in_sentence_);
            words_in_sentence_ = 0;
        }
        paragraph_break();

        finalize_words();
        out_.body_bytes = body_.size();
        return std::move(out_);
    }

private:
    void outside_char(char32_t cp) {
        if (is_punctuation(cp)) {
            ++out_.punctuation_count;
            out_.punct_word_index.push_back(static_cast<std::uint32_t>(out_.words.size()));
        }
        if (delims_.count(cp) && words_in_sentence_ > 0) {
            out_.sentence_lengths.push_back(words_in_sentence_);
            words_in_sentence_ = 0;
        }
    }

    void paragraph_break() {
        if (words_in_paragraph_ > 0) {
            out_.paragraph_lengths.push_back(words_in_paragraph_);
            words_in_paragraph_ = 0;
        }
    }

    void flush_token() {
        if (token_.empty()) return;
        std::size_t lo = 0;
        std::size_t hi = token_.size();
        while (lo < hi && (is_apostrophe(token_[lo].cp) || is_hyphen(token_[lo].cp))) ++lo;
        while (hi > lo && (is_apostrophe(token_[hi - 1].cp) || is_hyphen(token_[hi - 1].cp))) --hi;

        for (std::size_t i = 0; i < lo; ++i) outside_char(token_[i].cp);
        if (lo < hi) {
            std::string word;
            for (std::size_t i = lo; i < hi; ++i) {
                const char32_t cp = config_.case_fold ? uni::to_lower(token_[i].cp) : token_[i].cp;
                uni::append_utf8(word, cp);
            }
            out_.words.push_back(std::move(word));
            out_.word_begin.push_back(token_[lo].begin);
            out_.word_end.push_back(token_[hi - 1].end);
            ++words_in_sentence_;
            ++words_in_paragraph_;
        }
        for (std::size_t i = hi; i < token_.size(); ++i) outside_char(token_[i].cp);
        token_.clear();
    }

    void finalize_words() {
        if (config_.merge_plural) {
            std::unordered_set<std::string> vocabulary(out_.words.begin(), out_.words.end());
            for (auto& word : out_.words) {
                if (word.size() < 2 || word.back() != 's') continue;
                std::string stem = word.substr(0, word.size() - 1);
                if (vocabulary.count(stem)) word = std::move(stem);
            }
        }
        out_.word_letters.reserve(out_.words.size());
        for (const auto& word : out_.words) {
            std::uint32_t letters = 0;
            std::size_t p = 0;
            while (p < word.size()) {
                if (uni::is_letter(uni::next_codepoint(word, p))) ++letters;
            }
            out_.word_letters.push_back(letters);
            out_.letter_count += letters;
        }
        out_.paragraph_count = out_.paragraph_lengths.size();
        out_.avg_word_length = out_.words.empty()
            ? 0.0
            : static_cast<double>(out_.letter_count) / static_cast<double>(out_.words.size());
    }

    std::string_view body_;
    const TokenizerConfig& config_;
    std::set<char32_t> delims_;
    TokenizedText out_;
    std::vector<RawChar> token_;
    std::uint32_t words_in_sentence_ = 0;
    std::uint32_t words_in_paragraph_ = 0;
    int newline_run_ = 0;
};

} // namespace

std::set<char32_t> TokenizerConfig::effective_delims() const {
    std::set<char32_t> delims = sentence_delims;
    if (!comma_is_delim) delims.erase(U',');
    return delims;
}

TokenizedText tokenize(std::string_view body, const TokenizerConfig& config) {
    return Scanner(body, config).scan();
}

TokenizedText tokenize(const TextDocument& doc, const TokenizerConfig& config) {
    return tokenize(doc.body, config);
}

SentenceStats sentence_stats(const std::vector<std::uint32_t>& sentence_lengths) {
    if (sentence_lengths.empty()) {
        throw UndefinedStatistic("sentence statistics undefined: no sentences");
    }
    std::map<std::uint32_t, std::uint64_t> histogram;
    for (const auto len : sentence_lengths) ++histogram[len];
    const double total = static_cast<double>(sentence_lengths.size());

    SentenceStats stats;
    for (const auto& [len, count] : histogram) {
        stats.mean += (count / total) * len;
    }
    for (const auto& [len, count] : histogram) {
        const double share = count / total;
        const double dev = len - stats.mean;
        stats.dispersion += share * dev * dev;
        stats.entropy -= share * std::log(share);
    }
    return stats;
}

SentenceStats sentence_stats(const TokenizedText& text) {
    return sentence_stats(text.sentence_lengths);
}

} // namespace halves::tokenize
