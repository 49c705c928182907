#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "halves/errors.hpp"
#include "halves/rng.hpp"
#include "halves/tokenize.hpp"

using halves::tokenize::TokenizerConfig;
using halves::tokenize::TokenizedText;
using halves::tokenize::tokenize;

TEST_CASE("hand-segmented example") {
    const TokenizedText t = tokenize("Dogs bark. Cats, too!", TokenizerConfig{});
    CHECK(t.words == std::vector<std::string>{"dogs", "bark", "cats", "too"});
    CHECK(t.total_words() == 4);
    CHECK(t.sentence_lengths == std::vector<std::uint32_t>{2, 1, 1});
    CHECK(t.punctuation_count == 3);
    CHECK(t.letter_count == 15);
    CHECK(t.paragraph_count == 1);
    CHECK(t.avg_word_length == doctest::Approx(15.0 / 4.0));
}

TEST_CASE("empty body yields all-zero result") {
    const TokenizedText t = tokenize("", TokenizerConfig{});
    CHECK(t.total_words() == 0);
    CHECK(t.letter_count == 0);
    CHECK(t.punctuation_count == 0);
    CHECK(t.paragraph_count == 0);
    CHECK(t.sentence_lengths.empty());
    CHECK(t.avg_word_length == 0.0);
}

TEST_CASE("case folding merges variants") {
    const TokenizedText t = tokenize("WORD word Word", TokenizerConfig{});
    CHECK(t.words == std::vector<std::string>{"word", "word", "word"});

    TokenizerConfig raw;
    raw.case_fold = false;
    const TokenizedText u = tokenize("WORD word", raw);
    CHECK(u.words == std::vector<std::string>{"WORD", "word"});
}

TEST_CASE("apostrophes and hyphens stay inside words, quotes do not") {
    const TokenizedText t = tokenize("don't stop -- it's 'quoted' well-known", TokenizerConfig{});
    CHECK(t.words == std::vector<std::string>{"don't", "stop", "it's", "quoted", "well-known"});
    // Two dash hyphens plus the two quoting apostrophes.
    CHECK(t.punctuation_count == 4);
}

TEST_CASE("digits are word characters but not letters") {
    const TokenizedText t = tokenize("route 66", TokenizerConfig{});
    CHECK(t.words == std::vector<std::string>{"route", "66"});
    CHECK(t.letter_count == 5);
    CHECK(t.avg_word_length == doctest::Approx(2.5));
}

TEST_CASE("comma delimiter can be disabled") {
    TokenizerConfig config;
    config.comma_is_delim = false;
    const TokenizedText t = tokenize("a, b. c", config);
    CHECK(t.sentence_lengths == std::vector<std::uint32_t>{2, 1});
    // The comma still counts as punctuation.
    CHECK(t.punctuation_count == 2);
}

TEST_CASE("paragraphs are blank-line blocks containing words") {
    CHECK(tokenize("a b\n\nc", TokenizerConfig{}).paragraph_count == 2);
    CHECK(tokenize("a b\n \t \nc", TokenizerConfig{}).paragraph_count == 2);
    CHECK(tokenize("\n\n\na b c\n", TokenizerConfig{}).paragraph_count == 1);
    CHECK(tokenize("a\nb\nc\n", TokenizerConfig{}).paragraph_count == 1);
    const TokenizedText t = tokenize("a b\n\nc d e\n\nf", TokenizerConfig{});
    CHECK(t.paragraph_lengths == std::vector<std::uint32_t>{2, 3, 1});
}

TEST_CASE("merge_plural maps to a stem occurring in the document") {
    TokenizerConfig config;
    config.merge_plural = true;
    const TokenizedText t = tokenize("dog dogs cats", config);
    CHECK(t.words == std::vector<std::string>{"dog", "dog", "cats"});
    // Letter count follows the stored words.
    CHECK(t.letter_count == 3 + 3 + 4);

    // Default mode keeps singular and plural distinct.
    const TokenizedText u = tokenize("dog dogs cats", TokenizerConfig{});
    CHECK(u.words == std::vector<std::string>{"dog", "dogs", "cats"});
}

TEST_CASE("tokenization is deterministic") {
    const std::string body = "One two, three. Four!\n\nFive six?\n";
    const TokenizedText a = tokenize(body, TokenizerConfig{});
    const TokenizedText b = tokenize(body, TokenizerConfig{});
    CHECK(a.words == b.words);
    CHECK(a.sentence_lengths == b.sentence_lengths);
    CHECK(a.punctuation_count == b.punctuation_count);
    CHECK(a.letter_count == b.letter_count);
}

TEST_CASE("word counts survive paragraph permutation") {
    const std::vector<std::string> paragraphs = {
        "First block, with words. And more!", "Second block; shorter.",
        "Third block here. It has three sentences. Yes?", "Fourth?"};
    const auto join = [](const std::vector<std::string>& parts) {
        std::string body;
        for (const auto& p : parts) {
            body += p;
            body += "\n\n";
        }
        return body;
    };
    const TokenizedText base = tokenize(join(paragraphs), TokenizerConfig{});

    halves::rng::Xoshiro256 gen(42);
    auto shuffled = paragraphs;
    for (int round = 0; round < 8; ++round) {
        for (std::size_t i = shuffled.size(); i > 1; --i) {
            std::swap(shuffled[i - 1], shuffled[gen.bounded(i)]);
        }
        const TokenizedText t = tokenize(join(shuffled), TokenizerConfig{});
        CHECK(t.total_words() == base.total_words());
        CHECK(t.letter_count == base.letter_count);
        CHECK(t.punctuation_count == base.punctuation_count);
        auto lengths_a = base.sentence_lengths;
        auto lengths_b = t.sentence_lengths;
        std::sort(lengths_a.begin(), lengths_a.end());
        std::sort(lengths_b.begin(), lengths_b.end());
        CHECK(lengths_a == lengths_b);
    }
}

TEST_CASE("sentence length statistics") {
    using halves::tokenize::sentence_stats;
    SUBCASE("degenerate distribution") {
        const auto s = sentence_stats({2, 2, 2});
        CHECK(s.mean == doctest::Approx(2.0));
        CHECK(s.dispersion == doctest::Approx(0.0));
        CHECK(s.entropy == doctest::Approx(0.0));
    }
    SUBCASE("two-point distribution") {
        const auto s = sentence_stats({1, 3});
        CHECK(s.mean == doctest::Approx(2.0));
        CHECK(s.dispersion == doctest::Approx(1.0));
        CHECK(s.entropy == doctest::Approx(std::log(2.0)));
    }
    SUBCASE("single sentence") {
        const auto s = sentence_stats({4});
        CHECK(s.mean == doctest::Approx(4.0));
        CHECK(s.dispersion == doctest::Approx(0.0));
    }
    SUBCASE("no sentences is an error") {
        CHECK_THROWS_AS(sentence_stats(std::vector<std::uint32_t>{}),
                        halves::UndefinedStatistic);
    }
}

TEST_CASE("sum of sentence lengths equals the word count") {
    const std::string body = "Alpha beta gamma. Delta, epsilon zeta eta! Theta\n\nIota kappa.";
    const TokenizedText t = tokenize(body, TokenizerConfig{});
    std::uint64_t total = 0;
    for (const auto len : t.sentence_lengths) total += len;
    CHECK(total == t.total_words());
}
