#include <doctest.h>

#include <cmath>
#include <string>

#include "halves/compress.hpp"
#include "halves/errors.hpp"
#include "halves/rng.hpp"
#include "testutil.hpp"

using namespace halves::compress;

namespace {

BitString bits_from(const std::string& zeros_and_ones) {
    BitString b;
    for (const char c : zeros_and_ones) b.bits.push_back(c == '1' ? 1 : 0);
    b.source_bytes = (b.bits.size() + 7) / 8;
    return b;
}

} // namespace

TEST_CASE("bitstring encoding") {
    SUBCASE("single byte, MSB first") {
        const BitString b = to_bitstring("A");
        CHECK(b.source_bytes == 1);
        CHECK(b.bits == std::vector<std::uint8_t>{0, 1, 0, 0, 0, 0, 0, 1});
    }
    SUBCASE("LSB order flips within each byte") {
        const BitString b = to_bitstring("A", BitOrder::lsb_first);
        CHECK(b.bits == std::vector<std::uint8_t>{1, 0, 0, 0, 0, 0, 1, 0});
    }
    SUBCASE("empty text") {
        const BitString b = to_bitstring("");
        CHECK(b.bits.empty());
        CHECK(b.source_bytes == 0);
    }
    SUBCASE("two bytes give sixteen bits") {
        CHECK(to_bitstring("AB").bits.size() == 16);
    }
}

TEST_CASE("worked parse: 01001011 -> 0,1,00,10,11") {
    const LZParse p = lz_complexity(bits_from("01001011"));
    CHECK(p.fragment_count == 5);
    CHECK(p.fragment_ends == std::vector<std::uint64_t>{1, 2, 4, 6, 8});
}

TEST_CASE("parsing is not symmetric under reversal") {
    CHECK(lz_complexity(bits_from("001010")).fragment_count == 3);
    CHECK(lz_complexity(bits_from("010100")).fragment_count == 4);
}

TEST_CASE("constant and alternating strings") {
    CHECK(lz_complexity(bits_from("000000")).fragment_count == 3); // 0,00,000
    CHECK(lz_complexity(bits_from("010101")).fragment_count == 4); // 0,1,01,01
}

TEST_CASE("fragments partition the bitstring") {
    const auto b = bits_from("110100101001011101");
    const LZParse p = lz_complexity(b);
    REQUIRE_FALSE(p.fragment_ends.empty());
    CHECK(p.fragment_ends.back() == b.bits.size());
    for (std::size_t i = 1; i < p.fragment_ends.size(); ++i) {
        CHECK(p.fragment_ends[i] > p.fragment_ends[i - 1]);
    }
    CHECK(p.fragment_count == p.fragment_ends.size());
}

TEST_CASE("empty bitstring throws") {
    CHECK_THROWS_AS(lz_complexity(BitString{}), halves::UndefinedStatistic);
}

TEST_CASE("complexity is invariant under a global bit flip") {
    halves::rng::Xoshiro256 gen(77);
    for (int trial = 0; trial < 100; ++trial) {
        BitString b;
        const std::size_t n = 1 + gen.bounded(4000);
        for (std::size_t i = 0; i < n; ++i) {
            b.bits.push_back(static_cast<std::uint8_t>(gen.next() & 1));
        }
        BitString flipped = b;
        for (auto& bit : flipped.bits) bit ^= 1;
        CHECK(lz_complexity(b).fragment_count == lz_complexity(flipped).fragment_count);
    }
}

TEST_CASE("one-byte text parses to five fragments") {
    // Bits of 'A' are 01000001: fragments 0 | 1 | 00 | 000 | 1.
    const CompressResult r = compressibility("A");
    CHECK(r.lz_fragments == 5);
    CHECK(r.s == doctest::Approx((1.0 - 5.0) / 1.0));
    CHECK_FALSE(r.s_zip.has_value());
}

TEST_CASE("coded-size mode uses the coded LZ length") {
    const CompressResult r = compressibility("A", nullptr, {BitOrder::msb_first, true});
    const double coded = 5.0 * (1.0 + std::log2(5.0)) / 8.0;
    CHECK(r.s == doctest::Approx((1.0 - coded) / 1.0));
}

TEST_CASE("repetitive text is highly compressible") {
    const std::string text(10000, 'a');
    const CompressResult r = compressibility(text);
    // A period-8 bit sequence admits at most 8 distinct fragments per
    // length, so C <= 4 sqrt(bits) + 1.
    const double bound = 4.0 * std::sqrt(8.0 * 10000.0) + 1.0;
    CHECK(static_cast<double>(r.lz_fragments) <= bound);
    CHECK(r.s >= 1.0 - bound / 10000.0);
    CHECK(r.s < 1.0);
}

TEST_CASE("random bytes barely compress under deflate") {
    halves::rng::Xoshiro256 gen(123);
    std::string text;
    text.reserve(10000);
    for (int i = 0; i < 10000; ++i) {
        text.push_back(static_cast<char>(gen.next() & 0xFF));
    }
    const auto deflate = make_deflate();
    const CompressResult r = compressibility(text, deflate.get());
    REQUIRE(r.s_zip.has_value());
    CHECK(*r.s_zip <= 0.05);
    CHECK(*r.s_zip < 1.0);
    CHECK(r.compressor_name == "deflate");
    CHECK_FALSE(r.compressor_version.empty());
}

TEST_CASE("deflate output size is stable across calls") {
    const auto deflate = make_deflate();
    const std::string text = testutil::synthetic_text(5, 800);
    CHECK(deflate->compressed_size(text) == deflate->compressed_size(text));
}

TEST_CASE("empty text has no compressibility") {
    CHECK_THROWS_AS(compressibility(""), halves::UndefinedStatistic);
}

TEST_CASE("inversion experiment on symmetric inputs") {
    SUBCASE("palindromic word sequence") {
        const std::vector<std::string> words = {"one", "two", "one"};
        const InversionResult r = inversion_experiment(words);
        CHECK(r.s == r.s_inverted);
    }
    SUBCASE("single repeated word") {
        const std::vector<std::string> words(50, "echo");
        const InversionResult r = inversion_experiment(words);
        CHECK(r.s == r.s_inverted);
    }
}

TEST_CASE("shuffle experiment") {
    SUBCASE("one repeated word never changes") {
        const std::vector<std::string> words(64, "same");
        CHECK(shuffle_experiment(words, {1, 10}, "t") == doctest::Approx(0.0));
    }
    SUBCASE("a single repetition equals the single-shuffle difference") {
        const auto words = testutil::synthetic_words(9, 300);
        const halves::transform::ShuffleSpec spec{42, 1};
        const double mean = shuffle_experiment(words, spec, "t");
        const auto shuffled = halves::transform::shuffle_words(words, spec, 0, "t");
        const double s_orig =
            compressibility(halves::transform::render_words(words)).s;
        const double s_shuf =
            compressibility(halves::transform::render_words(shuffled)).s;
        CHECK(mean == doctest::Approx(s_orig - s_shuf));
    }
    SUBCASE("deterministic for a fixed seed") {
        const auto words = testutil::synthetic_words(10, 400);
        CHECK(shuffle_experiment(words, {7, 5}, "id") ==
              shuffle_experiment(words, {7, 5}, "id"));
    }
}
