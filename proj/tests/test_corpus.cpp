#include <doctest.h>

#include <filesystem>

#include "halves/corpus.hpp"
#include "halves/errors.hpp"
#include "testutil.hpp"

using namespace halves::corpus;

TEST_CASE("load_document") {
    const auto dir = testutil::make_temp_dir("load");
    SUBCASE("identity load") {
        testutil::write_file(dir / "a.txt", "Hello.\n");
        const auto doc = load_document(dir / "a.txt");
        CHECK(doc.body == "Hello.\n");
        CHECK(doc.byte_size == 7);
        CHECK(doc.id == "a");
    }
    SUBCASE("empty file") {
        testutil::write_file(dir / "empty.txt", "");
        const auto doc = load_document(dir / "empty.txt");
        CHECK(doc.body.empty());
        CHECK(doc.byte_size == 0);
    }
    SUBCASE("CRLF and CR line endings become LF") {
        testutil::write_file(dir / "crlf.txt", "a\r\nb\rc");
        const auto doc = load_document(dir / "crlf.txt");
        CHECK(doc.body == "a\nb\nc");
        CHECK(doc.byte_size == 6);
    }
    SUBCASE("decomposed accents are composed to NFC") {
        testutil::write_file(dir / "nfc.txt", "e\xCC\x81"); // e + combining acute
        const auto doc = load_document(dir / "nfc.txt");
        CHECK(doc.body == "\xC3\xA9"); // precomposed e-acute
    }
    SUBCASE("a UTF-8 BOM is stripped") {
        testutil::write_file(dir / "bom.txt", "\xEF\xBB\xBFtext");
        CHECK(load_document(dir / "bom.txt").body == "text");
    }
    SUBCASE("invalid UTF-8 is rejected") {
        testutil::write_file(dir / "bad.txt", "ok\xFF\xFEnot");
        CHECK_THROWS_AS(load_document(dir / "bad.txt"), halves::CorpusError);
    }
    SUBCASE("missing file is rejected") {
        CHECK_THROWS_AS(load_document(dir / "no-such-file.txt"), halves::CorpusError);
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("strip_boilerplate") {
    halves::TextDocument doc;
    doc.id = "fixture";
    SUBCASE("both markers present keeps the inner region only") {
        doc.body = "Gutenberg legalese\n*** START OF THE TEST EBOOK ***\n"
                   "inner line one\ninner line two\n"
                   "*** END OF THE TEST EBOOK ***\nmore legalese\n";
        std::string warning;
        const auto stripped = strip_boilerplate(doc, {}, &warning);
        CHECK(stripped.body == "inner line one\ninner line two\n");
        CHECK(stripped.byte_size == stripped.body.size());
        CHECK(warning.empty());
    }
    SUBCASE("missing markers leave the body unchanged") {
        doc.body = "no markers here\n";
        std::string warning;
        const auto stripped = strip_boilerplate(doc, {}, &warning);
        CHECK(stripped.body == doc.body);
        CHECK_FALSE(warning.empty());
    }
    SUBCASE("markers in the wrong order leave the body unchanged") {
        doc.body = "*** END OF THE TEST ***\nmiddle\n*** START OF THE TEST ***\n";
        std::string warning;
        const auto stripped = strip_boilerplate(doc, {}, &warning);
        CHECK(stripped.body == doc.body);
        CHECK_FALSE(warning.empty());
    }
}

TEST_CASE("filter_by_length brackets the default range") {
    const halves::tokenize::TokenizerConfig config;
    std::vector<DocRecord> docs;
    const auto make_doc = [](const std::string& id, std::size_t words) {
        halves::TextDocument doc;
        doc.id = id;
        doc.body = testutil::synthetic_text(1, words);
        return doc;
    };
    docs.push_back({make_doc("mid", 25000), "mid.txt"});
    docs.push_back({make_doc("small", 9999), "small.txt"});
    docs.push_back({make_doc("edge", 10000), "edge.txt"});

    const auto manifest = filter_by_length(docs, 10000, 50000, config);
    REQUIRE(manifest.entries.size() == 3);
    // Ordered by id: edge, mid, small.
    CHECK(manifest.entries[0].id == "edge");
    CHECK(manifest.entries[0].included);
    CHECK(manifest.entries[1].id == "mid");
    CHECK(manifest.entries[1].included);
    CHECK(manifest.entries[2].id == "small");
    CHECK_FALSE(manifest.entries[2].included);
    CHECK(manifest.entries[2].exclusion_reason == "below min_words");

    // Filtering again with the same bounds changes nothing.
    const auto again = filter_by_length(docs, 10000, 50000, config);
    for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
        CHECK(again.entries[i].included == manifest.entries[i].included);
        CHECK(again.entries[i].word_count == manifest.entries[i].word_count);
    }
}

TEST_CASE("build_manifest covers every file exactly once") {
    const auto dir = testutil::make_temp_dir("build");
    testutil::write_file(dir / "keep.txt", testutil::synthetic_text(2, 1500));
    testutil::write_file(dir / "short.txt", "too short\n");
    testutil::write_file(dir / "broken.txt", "bad \xFF bytes");
    testutil::write_file(dir / "ignored.dat", "not a txt file");

    BuildOptions options;
    options.min_words = 1000;
    options.max_words = 50000;
    const auto manifest = build_manifest(dir, options);
    REQUIRE(manifest.entries.size() == 3);
    CHECK(manifest.entries[0].id == "broken");
    CHECK_FALSE(manifest.entries[0].included);
    CHECK(manifest.entries[0].exclusion_reason.find("encoding") != std::string::npos);
    CHECK(manifest.entries[1].id == "keep");
    CHECK(manifest.entries[1].included);
    CHECK(manifest.entries[1].word_count == 1500);
    CHECK(manifest.entries[2].id == "short");
    CHECK_FALSE(manifest.entries[2].included);

    const auto path = dir / "manifest.jsonl";
    write_manifest(manifest, path);
    const auto loaded = read_manifest(path);
    REQUIRE(loaded.entries.size() == manifest.entries.size());
    for (std::size_t i = 0; i < loaded.entries.size(); ++i) {
        CHECK(loaded.entries[i].id == manifest.entries[i].id);
        CHECK(loaded.entries[i].path == manifest.entries[i].path);
        CHECK(loaded.entries[i].word_count == manifest.entries[i].word_count);
        CHECK(loaded.entries[i].included == manifest.entries[i].included);
        CHECK(loaded.entries[i].exclusion_reason == manifest.entries[i].exclusion_reason);
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("boilerplate stripping is applied during manifest builds") {
    const auto dir = testutil::make_temp_dir("strip");
    const std::string inner = testutil::synthetic_text(3, 1200);
    testutil::write_file(dir / "wrapped.txt",
                         "header junk\n*** START OF THE TEST EBOOK ***\n" + inner +
                             "*** END OF THE TEST EBOOK ***\nfooter junk\n");
    BuildOptions options;
    options.min_words = 1000;
    options.strip_boilerplate = true;
    const auto manifest = build_manifest(dir, options);
    REQUIRE(manifest.entries.size() == 1);
    CHECK(manifest.entries[0].word_count == 1200);
    std::filesystem::remove_all(dir);
}
