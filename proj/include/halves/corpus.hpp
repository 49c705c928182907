#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "halves/document.hpp"
#include "halves/tokenize.hpp"

namespace halves::corpus {

struct ManifestEntry {
    std::string id;
    std::string path;
    std::uint64_t word_count = 0;
    bool included = false;
    std::string exclusion_reason; // nonempty iff !included
};

struct CorpusManifest {
    std::vector<ManifestEntry> entries; // ordered by id
};

struct BoilerplateMarkers {
    // Defaults match Project Gutenberg header/footer lines.
    std::string start = "*** START OF";
    std::string end = "*** END OF";
};

// Reads and decodes one file. Throws CorpusError when the file is
// unreadable or is not valid UTF-8. The body comes back NFC-normalized
// with LF line endings; byte_size reflects the raw file.
TextDocument load_document(const std::filesystem::path& path);

// Keeps the region strictly between the line holding the start marker and
// the line holding the end marker. Best effort: missing or out-of-order
// markers leave the body unchanged and set `warning`.
TextDocument strip_boilerplate(const TextDocument& doc,
                               const BoilerplateMarkers& markers,
                               std::string* warning = nullptr);

struct DocRecord {
    TextDocument doc;
    std::string path;
};

// Marks each document included iff min_words <= word_count <= max_words,
// counting words with `config`. Entries are ordered by id.
CorpusManifest filter_by_length(const std::vector<DocRecord>& docs,
                                std::uint64_t min_words,
                                std::uint64_t max_words,
                                const tokenize::TokenizerConfig& config);

struct BuildOptions {
    std::uint64_t min_words = 10000;
    std::uint64_t max_words = 50000;
    bool strip_boilerplate = false;
    tokenize::TokenizerConfig tokenizer;
    unsigned threads = 0; // 0 = hardware concurrency
};

// Scans `dir` for .txt files, loads them in parallel and assembles the
// manifest. Unreadable or non-UTF-8 files become excluded entries.
// Warnings (e.g. boilerplate markers not found) are appended to `warnings`.
CorpusManifest build_manifest(const std::filesystem::path& dir,
                              const BuildOptions& options,
                              std::vector<std::string>* warnings = nullptr);

void write_manifest(const CorpusManifest& manifest, const std::filesystem::path& path);
CorpusManifest read_manifest(const std::filesystem::path& path);

} // namespace halves::corpus
