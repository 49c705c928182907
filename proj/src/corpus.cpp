#include "halves/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <sstream>

#include <json.hpp>

#include "halves/errors.hpp"
#include "halves/unicode.hpp"
#include "parallel.hpp"

namespace halves::corpus {

namespace {

std::string read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CorpusError("unreadable file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw CorpusError("read error: " + path.string());
    return std::move(buffer).str();
}

std::string normalize_newlines(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\r') {
            out.push_back('\n');
            if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        } else {
            out.push_back(text[i]);
        }
    }
    return out;
}

ManifestEntry make_entry(const std::string& id, const std::string& path,
                         std::uint64_t word_count, std::uint64_t min_words,
                         std::uint64_t max_words) {
    ManifestEntry entry{id, path, word_count, true, ""};
    if (word_count < min_words) {
        entry.included = false;
        entry.exclusion_reason = "below min_words";
    } else if (word_count > max_words) {
        entry.included = false;
        entry.exclusion_reason = "above max_words";
    }
    return entry;
}

} // namespace

TextDocument load_document(const std::filesystem::path& path) {
    std::string raw = read_file_bytes(path);
    const std::uint64_t raw_size = raw.size();
    if (raw.size() >= 3 && raw.compare(0, 3, "\xEF\xBB\xBF") == 0) raw.erase(0, 3);
    if (!uni::valid_utf8(raw)) throw CorpusError("invalid encoding (not UTF-8): " + path.string());

    TextDocument doc;
    doc.id = path.stem().string();
    doc.byte_size = raw_size;
    doc.body = uni::nfc(normalize_newlines(raw));
    return doc;
}

TextDocument strip_boilerplate(const TextDocument& doc,
                               const BoilerplateMarkers& markers,
                               std::string* warning) {
    const std::string& body = doc.body;
    const std::size_t start_pos = body.find(markers.start);
    const std::size_t end_pos = body.find(markers.end);
    if (start_pos == std::string::npos || end_pos == std::string::npos) {
        if (warning) *warning = "boilerplate markers not found; body unchanged";
        return doc;
    }
    if (end_pos < start_pos) {
        if (warning) *warning = "boilerplate markers out of order; body unchanged";
        return doc;
    }
    std::size_t inner_begin = body.find('\n', start_pos);
    inner_begin = inner_begin == std::string::npos ? body.size() : inner_begin + 1;
    std::size_t inner_end = body.rfind('\n', end_pos);
    inner_end = inner_end == std::string::npos ? 0 : inner_end + 1;

    TextDocument stripped = doc;
    stripped.body = inner_begin < inner_end ? body.substr(inner_begin, inner_end - inner_begin)
                                            : std::string();
    stripped.byte_size = stripped.body.size();
    return stripped;
}

CorpusManifest filter_by_length(const std::vector<DocRecord>& docs,
                                std::uint64_t min_words,
                                std::uint64_t max_words,
                                const tokenize::TokenizerConfig& config) {
    CorpusManifest manifest;
    manifest.entries.reserve(docs.size());
    for (const auto& record : docs) {
        const std::uint64_t words = tokenize::tokenize(record.doc, config).total_words();
        manifest.entries.push_back(
            make_entry(record.doc.id, record.path, words, min_words, max_words));
    }
    std::sort(manifest.entries.begin(), manifest.entries.end(),
              [](const ManifestEntry& a, const ManifestEntry& b) { return a.id < b.id; });
    return manifest;
}

CorpusManifest build_manifest(const std::filesystem::path& dir,
                              const BuildOptions& options,
                              std::vector<std::string>* warnings) {
    std::vector<std::filesystem::path> paths;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        auto ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (ext == ".txt") paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end());

    std::vector<ManifestEntry> entries(paths.size());
    std::vector<std::string> notes(paths.size());
    detail::parallel_for(paths.size(), options.threads, [&](std::size_t i) {
        const auto& path = paths[i];
        try {
            TextDocument doc = load_document(path);
            if (options.strip_boilerplate) {
                std::string warning;
                doc = strip_boilerplate(doc, BoilerplateMarkers{}, &warning);
                if (!warning.empty()) notes[i] = doc.id + ": " + warning;
            }
            const std::uint64_t words = tokenize::tokenize(doc, options.tokenizer).total_words();
            entries[i] = make_entry(doc.id, path.string(), words,
                                    options.min_words, options.max_words);
        } catch (const std::exception& e) {
            entries[i] = ManifestEntry{path.stem().string(), path.string(), 0, false, e.what()};
        }
    });

    CorpusManifest manifest;
    manifest.entries = std::move(entries);
    std::sort(manifest.entries.begin(), manifest.entries.end(),
              [](const ManifestEntry& a, const ManifestEntry& b) { return a.id < b.id; });
    if (warnings) {
        for (auto& note : notes) {
            if (!note.empty()) warnings->push_back(std::move(note));
        }
    }
    return manifest;
}

void write_manifest(const CorpusManifest& manifest, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CorpusError("cannot write manifest: " + path.string());
    for (const auto& entry : manifest.entries) {
        nlohmann::ordered_json j;
        j["id"] = entry.id;
        j["path"] = entry.path;
        j["word_count"] = entry.word_count;
        j["included"] = entry.included;
        j["exclusion_reason"] = entry.included ? nlohmann::ordered_json()
                                               : nlohmann::ordered_json(entry.exclusion_reason);
        out << j.dump() << '\n';
    }
    if (!out) throw CorpusError("write error: " + path.string());
}

CorpusManifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CorpusError("cannot read manifest: " + path.string());
    CorpusManifest manifest;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw CorpusError("manifest parse error at line " + std::to_string(lineno) + ": " +
                              e.what());
        }
        ManifestEntry entry;
        entry.id = j.at("id").get<std::string>();
        entry.path = j.at("path").get<std::string>();
        entry.word_count = j.at("word_count").get<std::uint64_t>();
        entry.included = j.at("included").get<bool>();
        if (j.contains("exclusion_reason") && !j["exclusion_reason"].is_null()) {
            entry.exclusion_reason = j["exclusion_reason"].get<std::string>();
        }
        manifest.entries.push_back(std::move(entry));
    }
    return manifest;
}

} // namespace halves::corpus
