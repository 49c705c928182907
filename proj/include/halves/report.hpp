#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "halves/compress.hpp"
#include "halves/tokenize.hpp"

namespace halves::report {

enum class Variant { original, shuffled, inverted_words, inverted_letters };

std::string variant_name(Variant v);
Variant parse_variant(const std::string& name); // throws std::invalid_argument

struct RunConfig {
    std::string manifest_path;
    tokenize::TokenizerConfig tokenizer;
    bool strip_boilerplate = false;
    std::uint64_t seed = 1;
    std::uint32_t shuffle_repetitions = 10;
    std::vector<std::uint32_t> mu_min_counts = {15, 20, 30};
    bool mu_inclusive = true; // eligibility is count >= k; false flips to >
    std::uint32_t kappa_max = 5;
    std::string compressor = "deflate"; // "deflate" or "none"
    compress::BitOrder bit_order = compress::BitOrder::msb_first;
    bool coded_size = false;
    bool yule_per_type = false;
    std::vector<Variant> variants = {Variant::original, Variant::shuffled,
                                     Variant::inverted_words, Variant::inverted_letters};
    unsigned threads = 0; // 0 = hardware concurrency

    bool has_variant(Variant v) const;
};

// Serialized config echo, identical in run.json and in every table header.
std::string config_json(const RunConfig& config);

// One row of the report tables: W oriented so that a positive value
// supports the named relation.
struct RelationRow {
    std::string table;  // summary | rare | mu | compress | inversion | shuffle
    std::string name;   // e.g. "n1>n2"
    std::size_t pairs = 0;
    bool defined = false; // false when the W statistic is undefined (all ties)
    double w = 0.0;
    double sigma = 0.0;
    int level = 0;
    double percentage = 0.0;
    double threshold = 0.0;
    std::string note;
};

struct CorrelationMatrix {
    std::vector<std::string> labels;
    // cells[a][b] for a < b; NaN when undefined (constant column).
    std::vector<std::vector<double>> cells;
    std::size_t texts = 0;
};

struct ResultBundle {
    RunConfig config;
    std::size_t text_count = 0;
    std::string compressor_version; // empty when compressor=none
    std::vector<RelationRow> rows;
    CorrelationMatrix correlation;
    std::vector<std::string> results_lines; // JSONL, ordered by (id, variant, half)
    std::vector<std::string> exclusions;    // "id<TAB>relation<TAB>reason"
    std::vector<std::string> warnings;
};

// Runs the full pipeline over every included manifest entry. Per-text
// failures become exclusions, not errors; an empty manifest throws.
ResultBundle analyze_corpus(const RunConfig& config);

// Writes results.jsonl, run.json, exclusions.log and tables/*.{csv,md}.
void emit_tables(const ResultBundle& bundle, const std::filesystem::path& out_dir);

} // namespace halves::report
