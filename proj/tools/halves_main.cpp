#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "halves/corpus.hpp"
#include "halves/report.hpp"

namespace {

void add_tokenizer_flags(CLI::App* cmd, halves::tokenize::TokenizerConfig& config) {
    cmd->add_flag("--no-case-fold",
                  [&config](std::int64_t) { config.case_fold = false; },
                  "Keep the original letter case");
    cmd->add_flag("--merge-plural",
                  [&config](std::int64_t) { config.merge_plural = true; },
                  "Map a word ending in 's' to its stem when the stem also occurs");
    cmd->add_flag("--no-comma-delim",
                  [&config](std::int64_t) { config.comma_is_delim = false; },
                  "Do not treat the comma as a sentence delimiter");
}

int run_corpus_build(const std::string& in_dir, const std::string& out_path,
                     const halves::corpus::BuildOptions& options) {
    std::vector<std::string> warnings;
    const auto manifest = halves::corpus::build_manifest(in_dir, options, &warnings);
    halves::corpus::write_manifest(manifest, out_path);

    std::size_t included = 0;
    for (const auto& entry : manifest.entries) included += entry.included ? 1 : 0;
    for (const auto& warning : warnings) std::cerr << "warning: " << warning << "\n";
    std::cout << "wrote " << out_path << ": " << manifest.entries.size() << " documents, "
              << included << " included\n";
    return 0;
}

int run_analyze(const halves::report::RunConfig& config, const std::string& out_dir) {
    const auto bundle = halves::report::analyze_corpus(config);
    halves::report::emit_tables(bundle, out_dir);
    for (const auto& warning : bundle.warnings) std::cerr << "warning: " << warning << "\n";
    std::cout << "analyzed " << bundle.text_count << " texts; results in " << out_dir << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Statistical comparison of the two halves of texts"};
    app.require_subcommand(1);

    // corpus build
    auto* corpus_cmd = app.add_subcommand("corpus", "Corpus management");
    corpus_cmd->require_subcommand(1);
    auto* build_cmd = corpus_cmd->add_subcommand("build", "Scan a directory of .txt files "
                                                          "into a manifest");
    std::string in_dir, manifest_out;
    halves::corpus::BuildOptions build_options;
    build_cmd->add_option("--in", in_dir, "Directory of UTF-8 .txt files")->required();
    build_cmd->add_option("--out", manifest_out, "Manifest output path (JSON Lines)")->required();
    build_cmd->add_option("--min-words", build_options.min_words, "Minimum word count")->capture_default_str();
    build_cmd->add_option("--max-words", build_options.max_words, "Maximum word count")->capture_default_str();
    build_cmd->add_flag("--strip-boilerplate",
                        [&](std::int64_t) { build_options.strip_boilerplate = true; },
                        "Strip Project Gutenberg style header/footer when markers are present");
    build_cmd->add_option("--threads", build_options.threads, "Worker threads (0 = auto)");
    add_tokenizer_flags(build_cmd, build_options.tokenizer);

    // analyze
    auto* analyze_cmd = app.add_subcommand("analyze", "Run the half-comparison battery over "
                                                      "a manifest");
    halves::report::RunConfig run_config;
    std::string out_dir;
    std::vector<std::string> variant_names;
    std::string bit_order = "msb";
    analyze_cmd->add_option("--manifest", run_config.manifest_path, "Manifest path")->required();
    analyze_cmd->add_option("--out", out_dir, "Output directory")->required();
    analyze_cmd->add_option("--seed", run_config.seed, "Shuffle seed")->capture_default_str()->envname("SEED");
    analyze_cmd->add_option("--shuffle-reps", run_config.shuffle_repetitions,
                            "Shuffle repetitions")->capture_default_str();
    analyze_cmd
        ->add_option("--variants", variant_names,
                     "original, shuffled, inverted-words, inverted-letters")
        ->delimiter(',');
    analyze_cmd->add_option("--mu-thresholds", run_config.mu_min_counts,
                            "Occurrence thresholds for mu")->capture_default_str()
        ->delimiter(',');
    analyze_cmd->add_flag("--min-count-exclusive",
                          [&](std::int64_t) { run_config.mu_inclusive = false; },
                          "Require strictly more than k occurrences for mu");
    analyze_cmd->add_option("--kappa-max", run_config.kappa_max,
                            "Largest rare-word threshold")->capture_default_str();
    analyze_cmd->add_option("--compressor", run_config.compressor, "deflate or none")->capture_default_str();
    analyze_cmd->add_option("--bit-order", bit_order, "msb or lsb")->capture_default_str();
    analyze_cmd->add_flag("--coded-size",
                          [&](std::int64_t) { run_config.coded_size = true; },
                          "Use the coded LZ length C(1+log2 C)/8 in s");
    analyze_cmd->add_flag("--yule-normalized",
                          [&](std::int64_t) { run_config.yule_per_type = true; },
                          "Include the 1/n factor in Yule's constant");
    analyze_cmd->add_flag("--strip-boilerplate",
                          [&](std::int64_t) { run_config.strip_boilerplate = true; },
                          "Strip boilerplate when loading texts (match the manifest build)");
    analyze_cmd->add_option("--threads", run_config.threads, "Worker threads (0 = auto)");
    add_tokenizer_flags(analyze_cmd, run_config.tokenizer);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*build_cmd) return run_corpus_build(in_dir, manifest_out, build_options);
        if (*analyze_cmd) {
            if (!variant_names.empty()) {
                run_config.variants.clear();
                for (const auto& name : variant_names) {
                    run_config.variants.push_back(halves::report::parse_variant(name));
                }
            }
            if (bit_order == "lsb") {
                run_config.bit_order = halves::compress::BitOrder::lsb_first;
            } else if (bit_order != "msb") {
                throw std::invalid_argument("--bit-order must be msb or lsb");
            }
            return run_analyze(run_config, out_dir);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
