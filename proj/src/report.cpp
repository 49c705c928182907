#include "halves/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>

#include <json.hpp>

#include "halves/corpus.hpp"
#include "halves/errors.hpp"
#include "halves/features.hpp"
#include "halves/spatial.hpp"
#include "halves/stats.hpp"
#include "halves/transform.hpp"
#include "halves/unicode.hpp"
#include "parallel.hpp"

namespace halves::report {

namespace {

using nlohmann::ordered_json;

std::string fmt(const char* format, double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), format, value);
    return buffer;
}

std::string fmt_general(double v) { return fmt("%.6g", v); }
std::string fmt_pct(double v) { return fmt("%.6f", v); }
std::string fmt_sigma(double v) { return fmt("%.2f", v); }
std::string fmt_threshold(double v) { return fmt("%.4f", v); }
std::string fmt_corr(double v) { return fmt("%.6f", v); }

struct ShuffleRep {
    double n1 = 0, n2 = 0;
    double letters1 = 0, letters2 = 0;
    double h3_1 = 0, h3_2 = 0;
    double hn3_1 = 0, hn3_2 = 0;
    double yule1 = 0, yule2 = 0;
    double s_lz = 0; // full shuffled rendering
};

// Everything extracted from one text; aggregation reads only this.
struct TextOutcome {
    std::string id;
    bool ok = false;
    std::string failure;

    features::HalfFeatures first, second;
    features::CommonWordStats common;
    // (min_count, common_only) -> mu; unset when no word qualifies
    std::map<std::pair<std::uint32_t, int>, std::optional<double>> mu_first, mu_second;
    std::optional<compress::CompressResult> comp_first, comp_second, comp_full;
    std::optional<compress::CompressResult> comp_inverted, comp_letter_inverted;
    std::vector<ShuffleRep> shuffle;

    std::vector<std::string> records; // serialized JSONL lines
};

using Extract = std::function<std::optional<stats::PairedSample::Pair>(const TextOutcome&)>;

struct RelationDef {
    std::string table;
    std::string name;
    stats::Direction direction;
    Extract extract;
    std::string note;
};

ordered_json tokenizer_json(const tokenize::TokenizerConfig& t) {
    std::string delims;
    for (const char32_t cp : t.effective_delims()) uni::append_utf8(delims, cp);
    ordered_json j;
    j["case_fold"] = t.case_fold;
    j["merge_plural"] = t.merge_plural;
    j["sentence_delims"] = delims;
    j["comma_is_delim"] = t.comma_is_delim;
    return j;
}

std::string mu_label(std::uint32_t k, bool common, bool inclusive) {
    const char* rel = inclusive ? ">=" : ">";
    return std::string(common ? "muC" : "mu") + "1>" + (common ? "muC" : "mu") + "2[k" + rel +
           std::to_string(k) + "]";
}

double letters_of(const std::vector<std::string>& words,
                  const std::unordered_map<std::string, std::uint32_t>& letter_table) {
    double total = 0;
    for (const auto& w : words) total += letter_table.at(w);
    return total;
}

// One text end to end: load, tokenize, split, features, variants.
TextOutcome analyze_text(const corpus::ManifestEntry& entry,
                         const std::filesystem::path& manifest_dir,
                         const RunConfig& config,
                         const compress::Compressor* compressor) {
    TextOutcome out;
    out.id = entry.id;
    const compress::LzOptions lz{config.bit_order, config.coded_size};

    try {
        std::filesystem::path path(entry.path);
        if (path.is_relative()) path = manifest_dir / path;
        TextDocument doc = corpus::load_document(path);
        doc.id = entry.id;
        if (config.strip_boilerplate) doc = corpus::strip_boilerplate(doc, {}, nullptr);

        const tokenize::TokenizedText tok = tokenize::tokenize(doc, config.tokenizer);
        if (tok.total_words() < 2) throw UndefinedStatistic("fewer than two words");

        const bool want_original = config.has_variant(Variant::original);
        const bool want_shuffled = config.has_variant(Variant::shuffled);
        const bool want_inverted = config.has_variant(Variant::inverted_words);
        const bool want_letters = config.has_variant(Variant::inverted_letters);

        const std::string full_render = transform::render_words(tok.words);
        out.comp_full = compress::compressibility(full_render, compressor, lz);

        if (want_original) {
            auto [h1, h2] = transform::split_tokenized(tok);
            out.first = features::half_features(h1, config.kappa_max, config.yule_per_type);
            out.second = features::half_features(h2, config.kappa_max, config.yule_per_type);
            out.common = features::common_words(h1.words, h2.words);

            std::set<std::string> common_types;
            {
                const std::set<std::string> types1(h1.words.begin(), h1.words.end());
                for (const auto& w : h2.words) {
                    if (types1.count(w)) common_types.insert(w);
                }
            }
            for (const std::uint32_t k : config.mu_min_counts) {
                for (const int common_only : {0, 1}) {
                    const spatial::MuConfig mc{k, common_only != 0, config.mu_inclusive};
                    const auto key = std::make_pair(k, common_only);
                    try {
                        out.mu_first[key] = spatial::mu(h1.words, mc, &common_types);
                    } catch (const UndefinedStatistic&) {
                        out.mu_first[key] = std::nullopt;
                    }
                    try {
                        out.mu_second[key] = spatial::mu(h2.words, mc, &common_types);
                    } catch (const UndefinedStatistic&) {
                        out.mu_second[key] = std::nullopt;
                    }
                }
            }
            out.comp_first =
                compress::compressibility(transform::render_words(h1.words), compressor, lz);
            out.comp_second =
                compress::compressibility(transform::render_words(h2.words), compressor, lz);
        }

        if (want_inverted) {
            out.comp_inverted = compress::compressibility(
                transform::render_words(transform::invert_words(tok.words)), compressor, lz);
        }
        if (want_letters) {
            out.comp_letter_inverted = compress::compressibility(
                transform::invert_letters(full_render), compressor, lz);
        }

        if (want_shuffled) {
            std::unordered_map<std::string, std::uint32_t> letter_table;
            letter_table.reserve(tok.words.size());
            for (std::size_t i = 0; i < tok.words.size(); ++i) {
                letter_table.emplace(tok.words[i], tok.word_letters[i]);
            }
            const transform::ShuffleSpec spec{config.seed, config.shuffle_repetitions};
            for (std::uint32_t rep = 0; rep < spec.repetitions; ++rep) {
                const auto shuffled = transform::shuffle_words(tok.words, spec, rep, out.id);
                const auto halves = transform::split_halves(shuffled);
                const auto s1 = features::spectrum(halves.first);
                const auto s2 = features::spectrum(halves.second);
                const auto r1 = features::rare_counts(s1, 3);
                const auto r2 = features::rare_counts(s2, 3);
                ShuffleRep sr;
                sr.n1 = static_cast<double>(s1.distinct_words);
                sr.n2 = static_cast<double>(s2.distinct_words);
                sr.letters1 = letters_of(halves.first, letter_table);
                sr.letters2 = letters_of(halves.second, letter_table);
                sr.h3_1 = static_cast<double>(r1.h[2]);
                sr.h3_2 = static_cast<double>(r2.h[2]);
                sr.hn3_1 = r1.h_norm[2];
                sr.hn3_2 = r2.h_norm[2];
                sr.yule1 = features::yule_k(s1, config.yule_per_type);
                sr.yule2 = features::yule_k(s2, config.yule_per_type);
                sr.s_lz =
                    compress::compressibility(transform::render_words(shuffled), nullptr, lz).s;
                out.shuffle.push_back(sr);
            }
        }
        out.ok = true;
    } catch (const std::exception& e) {
        out.ok = false;
        out.failure = e.what();
        return out;
    }

    // JSONL records, one per (variant, half).
    const auto half_record = [&](const char* half, const features::HalfFeatures& f,
                                 const std::map<std::pair<std::uint32_t, int>,
                                                std::optional<double>>& mus,
                                 const std::optional<compress::CompressResult>& comp,
                                 double common_freq) {
        ordered_json j;
        j["id"] = out.id;
        j["variant"] = "original";
        j["half"] = half;
        j["words"] = f.words;
        j["distinct"] = f.distinct;
        j["letters"] = f.letters;
        j["h"] = f.rare.h;
        j["h_norm"] = f.rare.h_norm;
        j["rare_mass"] = f.rare.rare_mass;
        j["yule_k"] = f.yule;
        j["spectrum_entropy"] = f.entropy;
        j["avg_word_length"] = f.avg_word_length;
        j["sentences"] = f.sentences;
        j["paragraphs"] = f.paragraphs;
        j["punctuation"] = f.punctuation;
        j["byte_size"] = f.byte_size;
        if (f.sentence_stats) {
            j["sentence_mean"] = f.sentence_stats->mean;
            j["sentence_dispersion"] = f.sentence_stats->dispersion;
            j["sentence_entropy"] = f.sentence_stats->entropy;
        }
        j["common_types"] = out.common.common_types;
        j["common_freq"] = common_freq;
        ordered_json mu_json;
        for (const auto& [key, value] : mus) {
            const std::string label =
                std::string(key.second ? "common_k" : "k") + std::to_string(key.first);
            mu_json[label] = value ? ordered_json(*value) : ordered_json();
        }
        j["mu"] = mu_json;
        if (comp) {
            j["s_lz"] = comp->s;
            j["lz_fragments"] = comp->lz_fragments;
            if (comp->s_zip) j["s_zip"] = *comp->s_zip;
        }
        out.records.push_back(j.dump());
    };

    const auto full_record = [&](const char* variant,
                                 const std::optional<compress::CompressResult>& comp) {
        if (!comp) return;
        ordered_json j;
        j["id"] = out.id;
        j["variant"] = variant;
        j["half"] = "full";
        j["source_bytes"] = comp->source_bytes;
        j["s_lz"] = comp->s;
        j["lz_fragments"] = comp->lz_fragments;
        if (comp->s_zip) j["s_zip"] = *comp->s_zip;
        out.records.push_back(j.dump());
    };

    if (config.has_variant(Variant::original)) {
        half_record("first", out.first, out.mu_first, out.comp_first, out.common.freq_first);
        half_record("second", out.second, out.mu_second, out.comp_second, out.common.freq_second);
    }
    full_record("original", out.comp_full);
    full_record("inverted-words", out.comp_inverted);
    full_record("inverted-letters", out.comp_letter_inverted);
    for (std::size_t rep = 0; rep < out.shuffle.size(); ++rep) {
        const auto& sr = out.shuffle[rep];
        for (const int half : {0, 1}) {
            ordered_json j;
            j["id"] = out.id;
            j["variant"] = "shuffled";
            j["rep"] = rep;
            j["half"] = half == 0 ? "first" : "second";
            j["distinct"] = half == 0 ? sr.n1 : sr.n2;
            j["letters"] = half == 0 ? sr.letters1 : sr.letters2;
            j["h3"] = half == 0 ? sr.h3_1 : sr.h3_2;
            j["h3_norm"] = half == 0 ? sr.hn3_1 : sr.hn3_2;
            j["yule_k"] = half == 0 ? sr.yule1 : sr.yule2;
            out.records.push_back(j.dump());
        }
        ordered_json j;
        j["id"] = out.id;
        j["variant"] = "shuffled";
        j["rep"] = rep;
        j["half"] = "full";
        j["s_lz"] = sr.s_lz;
        out.records.push_back(j.dump());
    }
    return out;
}

RelationRow evaluate_relation(const RelationDef& def, const std::vector<TextOutcome>& texts,
                              std::vector<std::string>& exclusions) {
    stats::PairedSample sample;
    sample.label = def.name;
    for (const auto& t : texts) {
        if (!t.ok) continue;
        if (auto pair = def.extract(t)) {
            sample.pairs.push_back(std::move(*pair));
        } else {
            exclusions.push_back(t.id + "\t" + def.name + "\tfeature undefined for this text");
        }
    }

    RelationRow row;
    row.table = def.table;
    row.name = def.name;
    row.note = def.note;
    row.pairs = sample.size();
    if (sample.pairs.empty()) {
        row.note = row.note.empty() ? "no texts with this feature" : row.note;
        return row;
    }
    try {
        const auto wr = stats::wilcoxon(sample);
        row.defined = true;
        row.w = def.direction == stats::Direction::second_greater ? wr.w : -wr.w;
        row.sigma = wr.sigma;
        row.level = wr.level;
    } catch (const UndefinedStatistic& e) {
        row.note = e.what();
    }
    try {
        const auto sp = stats::sign_percentage(sample, def.direction);
        row.percentage = sp.fraction;
        row.threshold = sp.threshold_3sigma;
    } catch (const UndefinedStatistic&) {
        row.percentage = std::numeric_limits<double>::quiet_NaN();
        row.threshold =
            0.5 + 3.0 / (2.0 * std::sqrt(static_cast<double>(sample.pairs.size())));
    }
    return row;
}

// Shuffle rows: W and percentage computed per repetition, then averaged.
RelationRow evaluate_shuffled(const std::string& name, stats::Direction direction,
                              std::uint32_t repetitions,
                              const std::function<std::pair<double, double>(const ShuffleRep&)>& get,
                              const std::vector<TextOutcome>& texts) {
    RelationRow row;
    row.table = "shuffle";
    row.name = name;
    row.note = "mean of " + std::to_string(repetitions) + " shuffle repetitions";

    double w_sum = 0.0, pct_sum = 0.0;
    std::uint32_t w_reps = 0, pct_reps = 0;
    std::size_t pairs = 0;
    double threshold = 0.0;
    for (std::uint32_t rep = 0; rep < repetitions; ++rep) {
        stats::PairedSample sample;
        sample.label = name;
        for (const auto& t : texts) {
            if (!t.ok || t.shuffle.size() <= rep) continue;
            const auto [x1, x2] = get(t.shuffle[rep]);
            sample.pairs.push_back({t.id, x1, x2});
        }
        if (sample.pairs.empty()) continue;
        pairs = sample.pairs.size();
        threshold = 0.5 + 3.0 / (2.0 * std::sqrt(static_cast<double>(pairs)));
        try {
            const auto wr = stats::wilcoxon(sample);
            w_sum += direction == stats::Direction::second_greater ? wr.w : -wr.w;
            ++w_reps;
        } catch (const UndefinedStatistic&) {
        }
        try {
            pct_sum += stats::sign_percentage(sample, direction).fraction;
            ++pct_reps;
        } catch (const UndefinedStatistic&) {
        }
    }
    row.pairs = pairs;
    if (w_reps > 0) {
        row.defined = true;
        row.w = w_sum / w_reps;
        // The mean W is compared against the full-sample null spread, the
        // tables' sigma_W(M) convention.
        row.sigma = stats::sigma_w(pairs);
        row.level = stats::sigma_level(row.w, row.sigma);
    }
    row.percentage = pct_reps > 0 ? pct_sum / pct_reps
                                  : std::numeric_limits<double>::quiet_NaN();
    row.threshold = threshold;
    return row;
}

std::vector<RelationDef> build_relations(const RunConfig& config, bool zip_available) {
    std::vector<RelationDef> defs;
    const auto add = [&](std::string table, std::string name, stats::Direction dir,
                         Extract extract, std::string note = "") {
        defs.push_back({std::move(table), std::move(name), dir, std::move(extract),
                        std::move(note)});
    };
    const auto first_greater = stats::Direction::first_greater;
    const auto second_greater = stats::Direction::second_greater;

    if (config.has_variant(Variant::original)) {
        add("summary", "n1>n2", first_greater, [](const TextOutcome& t) {
            return stats::PairedSample::Pair{t.id, static_cast<double>(t.first.distinct),
                                             static_cast<double>(t.second.distinct)};
        });
        add("summary", "c1<c2", second_greater, [](const TextOutcome& t) {
            return stats::PairedSample::Pair{t.id, t.common.freq_first, t.common.freq_second};
        });
        add("summary", "C<n1/2", second_greater, [](const TextOutcome& t) {
            return stats::PairedSample::Pair{t.id, static_cast<double>(t.common.common_types),
                                             static_cast<double>(t.first.distinct) / 2.0};
        });
        add("summary", "C<n2/2", second_greater, [](const TextOutcome& t) {
            return stats::PairedSample::Pair{t.id, static_cast<double>(t.common.common_types),
                                             static_cast<double>(t.second.distinct) / 2.0};
        });
        add("summary", "c1>1/2", first_greater, [](const TextOutcome& t) {
            return stats::PairedSample::Pair{t.id, t.common.freq_first, 0.5};
        });
        add("summary", "c2>1/2", first_greater, [](const TextOutcome& t) {
            return stats::PairedSample::Pair{t.id, t.common.freq_second, 0.5};
        });
        add("summary", "L1>L2", first_greater, [](const TextOutcome& t) {
            return stats::PairedSample::Pair{t.id, static_cast<double>(t.first.letters),
                                             static_cast<double>(t.second.letters)};
        });
        add("summary", "rho1>rho2", first_greater, [](const TextOutcome& t) {
            return stats::PairedSample::Pair{t.id, static_cast<double>(t.first.paragraphs),
                                             static_cast<double>(t.second.paragraphs)};
        });
        add("summary", "K1<K2", second_greater, [](const TextOutcome& t) {
            return stats::PairedSample::Pair{t.id, t.first.yule, t.second.yule};
        });
        add("summary", "alpha1<alpha2", second_greater,
            [](const TextOutcome& t) -> std::optional<stats::PairedSample::Pair> {
                if (!t.first.sentence_stats || !t.second.sentence_stats) return std::nullopt;
                return stats::PairedSample::Pair{t.id, t.first.sentence_stats->mean,
                                                 t.second.sentence_stats->mean};
            });
        add("summary", "dispalpha1<dispalpha2", second_greater,
            [](const TextOutcome& t) -> std::optional<stats::PairedSample::Pair> {
                if (!t.first.sentence_stats || !t.second.sentence_stats) return std::nullopt;
                return stats::PairedSample::Pair{t.id, t.first.sentence_stats->dispersion,
                                                 t.second.sentence_stats->dispersion};
            });
        add("summary", "eps1<eps2", second_greater,
            [](const TextOutcome& t) -> std::optional<stats::PairedSample::Pair> {
                if (!t.first.sentence_stats || !t.second.sentence_stats) return std::nullopt;
                return stats::PairedSample::Pair{t.id, t.first.sentence_stats->entropy,
                                                 t.second.sentence_stats->entropy};
            });
        add("summary", "sentences1>sentences2", first_greater, [](const TextOutcome& t) {
            return stats::PairedSample::Pair{t.id, static_cast<double>(t.first.sentences),
                                             static_cast<double>(t.second.sentences)};
        });
        add("summary", "punct1>punct2", first_greater, [](const TextOutcome& t) {
            return stats::PairedSample::Pair{t.id, static_cast<double>(t.first.punctuation),
                                             static_cast<double>(t.second.punctuation)};
        });
        add("summary", "wordlen1>wordlen2", first_greater, [](const TextOutcome& t) {
            return stats::PairedSample::Pair{t.id, t.first.avg_word_length,
                                             t.second.avg_word_length};
        });
        add("summary", "bytes1>bytes2", first_greater, [](const TextOutcome& t) {
            return stats::PairedSample::Pair{t.id, static_cast<double>(t.first.byte_size),
                                             static_cast<double>(t.second.byte_size)};
        });

        for (std::uint32_t kappa = 1; kappa <= config.kappa_max; ++kappa) {
            const std::size_t idx = kappa - 1;
            add("rare", "h1>h2[kappa=" + std::to_string(kappa) + "]", first_greater,
                [idx](const TextOutcome& t) {
                    return stats::PairedSample::Pair{t.id,
                                                     static_cast<double>(t.first.rare.h[idx]),
                                                     static_cast<double>(t.second.rare.h[idx])};
                });
        }
        for (std::uint32_t kappa = 1; kappa <= config.kappa_max; ++kappa) {
            const std::size_t idx = kappa - 1;
            add("rare", "h/n1>h/n2[kappa=" + std::to_string(kappa) + "]", first_greater,
                [idx](const TextOutcome& t) {
                    return stats::PairedSample::Pair{t.id, t.first.rare.h_norm[idx],
                                                     t.second.rare.h_norm[idx]};
                });
        }
        for (std::uint32_t kappa = 1; kappa <= config.kappa_max; ++kappa) {
            const std::size_t idx = kappa - 1;
            add("rare", "mass1>mass2[kappa=" + std::to_string(kappa) + "]", first_greater,
                [idx](const TextOutcome& t) {
                    return stats::PairedSample::Pair{
                        t.id, static_cast<double>(t.first.rare.rare_mass[idx]),
                        static_cast<double>(t.second.rare.rare_mass[idx])};
                });
        }

        for (const std::uint32_t k : config.mu_min_counts) {
            for (const int common : {0, 1}) {
                const auto key = std::make_pair(k, common);
                add("mu", mu_label(k, common != 0, config.mu_inclusive), first_greater,
                    [key](const TextOutcome& t) -> std::optional<stats::PairedSample::Pair> {
                        const auto& m1 = t.mu_first.at(key);
                        const auto& m2 = t.mu_second.at(key);
                        if (!m1 || !m2) return std::nullopt;
                        return stats::PairedSample::Pair{t.id, *m1, *m2};
                    });
            }
        }

        add("compress", "s1<s2[LZ]", second_greater, [](const TextOutcome& t) {
            return stats::PairedSample::Pair{t.id, t.comp_first->s, t.comp_second->s};
        });
        if (zip_available) {
            add("compress", "s1<s2[zip]", second_greater,
                [](const TextOutcome& t) -> std::optional<stats::PairedSample::Pair> {
                    if (!t.comp_first->s_zip || !t.comp_second->s_zip) return std::nullopt;
                    return stats::PairedSample::Pair{t.id, *t.comp_first->s_zip,
                                                     *t.comp_second->s_zip};
                });
        }
    }

    if (config.has_variant(Variant::inverted_words)) {
        add("inversion", "s>s_inverted[LZ]", first_greater, [](const TextOutcome& t) {
            return stats::PairedSample::Pair{t.id, t.comp_full->s, t.comp_inverted->s};
        });
        if (zip_available) {
            add("inversion", "s>s_inverted[zip]", first_greater,
                [](const TextOutcome& t) -> std::optional<stats::PairedSample::Pair> {
                    if (!t.comp_full->s_zip || !t.comp_inverted->s_zip) return std::nullopt;
                    return stats::PairedSample::Pair{t.id, *t.comp_full->s_zip,
                                                     *t.comp_inverted->s_zip};
                });
        }
    }
    if (config.has_variant(Variant::inverted_letters)) {
        add("inversion", "s>s_letter_inverted[LZ]", first_greater, [](const TextOutcome& t) {
            return stats::PairedSample::Pair{t.id, t.comp_full->s, t.comp_letter_inverted->s};
        }, "no directional claim; reported for completeness");
        if (zip_available) {
            add("inversion", "s>s_letter_inverted[zip]", first_greater,
                [](const TextOutcome& t) -> std::optional<stats::PairedSample::Pair> {
                    if (!t.comp_full->s_zip || !t.comp_letter_inverted->s_zip) {
                        return std::nullopt;
                    }
                    return stats::PairedSample::Pair{t.id, *t.comp_full->s_zip,
                                                     *t.comp_letter_inverted->s_zip};
                },
                "no directional claim; reported for completeness");
        }
    }

    if (config.has_variant(Variant::shuffled)) {
        add("compress", "s>s_shuffled[LZ,mean]", first_greater,
            [](const TextOutcome& t) -> std::optional<stats::PairedSample::Pair> {
                if (t.shuffle.empty()) return std::nullopt;
                double mean = 0.0;
                for (const auto& rep : t.shuffle) mean += rep.s_lz;
                mean /= static_cast<double>(t.shuffle.size());
                return stats::PairedSample::Pair{t.id, t.comp_full->s, mean};
            },
            "shuffled side averaged over repetitions");
    }
    return defs;
}

CorrelationMatrix build_correlation(const RunConfig& config, bool zip_available,
                                    const std::vector<TextOutcome>& texts) {
    CorrelationMatrix matrix;
    if (!config.has_variant(Variant::original) || config.mu_min_counts.empty()) return matrix;

    const std::uint32_t mu_k = config.mu_min_counts.front();
    const auto mu_key_all = std::make_pair(mu_k, 0);
    const auto mu_key_common = std::make_pair(mu_k, 1);
    const std::string s_label = zip_available ? "s1<s2[zip]" : "s1<s2[LZ]";
    matrix.labels = {"n1>n2",
                     "h1>h2[kappa=1]",
                     "L1>L2",
                     "h/n1>h/n2[kappa=1]",
                     mu_label(mu_k, false, config.mu_inclusive),
                     mu_label(mu_k, true, config.mu_inclusive),
                     s_label};

    stats::IndicatorMatrix indicators;
    indicators.labels = matrix.labels;
    indicators.columns.assign(matrix.labels.size(), {});
    for (const auto& t : texts) {
        if (!t.ok) continue;
        const auto& mu1a = t.mu_first.at(mu_key_all);
        const auto& mu2a = t.mu_second.at(mu_key_all);
        const auto& mu1c = t.mu_first.at(mu_key_common);
        const auto& mu2c = t.mu_second.at(mu_key_common);
        if (!mu1a || !mu2a || !mu1c || !mu2c) continue;
        double s1, s2;
        if (zip_available) {
            if (!t.comp_first->s_zip || !t.comp_second->s_zip) continue;
            s1 = *t.comp_first->s_zip;
            s2 = *t.comp_second->s_zip;
        } else {
            s1 = t.comp_first->s;
            s2 = t.comp_second->s;
        }
        indicators.columns[0].push_back(t.first.distinct > t.second.distinct ? 1 : 0);
        indicators.columns[1].push_back(t.first.rare.h[0] > t.second.rare.h[0] ? 1 : 0);
        indicators.columns[2].push_back(t.first.letters > t.second.letters ? 1 : 0);
        indicators.columns[3].push_back(t.first.rare.h_norm[0] > t.second.rare.h_norm[0] ? 1 : 0);
        indicators.columns[4].push_back(*mu1a > *mu2a ? 1 : 0);
        indicators.columns[5].push_back(*mu1c > *mu2c ? 1 : 0);
        indicators.columns[6].push_back(s1 < s2 ? 1 : 0);
    }
    matrix.texts = indicators.texts();
    if (matrix.texts < 2) {
        matrix.labels.clear();
        return matrix;
    }

    const std::size_t count = matrix.labels.size();
    matrix.cells.assign(count, std::vector<double>(count,
                        std::numeric_limits<double>::quiet_NaN()));
    for (std::size_t a = 0; a < count; ++a) {
        for (std::size_t b = a + 1; b < count; ++b) {
            try {
                matrix.cells[a][b] = stats::pearson_indicator(indicators, a, b);
            } catch (const UndefinedStatistic&) {
                // constant column: cell stays NaN
            }
        }
    }
    return matrix;
}

} // namespace

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::original: return "original";
        case Variant::shuffled: return "shuffled";
        case Variant::inverted_words: return "inverted-words";
        case Variant::inverted_letters: return "inverted-letters";
    }
    return "unknown";
}

Variant parse_variant(const std::string& name) {
    if (name == "original") return Variant::original;
    if (name == "shuffled") return Variant::shuffled;
    if (name == "inverted-words") return Variant::inverted_words;
    if (name == "inverted-letters") return Variant::inverted_letters;
    throw std::invalid_argument("unknown variant: " + name);
}

bool RunConfig::has_variant(Variant v) const {
    return std::find(variants.begin(), variants.end(), v) != variants.end();
}

std::string config_json(const RunConfig& config) {
    ordered_json j;
    j["manifest"] = config.manifest_path;
    j["tokenizer"] = tokenizer_json(config.tokenizer);
    j["strip_boilerplate"] = config.strip_boilerplate;
    j["seed"] = config.seed;
    j["shuffle_repetitions"] = config.shuffle_repetitions;
    j["mu_min_counts"] = config.mu_min_counts;
    j["mu_inclusive"] = config.mu_inclusive;
    j["kappa_max"] = config.kappa_max;
    j["compressor"] = config.compressor;
    j["bit_order"] = config.bit_order == compress::BitOrder::msb_first ? "msb" : "lsb";
    j["coded_size"] = config.coded_size;
    j["yule_per_type"] = config.yule_per_type;
    std::vector<std::string> names;
    names.reserve(config.variants.size());
    for (const auto v : config.variants) names.push_back(variant_name(v));
    j["variants"] = names;
    return j.dump();
}

ResultBundle analyze_corpus(const RunConfig& config) {
    if (config.variants.empty()) throw std::invalid_argument("no variants requested");
    if (config.compressor != "deflate" && config.compressor != "none") {
        throw std::invalid_argument("unknown compressor: " + config.compressor);
    }
    for (const std::uint32_t k : config.mu_min_counts) {
        if (k < 2) throw std::invalid_argument("mu thresholds must be >= 2");
    }
    if (config.kappa_max < 1) throw std::invalid_argument("kappa_max must be >= 1");
    if (config.has_variant(Variant::shuffled) && config.shuffle_repetitions < 1) {
        throw std::invalid_argument("shuffle_repetitions must be >= 1");
    }

    const auto manifest = corpus::read_manifest(config.manifest_path);
    const auto manifest_dir = std::filesystem::path(config.manifest_path).parent_path();

    std::vector<corpus::ManifestEntry> included;
    for (const auto& entry : manifest.entries) {
        if (entry.included) included.push_back(entry);
    }
    std::sort(included.begin(), included.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    if (included.empty()) throw CorpusError("manifest has no included texts");
    for (std::size_t i = 1; i < included.size(); ++i) {
        if (included[i].id == included[i - 1].id) {
            throw CorpusError("duplicate manifest id: " + included[i].id);
        }
    }

    ResultBundle bundle;
    bundle.config = config;
    if (included.size() == 1) {
        bundle.warnings.push_back("only one included text: the sigma rule is not meaningful");
    } else if (included.size() < 30) {
        bundle.warnings.push_back(
            "fewer than 30 included texts: the Gaussian sigma rule is approximate");
    }

    std::unique_ptr<compress::Compressor> compressor;
    if (config.compressor == "deflate") {
        compressor = compress::make_deflate();
        bundle.compressor_version = compressor->name() + " (zlib " + compressor->version() +
                                    ", " + compressor->settings() + ")";
    } else {
        bundle.warnings.push_back("compressor disabled: zip-based relations are omitted");
    }

    std::vector<TextOutcome> outcomes(included.size());
    detail::parallel_for(included.size(), config.threads, [&](std::size_t i) {
        outcomes[i] = analyze_text(included[i], manifest_dir, config, compressor.get());
    });

    for (const auto& outcome : outcomes) {
        if (!outcome.ok) {
            bundle.exclusions.push_back(outcome.id + "\t*\t" + outcome.failure);
            bundle.warnings.push_back("text " + outcome.id + " failed: " + outcome.failure);
        } else {
            ++bundle.text_count;
        }
    }
    if (bundle.text_count == 0) throw CorpusError("every included text failed to analyze");

    const bool zip_available = compressor != nullptr;
    for (const auto& def : build_relations(config, zip_available)) {
        bundle.rows.push_back(evaluate_relation(def, outcomes, bundle.exclusions));
    }
    if (config.has_variant(Variant::shuffled)) {
        const auto reps = config.shuffle_repetitions;
        const auto second_greater = stats::Direction::second_greater;
        const auto first_greater = stats::Direction::first_greater;
        bundle.rows.push_back(evaluate_shuffled(
            "n1>n2", first_greater, reps,
            [](const ShuffleRep& r) { return std::make_pair(r.n1, r.n2); }, outcomes));
        bundle.rows.push_back(evaluate_shuffled(
            "L1>L2", first_greater, reps,
            [](const ShuffleRep& r) { return std::make_pair(r.letters1, r.letters2); },
            outcomes));
        bundle.rows.push_back(evaluate_shuffled(
            "h1>h2[kappa=3]", first_greater, reps,
            [](const ShuffleRep& r) { return std::make_pair(r.h3_1, r.h3_2); }, outcomes));
        bundle.rows.push_back(evaluate_shuffled(
            "h/n1>h/n2[kappa=3]", first_greater, reps,
            [](const ShuffleRep& r) { return std::make_pair(r.hn3_1, r.hn3_2); }, outcomes));
        bundle.rows.push_back(evaluate_shuffled(
            "K1<K2", second_greater, reps,
            [](const ShuffleRep& r) { return std::make_pair(r.yule1, r.yule2); }, outcomes));
    }

    bundle.correlation = build_correlation(config, zip_available, outcomes);

    for (const auto& outcome : outcomes) {
        for (const auto& record : outcome.records) bundle.results_lines.push_back(record);
    }
    std::sort(bundle.exclusions.begin(), bundle.exclusions.end());
    return bundle;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CorpusError("cannot write: " + path.string());
    out << contents;
    if (!out) throw CorpusError("write error: " + path.string());
}

std::string passed_text(const RelationRow& row) {
    if (!row.defined) return "n/a";
    return row.level >= 3 ? "p=" + std::to_string(row.level) : "False";
}

std::string csv_tables(const std::vector<RelationRow>& rows, const std::string& table,
                       const std::string& config) {
    std::string csv = "# config: " + config + "\n";
    csv += "relation,pairs,W,sigma_W,p_sigma,passed,percentage,threshold,note\n";
    for (const auto& row : rows) {
        if (row.table != table) continue;
        csv += row.name + ',' + std::to_string(row.pairs) + ',';
        if (row.defined) {
            csv += fmt_general(row.w) + ',' + fmt_sigma(row.sigma) + ',' +
                   std::to_string(row.level) + ',';
        } else {
            csv += ",,,";
        }
        csv += passed_text(row) + ',';
        csv += std::isnan(row.percentage) ? "" : fmt_pct(row.percentage);
        csv += ',';
        csv += row.threshold > 0 ? fmt_threshold(row.threshold) : "";
        csv += ',' + row.note + '\n';
    }
    return csv;
}

std::string md_tables(const std::vector<RelationRow>& rows, const std::string& table,
                      const std::string& title, const std::string& config) {
    std::string md = "# " + title + "\n\n";
    md += "<!-- config: " + config + " -->\n\n";
    md += "| relation | M | W | sigma_W | p sigma | % | 3 sigma threshold | note |\n";
    md += "|---|---|---|---|---|---|---|---|\n";
    for (const auto& row : rows) {
        if (row.table != table) continue;
        md += "| " + row.name + " | " + std::to_string(row.pairs) + " | ";
        md += (row.defined ? fmt_general(row.w) : "n/a") + " | ";
        md += (row.defined ? fmt_sigma(row.sigma) : "n/a") + " | ";
        md += passed_text(row) + " | ";
        md += (std::isnan(row.percentage) ? "n/a" : fmt_pct(row.percentage)) + " | ";
        md += (row.threshold > 0 ? fmt_threshold(row.threshold) : "n/a") + " | ";
        md += row.note + " |\n";
    }
    return md;
}

std::string csv_correlation(const CorrelationMatrix& matrix, const std::string& config) {
    std::string csv = "# config: " + config + "\n";
    csv += "# texts: " + std::to_string(matrix.texts) + "\n";
    csv += "relation";
    for (const auto& label : matrix.labels) csv += ',' + label;
    csv += '\n';
    for (std::size_t a = 0; a < matrix.labels.size(); ++a) {
        csv += matrix.labels[a];
        for (std::size_t b = 0; b < matrix.labels.size(); ++b) {
            csv += ',';
            if (b <= a) continue;
            const double r = matrix.cells[a][b];
            if (std::isnan(r)) continue;
            csv += fmt_corr(r);
            if (std::abs(r) > 0.4) csv += '*'; // significant, per the tables' convention
        }
        csv += '\n';
    }
    return csv;
}

std::string md_correlation(const CorrelationMatrix& matrix, const std::string& config) {
    std::string md = "# Pearson correlation of relation indicators\n\n";
    md += "<!-- config: " + config + " -->\n\n";
    md += "Entries with |r| > 0.4 are marked in bold. Texts: " +
          std::to_string(matrix.texts) + "\n\n";
    md += "| relation |";
    for (const auto& label : matrix.labels) md += ' ' + label + " |";
    md += "\n|---|";
    for (std::size_t i = 0; i < matrix.labels.size(); ++i) md += "---|";
    md += '\n';
    for (std::size_t a = 0; a < matrix.labels.size(); ++a) {
        md += "| " + matrix.labels[a] + " |";
        for (std::size_t b = 0; b < matrix.labels.size(); ++b) {
            if (b <= a) {
                md += " |";
                continue;
            }
            const double r = matrix.cells[a][b];
            if (std::isnan(r)) {
                md += " n/a |";
            } else if (std::abs(r) > 0.4) {
                md += " **" + fmt_corr(r) + "** |";
            } else {
                md += ' ' + fmt_corr(r) + " |";
            }
        }
        md += '\n';
    }
    return md;
}

} // namespace

void emit_tables(const ResultBundle& bundle, const std::filesystem::path& out_dir) {
    const auto tables_dir = out_dir / "tables";
    std::filesystem::create_directories(tables_dir);

    const std::string config = config_json(bundle.config);

    {
        ordered_json run;
        run["config"] = nlohmann::ordered_json::parse(config);
        run["included_texts"] = bundle.text_count;
        run["compressor_version"] = bundle.compressor_version;
        run["warnings"] = bundle.warnings;
        write_file(out_dir / "run.json", run.dump(2) + "\n");
    }
    {
        std::string jsonl = "{\"type\":\"run_config\",\"config\":" + config + "}\n";
        for (const auto& line : bundle.results_lines) jsonl += line + '\n';
        write_file(out_dir / "results.jsonl", jsonl);
    }
    {
        std::string log;
        for (const auto& line : bundle.exclusions) log += line + '\n';
        write_file(out_dir / "exclusions.log", log);
    }

    const std::vector<std::pair<std::string, std::string>> tables = {
        {"summary", "Half-difference relations"},
        {"rare", "Rare words"},
        {"mu", "Frequency vs inverse spatial period"},
        {"compress", "Compressibility of the halves"},
        {"inversion", "Original vs inverted text"},
        {"shuffle", "Randomly shuffled control"},
    };
    for (const auto& [name, title] : tables) {
        write_file(tables_dir / (name + ".csv"), csv_tables(bundle.rows, name, config));
        write_file(tables_dir / (name + ".md"), md_tables(bundle.rows, name, title, config));
    }
    write_file(tables_dir / "correlation.csv", csv_correlation(bundle.correlation, config));
    write_file(tables_dir / "correlation.md", md_correlation(bundle.correlation, config));
}

} // namespace halves::report
