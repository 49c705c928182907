#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "halves/transform.hpp"

namespace halves::compress {

enum class BitOrder { msb_first, lsb_first };

struct BitString {
    std::vector<std::uint8_t> bits; // each element 0 or 1
    std::uint64_t source_bytes = 0;
};

// Each UTF-8 byte expanded to 8 bits, MSB first by default.
BitString to_bitstring(std::string_view text, BitOrder order = BitOrder::msb_first);

struct LZParse {
    std::uint64_t fragment_count = 0;            // C_LZ
    std::vector<std::uint64_t> fragment_ends;    // exclusive end index of each fragment
};

// Incremental dictionary parse: each fragment is the shortest prefix of
// the remaining input that is not a previously completed fragment; the
// final fragment may be a truncated repeat. Throws UndefinedStatistic on
// an empty bitstring.
LZParse lz_complexity(const BitString& bits);

// External compressor contract: byte size of the compressed stream at the
// implementation's default setting.
class Compressor {
public:
    virtual ~Compressor() = default;
    virtual std::uint64_t compressed_size(std::string_view bytes) const = 0;
    virtual std::string name() const = 0;
    virtual std::string version() const = 0;
    virtual std::string settings() const = 0;
};

// Raw deflate stream (no container headers) at the default level.
std::unique_ptr<Compressor> make_deflate();

struct LzOptions {
    BitOrder bit_order = BitOrder::msb_first;
    // With coded_size the LZ term of s uses the coded length
    // C*(1+log2 C)/8 bytes instead of the raw fragment count.
    bool coded_size = false;
};

struct CompressResult {
    std::uint64_t source_bytes = 0; // S_in
    std::uint64_t lz_fragments = 0; // C_LZ
    double s = 0.0;                 // (S_in - C_LZ) / S_in
    std::optional<double> s_zip;    // (S_in - compressed bytes) / S_in
    std::string compressor_name;
    std::string compressor_version;
    std::string compressor_settings;
};

// Throws UndefinedStatistic on empty text. `compressor` may be null, in
// which case s_zip is left unset.
CompressResult compressibility(std::string_view text,
                               const Compressor* compressor = nullptr,
                               const LzOptions& options = {});

struct InversionResult {
    double s = 0.0;
    double s_inverted = 0.0;
    std::optional<double> s_zip;
    std::optional<double> s_zip_inverted;
};

// Renders the word sequence and its word-inversion through the same join
// rule and compresses both. Throws UndefinedStatistic for N < 2.
InversionResult inversion_experiment(const std::vector<std::string>& words,
                                     const Compressor* compressor = nullptr,
                                     const LzOptions& options = {});

// Mean over repetitions of s(original) - s(shuffled), LZ-based.
double shuffle_experiment(const std::vector<std::string>& words,
                          const transform::ShuffleSpec& spec,
                          std::string_view doc_id = {},
                          const LzOptions& options = {});

} // namespace halves::compress
