#include "halves/compress.hpp"

#include <cmath>
#include <stdexcept>

#include <zlib.h>

#include "halves/errors.hpp"

namespace halves::compress {

BitString to_bitstring(std::string_view text, BitOrder order) {
    BitString out;
    out.source_bytes = text.size();
    out.bits.reserve(text.size() * 8);
    for (const char c : text) {
        const auto byte = static_cast<unsigned char>(c);
        if (order == BitOrder::msb_first) {
            for (int shift = 7; shift >= 0; --shift) {
                out.bits.push_back(static_cast<std::uint8_t>((byte >> shift) & 1u));
            }
        } else {
            for (int shift = 0; shift < 8; ++shift) {
                out.bits.push_back(static_cast<std::uint8_t>((byte >> shift) & 1u));
            }
        }
    }
    return out;
}

LZParse lz_complexity(const BitString& bits) {
    if (bits.bits.empty()) throw UndefinedStatistic("LZ parse undefined on an empty bitstring");

    // Binary trie over completed fragments. Every fragment extends an
    // existing fragment by one bit, so the dictionary is exactly the set
    // of non-root nodes.
    struct Node {
        std::int64_t child[2] = {-1, -1};
    };
    std::vector<Node> trie(1);

    LZParse parse;
    const auto& b = bits.bits;
    std::size_t pos = 0;
    while (pos < b.size()) {
        std::int64_t node = 0;
        while (pos < b.size() && trie[static_cast<std::size_t>(node)].child[b[pos]] >= 0) {
            node = trie[static_cast<std::size_t>(node)].child[b[pos]];
            ++pos;
        }
        if (pos < b.size()) {
            trie.push_back(Node{});
            trie[static_cast<std::size_t>(node)].child[b[pos]] =
                static_cast<std::int64_t>(trie.size() - 1);
            ++pos;
        }
        // Otherwise the input ended inside a known fragment; the truncated
        // repeat still counts as the final fragment.
        ++parse.fragment_count;
        parse.fragment_ends.push_back(pos);
    }
    return parse;
}

namespace {

class DeflateCompressor final : public Compressor {
public:
    std::uint64_t compressed_size(std::string_view bytes) const override {
        z_stream strm{};
        // Raw deflate stream, default level: no container headers, so the
        // byte count is reproducible for a pinned zlib.
        if (deflateInit2(&strm, Z_DEFAULT_COMPRESSION, Z_DEFLATED, -15, 8,
                         Z_DEFAULT_STRATEGY) != Z_OK) {
            throw std::runtime_error("deflateInit2 failed");
        }
        std::vector<unsigned char> out(deflateBound(&strm, bytes.size()));
        strm.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(bytes.data()));
        strm.avail_in = static_cast<uInt>(bytes.size());
        strm.next_out = out.data();
        strm.avail_out = static_cast<uInt>(out.size());
        const int rc = deflate(&strm, Z_FINISH);
        const std::uint64_t size = strm.total_out;
        deflateEnd(&strm);
        if (rc != Z_STREAM_END) throw std::runtime_error("deflate did not finish");
        return size;
    }

    std::string name() const override { return "deflate"; }
    std::string version() const override { return zlibVersion(); }
    std::string settings() const override { return "raw,level=default"; }
};

double lz_term_bytes(std::uint64_t fragments, bool coded_size) {
    if (!coded_size) return static_cast<double>(fragments);
    const double c = static_cast<double>(fragments);
    return c * (1.0 + std::log2(c)) / 8.0;
}

} // namespace

std::unique_ptr<Compressor> make_deflate() { return std::make_unique<DeflateCompressor>(); }

CompressResult compressibility(std::string_view text,
                               const Compressor* compressor,
                               const LzOptions& options) {
    if (text.empty()) throw UndefinedStatistic("compressibility undefined on empty text");

    CompressResult result;
    result.source_bytes = text.size();
    result.lz_fragments = lz_complexity(to_bitstring(text, options.bit_order)).fragment_count;

    const double s_in = static_cast<double>(result.source_bytes);
    result.s = (s_in - lz_term_bytes(result.lz_fragments, options.coded_size)) / s_in;
    if (compressor != nullptr) {
        const std::uint64_t compressed = compressor->compressed_size(text);
        result.s_zip = (s_in - static_cast<double>(compressed)) / s_in;
        result.compressor_name = compressor->name();
        result.compressor_version = compressor->version();
        result.compressor_settings = compressor->settings();
    }
    return result;
}

InversionResult inversion_experiment(const std::vector<std::string>& words,
                                     const Compressor* compressor,
                                     const LzOptions& options) {
    const std::string original = transform::render_words(words);
    const std::string inverted = transform::render_words(transform::invert_words(words));
    const CompressResult a = compressibility(original, compressor, options);
    const CompressResult b = compressibility(inverted, compressor, options);

    InversionResult result;
    result.s = a.s;
    result.s_inverted = b.s;
    result.s_zip = a.s_zip;
    result.s_zip_inverted = b.s_zip;
    return result;
}

double shuffle_experiment(const std::vector<std::string>& words,
                          const transform::ShuffleSpec& spec,
                          std::string_view doc_id,
                          const LzOptions& options) {
    const double s_original = compressibility(transform::render_words(words), nullptr, options).s;
    double diff_sum = 0.0;
    for (std::uint32_t rep = 0; rep < spec.repetitions; ++rep) {
        const auto shuffled = transform::shuffle_words(words, spec, rep, doc_id);
        diff_sum += s_original -
                    compressibility(transform::render_words(shuffled), nullptr, options).s;
    }
    return diff_sum / static_cast<double>(spec.repetitions);
}

} // namespace halves::compress
