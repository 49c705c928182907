#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace halves {

// A loaded text. `body` is NFC-normalized UTF-8 with LF line endings;
// `byte_size` is the on-disk size before any normalization.
struct TextDocument {
    std::string id;
    std::optional<std::string> title;
    std::string body;
    std::uint64_t byte_size = 0;
};

} // namespace halves
