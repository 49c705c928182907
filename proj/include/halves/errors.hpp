#pragma once

#include <stdexcept>
#include <string>

namespace halves {

// Thrown when a statistic is requested on input where it has no defined
// value (no sentences, fewer than two occurrences, empty word set, ...).
struct UndefinedStatistic : std::domain_error {
    using std::domain_error::domain_error;
};

// I/O or decoding failure while loading corpus material.
struct CorpusError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace halves
