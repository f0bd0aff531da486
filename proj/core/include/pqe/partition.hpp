#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "pqe/text.hpp"

namespace pqe {

/// Normalized query terms ("keywords").
using keyword_set = std::unordered_set<std::string>;

/// A contiguous span [start, end] (inclusive) of one document's filtered token
/// stream, with its term counts.
struct partition {
    std::string doc;
    std::size_t start = 0;
    std::size_t end = 0;
    std::map<std::string, std::uint32_t> term_freqs;
    std::uint32_t keyword_count = 0;

    [[nodiscard]] std::size_t length() const noexcept { return end - start + 1; }

    friend bool operator==(partition const&, partition const&) = default;
};

/// Counts terms and keyword occurrences over [start, end] of `stream`.
[[nodiscard]] partition make_partition(token_stream const& stream, keyword_set const& keywords,
                                       std::size_t start, std::size_t end, std::string doc = {});

/// How the peak keyword frequency (the divisor of k) is read off a document.
enum class peak_rule {
    /// Largest per-decile total of keyword occurrences.
    decile_total,
    /// Largest whole-document frequency of any single keyword.
    single_keyword,
};

[[nodiscard]] std::string_view to_string(peak_rule rule) noexcept;
[[nodiscard]] peak_rule parse_peak_rule(std::string_view name);

/// Equal-width split of a document into (at most) ten bins.
struct decile_profile {
    std::vector<partition> bins;
    std::vector<std::uint32_t> keyword_freqs;  ///< per-bin keyword occurrences
    std::uint32_t peak_keyword_freq = 0;
    std::uint32_t total_keyword_freq = 0;
};

constexpr std::size_t decile_bins = 10;

/// Near-equal bins with remainder tokens going to the earliest bins; streams
/// shorter than ten tokens get one bin per token. Throws
/// degenerate_document_error on an empty stream.
[[nodiscard]] decile_profile equiwidth_deciles(token_stream const& stream, keyword_set const& keywords,
                                               std::string doc = {},
                                               peak_rule rule = peak_rule::decile_total);

/// Peak keyword frequency under `rule`, given the decile bins of `stream`.
[[nodiscard]] std::uint32_t peak_keyword_frequency(token_stream const& stream,
                                                   keyword_set const& keywords,
                                                   std::span<std::uint32_t const> decile_keyword_freqs,
                                                   peak_rule rule);

/// k = total / peak rounded half-up, at least 1. Throws no_keyword_error when
/// peak is 0 and std::invalid_argument when peak exceeds total.
[[nodiscard]] std::uint32_t derive_k(std::uint32_t total_keyword_freq, std::uint32_t peak_keyword_freq);

/// Left-to-right scan closing a partition at its k-th keyword occurrence. A
/// trailing span with fewer than k (but at least one) keywords becomes a short
/// final partition; a keywordless tail is folded into the last partition.
/// Throws no_keyword_error when the stream holds no keyword.
[[nodiscard]] std::vector<partition> equifrequency_partition(token_stream const& stream,
                                                             keyword_set const& keywords,
                                                             std::uint32_t k, std::string doc = {});

/// Debug dump, one "docno start end keyword_count" line per partition.
void write_partitions(std::span<partition const> partitions, std::ostream& out);

}  // namespace pqe
