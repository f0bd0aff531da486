#include "pqe/partition.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "pqe/errors.hpp"

namespace pqe {

std::string_view to_string(peak_rule rule) noexcept
{
    switch (rule) {
    case peak_rule::decile_total: return "decile-total";
    case peak_rule::single_keyword: return "single-keyword";
    }
    return "decile-total";
}

peak_rule parse_peak_rule(std::string_view name)
{
    if (name == "decile-total") {
        return peak_rule::decile_total;
    }
    if (name == "single-keyword") {
        return peak_rule::single_keyword;
    }
    throw input_error("unknown peak rule '" + std::string(name) + "'");
}

partition make_partition(token_stream const& stream, keyword_set const& keywords, std::size_t start,
                         std::size_t end, std::string doc)
{
    if (start > end || end >= stream.size()) {
        throw invariant_error("partition span out of range");
    }
    partition p{std::move(doc), start, end, {}, 0};
    for (std::size_t i = start; i <= end; ++i) {
        ++p.term_freqs[stream[i]];
        if (keywords.contains(stream[i])) {
            ++p.keyword_count;
        }
    }
    return p;
}

std::uint32_t peak_keyword_frequency(token_stream const& stream, keyword_set const& keywords,
                                     std::span<std::uint32_t const> decile_keyword_freqs,
                                     peak_rule rule)
{
    switch (rule) {
    case peak_rule::decile_total:
        return decile_keyword_freqs.empty()
            ? 0
            : *std::max_element(decile_keyword_freqs.begin(), decile_keyword_freqs.end());
    case peak_rule::single_keyword: {
        std::unordered_map<std::string, std::uint32_t> counts;
        std::uint32_t peak = 0;
        for (auto const& t : stream.tokens) {
            if (keywords.contains(t)) {
                peak = std::max(peak, ++counts[t]);
            }
        }
        return peak;
    }
    }
    return 0;
}

decile_profile equiwidth_deciles(token_stream const& stream, keyword_set const& keywords,
                                 std::string doc, peak_rule rule)
{
    if (stream.empty()) {
        throw degenerate_document_error("cannot partition an empty document " + doc);
    }
    auto const bins = std::min(decile_bins, stream.size());
    auto const base = stream.size() / bins;
    auto const remainder = stream.size() % bins;

    decile_profile profile;
    profile.bins.reserve(bins);
    std::size_t start = 0;
    for (std::size_t b = 0; b < bins; ++b) {
        auto const size = base + (b < remainder ? 1 : 0);
        profile.bins.push_back(make_partition(stream, keywords, start, start + size - 1, doc));
        profile.keyword_freqs.push_back(profile.bins.back().keyword_count);
        start += size;
    }
    profile.total_keyword_freq =
        std::accumulate(profile.keyword_freqs.begin(), profile.keyword_freqs.end(), 0U);
    profile.peak_keyword_freq =
        peak_keyword_frequency(stream, keywords, profile.keyword_freqs, rule);
    return profile;
}

std::uint32_t derive_k(std::uint32_t total_keyword_freq, std::uint32_t peak_keyword_freq)
{
    if (peak_keyword_freq == 0) {
        throw no_keyword_error("document contains no query term");
    }
    if (peak_keyword_freq > total_keyword_freq) {
        throw std::invalid_argument("peak keyword frequency exceeds the total");
    }
    // round(total / peak) with halves rounded up, in integer arithmetic.
    auto const total = static_cast<std::uint64_t>(total_keyword_freq);
    auto const peak = static_cast<std::uint64_t>(peak_keyword_freq);
    auto const k = (2 * total + peak) / (2 * peak);
    return static_cast<std::uint32_t>(std::max<std::uint64_t>(1, k));
}

std::vector<partition> equifrequency_partition(token_stream const& stream, keyword_set const& keywords,
                                               std::uint32_t k, std::string doc)
{
    if (k == 0) {
        throw std::invalid_argument("k must be at least 1");
    }
    std::vector<partition> parts;
    std::size_t start = 0;
    std::uint32_t seen = 0;
    for (std::size_t i = 0; i < stream.size(); ++i) {
        if (keywords.contains(stream[i]) && ++seen == k) {
            parts.push_back(make_partition(stream, keywords, start, i, doc));
            start = i + 1;
            seen = 0;
        }
    }
    if (start < stream.size()) {
        if (seen > 0) {
            parts.push_back(make_partition(stream, keywords, start, stream.size() - 1, doc));
        } else if (!parts.empty()) {
            // Keywordless tail joins the last partition.
            auto const last_start = parts.back().start;
            parts.back() = make_partition(stream, keywords, last_start, stream.size() - 1, doc);
        }
    }
    if (parts.empty()) {
        throw no_keyword_error("document " + doc + " contains no query term");
    }
    return parts;
}

void write_partitions(std::span<partition const> partitions, std::ostream& out)
{
    for (auto const& p : partitions) {
        out << p.doc << ' ' << p.start << ' ' << p.end << ' ' << p.keyword_count << '\n';
    }
}

}  // namespace pqe
