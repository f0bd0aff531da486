#include "pqe/term_scoring.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <unordered_map>

#include "pqe/errors.hpp"

namespace pqe {

namespace {

std::uint32_t max_freq(partition const& p)
{
    std::uint32_t best = 0;
    for (auto const& [_, f] : p.term_freqs) {
        best = std::max(best, f);
    }
    return best;
}

bool ranks_before(candidate_term const& a, candidate_term const& b)
{
    if (a.score != b.score) {
        return a.score > b.score;
    }
    return a.term < b.term;
}

}  // namespace

double tf_norm(std::string const& term, partition const& p)
{
    auto const peak = max_freq(p);
    if (peak == 0) {
        throw invariant_error("tf_norm on an empty partition");
    }
    auto it = p.term_freqs.find(term);
    if (it == p.term_freqs.end()) {
        return 0.0;
    }
    return static_cast<double>(it->second) / static_cast<double>(peak);
}

double idf_partition(std::string const& term, std::span<partition const> partitions)
{
    auto const containing = std::count_if(partitions.begin(), partitions.end(),
                                          [&](partition const& p) { return p.term_freqs.contains(term); });
    if (containing == 0) {
        throw undefined_idf_error("term '" + term + "' occurs in no partition");
    }
    return std::log10(static_cast<double>(partitions.size()) / static_cast<double>(containing));
}

term_scores score_partitions(std::span<partition const> partitions)
{
    std::unordered_map<std::string, std::size_t> df;
    for (auto const& p : partitions) {
        for (auto const& [term, _] : p.term_freqs) {
            ++df[term];
        }
    }
    auto const total = static_cast<double>(partitions.size());

    term_scores best;
    for (auto const& p : partitions) {
        auto const peak = static_cast<double>(max_freq(p));
        if (peak == 0.0) {
            throw invariant_error("score_partitions on an empty partition");
        }
        for (auto const& [term, f] : p.term_freqs) {
            double const idf = std::log10(total / static_cast<double>(df[term]));
            double const score = (static_cast<double>(f) / peak) * idf;
            auto [it, inserted] = best.emplace(term, score);
            if (!inserted && score > it->second) {
                it->second = score;
            }
        }
    }
    return best;
}

std::vector<candidate_term> top_n_terms(term_scores const& scores, std::size_t n,
                                        std::string const& source_doc)
{
    std::vector<candidate_term> all;
    all.reserve(scores.size());
    for (auto const& [term, score] : scores) {
        all.push_back({term, score, source_doc});
    }
    auto const keep = std::min(n, all.size());
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(),
                      ranks_before);
    all.resize(keep);
    return all;
}

candidate_list merge_candidates(std::span<std::vector<candidate_term> const> per_doc, int topic)
{
    std::unordered_map<std::string, std::size_t> slot;
    candidate_list merged{topic, {}};
    for (auto const& list : per_doc) {
        for (auto const& c : list) {
            auto [it, inserted] = slot.emplace(c.term, merged.entries.size());
            if (inserted) {
                merged.entries.push_back(c);
            } else if (c.score > merged.entries[it->second].score) {
                merged.entries[it->second] = c;
            }
        }
    }
    std::sort(merged.entries.begin(), merged.entries.end(), ranks_before);
    return merged;
}

std::vector<candidate_term> document_candidates(token_stream const& stream, keyword_set const& keywords,
                                                std::string const& docno,
                                                candidate_options const& options,
                                                std::vector<partition>* partitions_out)
{
    auto const deciles = equiwidth_deciles(stream, keywords, docno, options.rule);
    auto const k = derive_k(deciles.total_keyword_freq, deciles.peak_keyword_freq);
    auto parts = equifrequency_partition(stream, keywords, k, docno);
    auto candidates = top_n_terms(score_partitions(parts), options.terms_per_doc, docno);
    if (partitions_out != nullptr) {
        *partitions_out = std::move(parts);
    }
    return candidates;
}

void write_keywords(candidate_list const& list, std::ostream& out)
{
    char buf[64];
    for (auto const& c : list.entries) {
        std::snprintf(buf, sizeof buf, "%.4f", c.score);
        out << list.topic << '\t' << c.term << '\t' << buf << '\n';
    }
}

}  // namespace pqe
