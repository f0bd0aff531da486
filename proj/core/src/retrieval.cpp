#include "pqe/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pqe/errors.hpp"

namespace pqe {

std::string_view to_string(ranking_model model) noexcept
{
    switch (model) {
    case ranking_model::bm25: return "bm25";
    case ranking_model::tfidf: return "tfidf";
    }
    return "bm25";
}

ranking_model parse_ranking_model(std::string_view name)
{
    if (name == "bm25") {
        return ranking_model::bm25;
    }
    if (name == "tfidf") {
        return ranking_model::tfidf;
    }
    throw input_error("unknown ranking model '" + std::string(name) + "'");
}

query_bag make_query(std::span<std::string const> terms)
{
    query_bag bag;
    for (auto const& t : terms) {
        ++bag[t];
    }
    return bag;
}

double term_weight(ranking_params const& params, std::uint32_t tf, std::uint32_t doc_length,
                   double avg_doc_length, std::size_t df, std::size_t doc_count)
{
    auto const n = static_cast<double>(doc_count);
    auto const f = static_cast<double>(tf);
    auto const d = static_cast<double>(df);
    switch (params.model) {
    case ranking_model::bm25: {
        double const idf = std::log(1.0 + (n - d + 0.5) / (d + 0.5));
        double const norm = avg_doc_length > 0.0
            ? 1.0 - params.b + params.b * static_cast<double>(doc_length) / avg_doc_length
            : 1.0;
        return idf * f * (params.k1 + 1.0) / (f + params.k1 * norm);
    }
    case ranking_model::tfidf:
        return (1.0 + std::log(f)) * std::log(1.0 + n / d);
    }
    return 0.0;
}

ranked_list retrieve(inverted_index const& index, query_bag const& query, std::size_t depth,
                     ranking_params const& params, int topic)
{
    if (depth == 0) {
        throw std::invalid_argument("retrieval depth must be at least 1");
    }
    if (query.empty()) {
        throw empty_query_error("empty query for topic " + std::to_string(topic));
    }

    std::vector<double> acc(index.doc_count(), 0.0);
    std::vector<char> seen(index.doc_count(), 0);
    std::vector<doc_id> touched;
    double const avgdl = index.average_doc_length();

    // Terms are visited in lexicographic order so that the floating-point
    // accumulation order never depends on hashing.
    for (auto const& [term, qtf] : query) {
        auto const list = index.postings(term);
        for (auto const& p : list) {
            if (!seen[p.doc]) {
                seen[p.doc] = 1;
                touched.push_back(p.doc);
            }
            acc[p.doc] += static_cast<double>(qtf)
                * term_weight(params, p.freq, index.doc_length(p.doc), avgdl, list.size(),
                              index.doc_count());
        }
    }

    auto better = [&](doc_id a, doc_id b) {
        if (acc[a] != acc[b]) {
            return acc[a] > acc[b];
        }
        return index.docno(a) < index.docno(b);
    };
    auto const keep = std::min(depth, touched.size());
    std::partial_sort(touched.begin(), touched.begin() + static_cast<std::ptrdiff_t>(keep),
                      touched.end(), better);

    ranked_list ranked{topic, {}};
    ranked.entries.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i) {
        ranked.entries.push_back({index.docno(touched[i]), acc[touched[i]]});
    }
    return ranked;
}

std::vector<std::string> feedback_set(ranked_list const& ranked, std::size_t n)
{
    if (n == 0) {
        throw std::invalid_argument("feedback depth must be at least 1");
    }
    std::vector<std::string> out;
    auto const keep = std::min(n, ranked.entries.size());
    out.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i) {
        out.push_back(ranked.entries[i].docno);
    }
    return out;
}

std::vector<run_entry> to_run_entries(ranked_list const& ranked, std::string const& tag)
{
    std::vector<run_entry> out;
    out.reserve(ranked.entries.size());
    for (std::size_t i = 0; i < ranked.entries.size(); ++i) {
        out.push_back({ranked.topic, ranked.entries[i].docno, i + 1, ranked.entries[i].score, tag});
    }
    return out;
}

}  // namespace pqe
