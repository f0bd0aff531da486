#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pqe/index.hpp"
#include "pqe/trec_io.hpp"

namespace pqe {

enum class ranking_model {
    bm25,   ///< Okapi BM25 with a non-negative idf.
    tfidf,  ///< (1 + ln tf) * ln(1 + N/df), no length normalization.
};

[[nodiscard]] std::string_view to_string(ranking_model model) noexcept;
/// Throws input_error for unknown names.
[[nodiscard]] ranking_model parse_ranking_model(std::string_view name);

struct ranking_params {
    ranking_model model = ranking_model::bm25;
    double k1 = 1.2;
    double b = 0.75;
};

/// Query as a bag: term -> query term frequency. Duplicated terms add weight.
using query_bag = std::map<std::string, std::uint32_t, std::less<>>;

[[nodiscard]] query_bag make_query(std::span<std::string const> terms);

struct ranked_doc {
    std::string docno;
    double score = 0.0;

    friend bool operator==(ranked_doc const&, ranked_doc const&) = default;
};

struct ranked_list {
    int topic = 0;
    std::vector<ranked_doc> entries;

    friend bool operator==(ranked_list const&, ranked_list const&) = default;
};

/// Contribution of one query term occurrence in one document.
[[nodiscard]] double term_weight(ranking_params const& params, std::uint32_t tf, std::uint32_t doc_length,
                                 double avg_doc_length, std::size_t df, std::size_t doc_count);

/// Scores every document that matches at least one query term and returns the
/// best `depth`, descending by score, ties broken by ascending DOCNO.
/// Throws empty_query_error for an empty bag.
[[nodiscard]] ranked_list retrieve(inverted_index const& index, query_bag const& query,
                                   std::size_t depth, ranking_params const& params, int topic = 0);

/// First min(n, size) DOCNOs in rank order.
[[nodiscard]] std::vector<std::string> feedback_set(ranked_list const& ranked, std::size_t n);

[[nodiscard]] std::vector<run_entry> to_run_entries(ranked_list const& ranked, std::string const& tag);

}  // namespace pqe
