#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pqe/partition.hpp"

namespace pqe {

/// Best partition-level score per term of one document.
using term_scores = std::map<std::string, double>;

struct candidate_term {
    std::string term;
    double score = 0.0;
    std::string source_doc;

    friend bool operator==(candidate_term const&, candidate_term const&) = default;
};

/// Candidates for one topic, descending by score, ascending by term on ties,
/// one entry per distinct term.
struct candidate_list {
    int topic = 0;
    std::vector<candidate_term> entries;

    friend bool operator==(candidate_list const&, candidate_list const&) = default;
};

/// f(t, p) / max_w f(w, p); 0 for absent terms.
[[nodiscard]] double tf_norm(std::string const& term, partition const& p);

/// log10(P / number of partitions containing term). Throws
/// undefined_idf_error when no partition contains the term.
[[nodiscard]] double idf_partition(std::string const& term, std::span<partition const> partitions);

/// For every term of the document: max over partitions of tf_norm * idf.
[[nodiscard]] term_scores score_partitions(std::span<partition const> partitions);

/// The n best terms, ties broken by ascending term.
[[nodiscard]] std::vector<candidate_term> top_n_terms(term_scores const& scores, std::size_t n,
                                                      std::string const& source_doc = {});

/// Concatenates per-document lists, keeps the highest score per term (the
/// earliest list wins exact ties) and sorts.
[[nodiscard]] candidate_list merge_candidates(std::span<std::vector<candidate_term> const> per_doc,
                                              int topic);

/// Knobs for turning one feedback document into candidates.
struct candidate_options {
    std::size_t terms_per_doc = 5;
    peak_rule rule = peak_rule::decile_total;
};

/// Deciles -> k -> equi-frequency partitions -> scores -> top n, for one
/// feedback document. Propagates no_keyword_error / degenerate_document_error.
[[nodiscard]] std::vector<candidate_term> document_candidates(token_stream const& stream,
                                                              keyword_set const& keywords,
                                                              std::string const& docno,
                                                              candidate_options const& options,
                                                              std::vector<partition>* partitions_out = nullptr);

/// "topic<TAB>term<TAB>score" lines, score with 4 decimals, list order kept.
void write_keywords(candidate_list const& list, std::ostream& out);

}  // namespace pqe
