#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pqe/partition.hpp"
#include "pqe/term_scoring.hpp"
#include "pqe/trec_io.hpp"

namespace pqe {

/// Relative tolerance under which two candidate scores count as tied.
constexpr double group_tie_tolerance = 1e-9;

/// A maximal run of tied candidates in the sorted candidate list.
struct term_group {
    double score = 0.0;      ///< score of the run's first member
    double score_sum = 0.0;  ///< exact sum of member scores
    std::vector<std::string> terms;
    std::size_t keyword_count = 0;

    [[nodiscard]] std::size_t size() const noexcept { return terms.size(); }

    friend bool operator==(term_group const&, term_group const&) = default;
};

enum class expansion_method { highest, average, keyword, none };

[[nodiscard]] std::string_view to_string(expansion_method method) noexcept;
/// Accepts "highest", "average", "keyword"; throws input_error otherwise.
[[nodiscard]] expansion_method parse_expansion_method(std::string_view name);

struct expanded_query {
    int topic = 0;
    std::vector<std::string> original_terms;
    std::vector<std::string> expansion_terms;
    expansion_method method = expansion_method::none;
    std::optional<double> group_score;

    /// Original terms followed by expansion terms (bag semantics downstream).
    [[nodiscard]] std::vector<std::string> all_terms() const;

    friend bool operator==(expanded_query const&, expanded_query const&) = default;
};

[[nodiscard]] bool same_score(double a, double b) noexcept;

/// Groups in descending score order; keyword_count counts members found in
/// `keywords` by exact match.
[[nodiscard]] std::vector<term_group> form_groups(candidate_list const& list,
                                                  keyword_set const& keywords = {});

/// Highest-scoring group.
[[nodiscard]] std::optional<term_group> select_highest(std::span<term_group const> groups);

/// Group whose score is nearest the mean over all candidate terms; the higher
/// group wins when two are equally near.
[[nodiscard]] std::optional<term_group> select_average(std::span<term_group const> groups);

/// Group holding the most keywords; ties go to the higher score. None when no
/// group holds a keyword.
[[nodiscard]] std::optional<term_group> select_keyword(std::span<term_group const> groups);

[[nodiscard]] std::optional<term_group> select_group(expansion_method method,
                                                     std::span<term_group const> groups);

/// Expansion = group terms minus exact matches of original terms, in group
/// order. An empty expansion is recorded as method none.
[[nodiscard]] expanded_query reformulate(topic const& t, std::optional<term_group> const& group,
                                         std::span<std::string const> query_terms,
                                         expansion_method method);

/// The input topic with its title extended by the expansion terms.
[[nodiscard]] topic expanded_topic(topic const& original, expanded_query const& query);

}  // namespace pqe
