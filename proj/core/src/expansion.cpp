#include "pqe/expansion.hpp"

#include <algorithm>
#include <cmath>

#include "pqe/errors.hpp"

namespace pqe {

std::string_view to_string(expansion_method method) noexcept
{
    switch (method) {
    case expansion_method::highest: return "highest";
    case expansion_method::average: return "average";
    case expansion_method::keyword: return "keyword";
    case expansion_method::none: return "none";
    }
    return "none";
}

expansion_method parse_expansion_method(std::string_view name)
{
    if (name == "highest") {
        return expansion_method::highest;
    }
    if (name == "average") {
        return expansion_method::average;
    }
    if (name == "keyword") {
        return expansion_method::keyword;
    }
    throw input_error("unknown expansion method '" + std::string(name) + "'");
}

std::vector<std::string> expanded_query::all_terms() const
{
    auto terms = original_terms;
    terms.insert(terms.end(), expansion_terms.begin(), expansion_terms.end());
    return terms;
}

bool same_score(double a, double b) noexcept
{
    return std::abs(a - b) <= group_tie_tolerance * std::max(std::abs(a), std::abs(b));
}

std::vector<term_group> form_groups(candidate_list const& list, keyword_set const& keywords)
{
    std::vector<term_group> groups;
    for (auto const& c : list.entries) {
        if (groups.empty() || !same_score(groups.back().score, c.score)) {
            groups.push_back({c.score, 0.0, {}, 0});
        }
        auto& g = groups.back();
        g.terms.push_back(c.term);
        g.score_sum += c.score;
        if (keywords.contains(c.term)) {
            ++g.keyword_count;
        }
    }
    return groups;
}

std::optional<term_group> select_highest(std::span<term_group const> groups)
{
    if (groups.empty()) {
        return std::nullopt;
    }
    return groups.front();
}

std::optional<term_group> select_average(std::span<term_group const> groups)
{
    if (groups.empty()) {
        return std::nullopt;
    }
    double sum = 0.0;
    std::size_t count = 0;
    for (auto const& g : groups) {
        sum += g.score_sum;
        count += g.size();
    }
    double const mean = sum / static_cast<double>(count);

    // Groups arrive in descending score order, so keeping the first of two
    // equidistant groups prefers the higher score.
    std::size_t best = 0;
    double best_distance = std::abs(groups[0].score - mean);
    for (std::size_t i = 1; i < groups.size(); ++i) {
        double const d = std::abs(groups[i].score - mean);
        if (d < best_distance && !same_score(d, best_distance)) {
            best = i;
            best_distance = d;
        }
    }
    return groups[best];
}

std::optional<term_group> select_keyword(std::span<term_group const> groups)
{
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        if (groups[i].keyword_count == 0) {
            continue;
        }
        if (!best || groups[i].keyword_count > groups[*best].keyword_count) {
            best = i;
        }
    }
    if (!best) {
        return std::nullopt;
    }
    return groups[*best];
}

std::optional<term_group> select_group(expansion_method method, std::span<term_group const> groups)
{
    switch (method) {
    case expansion_method::highest: return select_highest(groups);
    case expansion_method::average: return select_average(groups);
    case expansion_method::keyword: return select_keyword(groups);
    case expansion_method::none: return std::nullopt;
    }
    return std::nullopt;
}

expanded_query reformulate(topic const& t, std::optional<term_group> const& group,
                           std::span<std::string const> query_terms, expansion_method method)
{
    expanded_query q;
    q.topic = t.number;
    q.original_terms.assign(query_terms.begin(), query_terms.end());
    if (group && method != expansion_method::none) {
        for (auto const& term : group->terms) {
            if (std::find(query_terms.begin(), query_terms.end(), term) == query_terms.end()) {
                q.expansion_terms.push_back(term);
            }
        }
    }
    if (q.expansion_terms.empty()) {
        q.method = expansion_method::none;
    } else {
        q.method = method;
        q.group_score = group->score;
    }
    return q;
}

topic expanded_topic(topic const& original, expanded_query const& query)
{
    topic out = original;
    for (auto const& term : query.expansion_terms) {
        out.title += ' ';
        out.title += term;
    }
    return out;
}

}  // namespace pqe
