#include <gtest/gtest.h>

#include "pqe/errors.hpp"
#include "pqe/expansion.hpp"

namespace {

pqe::candidate_list list_of(std::vector<std::pair<std::string, double>> const& items)
{
    pqe::candidate_list l{1, {}};
    for (auto const& [t, s] : items) {
        l.entries.push_back({t, s, "d"});
    }
    return l;
}

pqe::term_group group(double score, std::vector<std::string> terms, std::size_t keywords = 0)
{
    pqe::term_group g;
    g.score = score;
    g.score_sum = score * static_cast<double>(terms.size());
    g.terms = std::move(terms);
    g.keyword_count = keywords;
    return g;
}

}  // namespace

TEST(FormGroups, RunLengthOfEqualScores)
{
    auto const groups = pqe::form_groups(
        list_of({{"a", 1.0}, {"b", 1.0}, {"c", 0.602}, {"d", 0.477}, {"e", 0.477}}), {"c", "e"});
    ASSERT_EQ(groups.size(), 3u);
    EXPECT_EQ(groups[0].terms, (std::vector<std::string>{"a", "b"}));
    EXPECT_DOUBLE_EQ(groups[0].score, 1.0);
    EXPECT_EQ(groups[0].keyword_count, 0u);
    EXPECT_EQ(groups[1].size(), 1u);
    EXPECT_EQ(groups[1].keyword_count, 1u);
    EXPECT_EQ(groups[2].terms, (std::vector<std::string>{"d", "e"}));
    EXPECT_DOUBLE_EQ(groups[2].score_sum, 0.954);
}

TEST(FormGroups, DistinctAndEmpty)
{
    EXPECT_EQ(pqe::form_groups(list_of({{"a", 0.3}, {"b", 0.2}, {"c", 0.1}})).size(), 3u);
    EXPECT_TRUE(pqe::form_groups(list_of({})).empty());
}

TEST(FormGroups, ToleranceIsRelative)
{
    EXPECT_TRUE(pqe::same_score(0.47712125471966244, 0.47712125471966244 * (1 + 1e-12)));
    EXPECT_FALSE(pqe::same_score(0.4771, 0.4772));
    EXPECT_TRUE(pqe::same_score(0.0, 0.0));
    auto const g = pqe::form_groups(list_of({{"a", 3.0 * (0.1 + 0.2)}, {"b", 0.9}}));
    EXPECT_EQ(g.size(), 1u);
}

TEST(SelectHighest, FirstGroup)
{
    std::vector<pqe::term_group> const gs{group(1.0, {"a"}), group(0.477, {"b", "c"}), group(0.397, {"d"})};
    EXPECT_EQ(pqe::select_highest(gs), gs[0]);
    EXPECT_EQ(pqe::select_highest(std::span(gs).subspan(1, 1)), gs[1]);
    EXPECT_FALSE(pqe::select_highest({}));
}

TEST(SelectAverage, TermWeightedMean)
{
    // mean = (1.0 + 3 * 0.477 + 0.1) / 5 = 0.5062, nearest group 0.477
    std::vector<pqe::term_group> const gs{group(1.0, {"a"}), group(0.477, {"b", "c", "d"}), group(0.1, {"e"})};
    EXPECT_EQ(pqe::select_average(gs), gs[1]);
}

TEST(SelectAverage, SingleGroupAndTie)
{
    std::vector<pqe::term_group> const one{group(0.3, {"a", "b"})};
    EXPECT_EQ(pqe::select_average(one), one[0]);
    // mean 0.5, both groups 0.25 away
    std::vector<pqe::term_group> const tie{group(0.75, {"a"}), group(0.25, {"b"})};
    EXPECT_EQ(pqe::select_average(tie), tie[0]);
    EXPECT_FALSE(pqe::select_average({}));
}

TEST(SelectKeyword, MostKeywords)
{
    std::vector<pqe::term_group> const gs{group(0.9, {"a"}, 0), group(0.5, {"b", "c"}, 2), group(0.2, {"d"}, 1)};
    EXPECT_EQ(pqe::select_keyword(gs), gs[1]);
}

TEST(SelectKeyword, OneKeywordPerGroupFallsBackToHighestScore)
{
    std::vector<pqe::term_group> const gs{group(0.7, {"a"}, 1), group(0.3, {"b"}, 1)};
    EXPECT_EQ(pqe::select_keyword(gs), gs[0]);
    std::vector<pqe::term_group> const later{group(0.9, {"x"}, 0), group(0.7, {"a"}, 1), group(0.3, {"b"}, 1)};
    EXPECT_EQ(pqe::select_keyword(later), later[1]);
}

TEST(SelectKeyword, NoKeywordsMeansNoExpansion)
{
    std::vector<pqe::term_group> const gs{group(0.7, {"a"}, 0), group(0.3, {"b"}, 0)};
    EXPECT_FALSE(pqe::select_keyword(gs));
}

TEST(SelectGroup, Dispatch)
{
    std::vector<pqe::term_group> const gs{group(1.0, {"a"}, 0), group(0.477, {"b", "c", "d"}, 1),
                                          group(0.1, {"e"}, 0)};
    EXPECT_EQ(pqe::select_group(pqe::expansion_method::highest, gs), gs[0]);
    EXPECT_EQ(pqe::select_group(pqe::expansion_method::average, gs), gs[1]);
    EXPECT_EQ(pqe::select_group(pqe::expansion_method::keyword, gs), gs[1]);
    EXPECT_FALSE(pqe::select_group(pqe::expansion_method::none, gs));
}

TEST(Reformulate, DevanagariExpansion)
{
    pqe::topic const t{169, "नक्सली हमला"};
    std::vector<std::string> const q{"नक्सली", "हमला"};
    auto const e = pqe::reformulate(t, group(0.4771, {"नक्सलियों"}, 0), q, pqe::expansion_method::keyword);
    EXPECT_EQ(e.expansion_terms, (std::vector<std::string>{"नक्सलियों"}));
    EXPECT_EQ(e.method, pqe::expansion_method::keyword);
    EXPECT_EQ(e.all_terms(), (std::vector<std::string>{"नक्सली", "हमला", "नक्सलियों"}));
    ASSERT_TRUE(e.group_score);
    EXPECT_DOUBLE_EQ(*e.group_score, 0.4771);
    EXPECT_EQ(pqe::expanded_topic(t, e).title, "नक्सली हमला नक्सलियों");
}

TEST(Reformulate, DropsOriginalTermsAndHandlesNone)
{
    pqe::topic const t{1, "somali pirates"};
    std::vector<std::string> const q{"somali", "pirates"};
    auto const e = pqe::reformulate(t, group(0.5, {"piracy", "somali", "gulf"}, 1), q,
                                    pqe::expansion_method::keyword);
    EXPECT_EQ(e.expansion_terms, (std::vector<std::string>{"piracy", "gulf"}));

    auto const only_original =
        pqe::reformulate(t, group(0.5, {"pirates"}, 1), q, pqe::expansion_method::keyword);
    EXPECT_EQ(only_original.method, pqe::expansion_method::none);
    EXPECT_TRUE(only_original.expansion_terms.empty());

    auto const none = pqe::reformulate(t, std::nullopt, q, pqe::expansion_method::average);
    EXPECT_EQ(none.method, pqe::expansion_method::none);
    EXPECT_EQ(none.original_terms, q);
    EXPECT_FALSE(none.group_score);
    EXPECT_EQ(pqe::expanded_topic(t, none), t);
}

TEST(Methods, Names)
{
    EXPECT_EQ(pqe::parse_expansion_method("highest"), pqe::expansion_method::highest);
    EXPECT_EQ(pqe::parse_expansion_method("average"), pqe::expansion_method::average);
    EXPECT_EQ(pqe::parse_expansion_method("keyword"), pqe::expansion_method::keyword);
    EXPECT_THROW((void)pqe::parse_expansion_method("none"), pqe::input_error);
    EXPECT_EQ(pqe::to_string(pqe::expansion_method::none), "none");
}
