#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "pqe/evaluation.hpp"
#include "pqe/expansion.hpp"
#include "pqe/index.hpp"
#include "pqe/partition.hpp"
#include "pqe/retrieval.hpp"
#include "pqe/term_scoring.hpp"

using pqe::test::draw;

namespace {

pqe::keyword_set to_keyword_set(std::set<std::string> const& s)
{
    return {s.begin(), s.end()};
}

pqe::candidate_list random_candidates(std::mt19937_64& rng, std::size_t n)
{
    // few distinct score levels so that groups form
    static double const levels[] = {1.0, std::log10(3.0), std::log10(2.0), 0.25, 0.1, 0.0};
    pqe::term_scores scores;
    for (std::size_t i = 0; i < n; ++i) {
        scores["t" + std::to_string(draw(rng, 0, 3 * n))] = levels[draw(rng, 0, std::size(levels) - 1)];
    }
    std::vector<std::vector<pqe::candidate_term>> one{pqe::top_n_terms(scores, scores.size(), "d")};
    return pqe::merge_candidates(one, 1);
}

std::set<std::string> term_set(std::optional<pqe::term_group> const& g)
{
    return g ? std::set<std::string>(g->terms.begin(), g->terms.end()) : std::set<std::string>{};
}

}  // namespace

TEST(Property, NormalizeIsIdempotent)
{
    std::vector<std::string> const pieces{"A", "e", "\xCC\x81", "क", "\xE0\xA4\xBC", "\xE0\xA5\x98", "ा", "ß", "İ", "Ω", "\xE2\x80\x8D"};
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        std::string s;
        for (auto n = draw(rng, 1, 6); n > 0; --n) {
            s += pieces[draw(rng, 0, pieces.size() - 1)];
        }
        auto const once = pqe::normalize(s);
        EXPECT_EQ(pqe::normalize(once), once) << s;
    }
}

TEST(Property, PartitionsCoverStreamExactly)
{
    std::mt19937_64 rng(21);
    for (int i = 0; i < 300; ++i) {
        auto const len = draw(rng, 1, 150);
        auto const rs = pqe::test::make_random_stream(rng, len, 12, 3, draw(rng, 1, len));
        auto const kw = to_keyword_set(rs.keywords);
        pqe::token_stream const s{rs.tokens};
        auto const k = static_cast<std::uint32_t>(draw(rng, 1, 10));
        auto const parts = pqe::equifrequency_partition(s, kw, k);
        ASSERT_FALSE(parts.empty());
        EXPECT_EQ(parts.front().start, 0u);
        EXPECT_EQ(parts.back().end, s.size() - 1);
        std::uint32_t total = 0;
        for (std::size_t p = 0; p < parts.size(); ++p) {
            if (p > 0) {
                EXPECT_EQ(parts[p].start, parts[p - 1].end + 1);
            }
            if (p + 1 < parts.size()) {
                EXPECT_EQ(parts[p].keyword_count, k);
            } else {
                EXPECT_GE(parts[p].keyword_count, 1u);
                EXPECT_LE(parts[p].keyword_count, k);
            }
            EXPECT_EQ(parts[p], pqe::make_partition(s, kw, parts[p].start, parts[p].end));
            total += parts[p].keyword_count;
        }
        auto const prof = pqe::equiwidth_deciles(s, kw);
        EXPECT_EQ(total, prof.total_keyword_freq);
    }
}

TEST(Property, PartitionCountShrinksAsKGrows)
{
    std::mt19937_64 rng(31);
    for (int i = 0; i < 200; ++i) {
        auto const len = draw(rng, 5, 200);
        auto const rs = pqe::test::make_random_stream(rng, len, 20, 2, draw(rng, 1, len / 2 + 1));
        auto const kw = to_keyword_set(rs.keywords);
        pqe::token_stream const s{rs.tokens};
        std::size_t previous = s.size() + 1;
        for (std::uint32_t k = 1; k <= 12; ++k) {
            auto const n = pqe::equifrequency_partition(s, kw, k).size();
            EXPECT_LE(n, previous);
            previous = n;
        }
    }
}

TEST(Property, DecilesCoverStream)
{
    std::mt19937_64 rng(41);
    for (int i = 0; i < 200; ++i) {
        auto const len = draw(rng, 1, 300);
        auto const rs = pqe::test::make_random_stream(rng, len, 20, 2, draw(rng, 0, len));
        pqe::token_stream const s{rs.tokens};
        auto const prof = pqe::equiwidth_deciles(s, to_keyword_set(rs.keywords));
        ASSERT_EQ(prof.bins.size(), std::min<std::size_t>(len, 10));
        std::size_t lo = prof.bins.front().length();
        std::size_t hi = lo;
        std::size_t next = 0;
        for (auto const& b : prof.bins) {
            EXPECT_EQ(b.start, next);
            next = b.end + 1;
            lo = std::min(lo, b.length());
            hi = std::max(hi, b.length());
        }
        EXPECT_EQ(next, len);
        EXPECT_LE(hi - lo, 1u);
        EXPECT_TRUE(std::is_sorted(prof.bins.rbegin(), prof.bins.rend(),
                                   [](auto const& a, auto const& b) { return a.length() < b.length(); }));
    }
}

TEST(Property, ScoresBoundedByLogOfPartitionCount)
{
    std::mt19937_64 rng(51);
    for (int i = 0; i < 100; ++i) {
        auto const len = draw(rng, 1, 200);
        auto const rs = pqe::test::make_random_stream(rng, len, 30, 3, draw(rng, 1, len));
        auto const kw = to_keyword_set(rs.keywords);
        pqe::token_stream const s{rs.tokens};
        auto const parts = pqe::equifrequency_partition(s, kw, static_cast<std::uint32_t>(draw(rng, 1, 5)));
        auto const bound = std::log10(static_cast<double>(parts.size()));
        for (auto const& [t, v] : pqe::score_partitions(parts)) {
            EXPECT_GE(v, 0.0) << t;
            EXPECT_LE(v, bound + 1e-15) << t;
        }
    }
}

TEST(Property, GroupsPartitionCandidateList)
{
    std::mt19937_64 rng(61);
    for (int i = 0; i < 300; ++i) {
        auto const list = random_candidates(rng, draw(rng, 0, 30));
        pqe::keyword_set kw;
        for (auto const& c : list.entries) {
            if (draw(rng, 0, 4) == 0) {
                kw.insert(c.term);
            }
        }
        auto const groups = pqe::form_groups(list, kw);
        std::vector<std::string> concat;
        std::size_t keywords = 0;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            concat.insert(concat.end(), groups[g].terms.begin(), groups[g].terms.end());
            keywords += groups[g].keyword_count;
            if (g > 0) {
                EXPECT_GT(groups[g - 1].score, groups[g].score);
            }
        }
        std::vector<std::string> terms;
        std::size_t listed_keywords = 0;
        for (auto const& c : list.entries) {
            terms.push_back(c.term);
            listed_keywords += kw.count(c.term);
        }
        EXPECT_EQ(concat, terms);
        EXPECT_EQ(keywords, listed_keywords);

        auto const highest = pqe::select_highest(groups);
        for (auto const& g : groups) {
            EXPECT_GE(highest->score, g.score);
        }
        EXPECT_EQ(pqe::select_keyword(groups).has_value(), listed_keywords > 0);
    }
}

TEST(Property, SelectionsInvariantUnderScoreScaling)
{
    std::mt19937_64 rng(71);
    for (int i = 0; i < 200; ++i) {
        auto const list = random_candidates(rng, draw(rng, 1, 25));
        pqe::keyword_set kw;
        for (auto const& c : list.entries) {
            if (draw(rng, 0, 3) == 0) {
                kw.insert(c.term);
            }
        }
        double const factor = 0.01 * static_cast<double>(draw(rng, 1, 1000));
        auto scaled = list;
        for (auto& c : scaled.entries) {
            c.score *= factor;
        }
        auto const a = pqe::form_groups(list, kw);
        auto const b = pqe::form_groups(scaled, kw);
        for (auto m : {pqe::expansion_method::highest, pqe::expansion_method::average, pqe::expansion_method::keyword}) {
            EXPECT_EQ(term_set(pqe::select_group(m, a)), term_set(pqe::select_group(m, b)))
                << pqe::to_string(m) << " x" << factor;
        }
    }
}

TEST(Property, ReformulationKeepsOriginalsAndStaysInGroup)
{
    std::mt19937_64 rng(81);
    for (int i = 0; i < 200; ++i) {
        std::vector<std::string> query;
        for (auto n = draw(rng, 1, 4); n > 0; --n) {
            query.push_back("t" + std::to_string(draw(rng, 0, 15)));
        }
        pqe::term_group g;
        for (auto n = draw(rng, 0, 6); n > 0; --n) {
            g.terms.push_back("t" + std::to_string(draw(rng, 0, 15)));
        }
        std::sort(g.terms.begin(), g.terms.end());
        g.terms.erase(std::unique(g.terms.begin(), g.terms.end()), g.terms.end());
        auto const e = pqe::reformulate({1, "x"}, g, query, pqe::expansion_method::average);
        EXPECT_EQ(e.original_terms, query);
        for (auto const& t : e.expansion_terms) {
            EXPECT_TRUE(std::count(g.terms.begin(), g.terms.end(), t) == 1);
            EXPECT_TRUE(std::count(query.begin(), query.end(), t) == 0);
        }
        EXPECT_EQ(e.method == pqe::expansion_method::none, e.expansion_terms.empty());
    }
}

TEST(Property, IndexRoundTripAndRetrievalOrder)
{
    std::mt19937_64 rng(91);
    for (int i = 0; i < 30; ++i) {
        std::vector<std::pair<std::string, pqe::token_stream>> docs;
        auto const n = draw(rng, 1, 40);
        for (std::size_t d = 0; d < n; ++d) {
            auto rs = pqe::test::make_random_stream(rng, draw(rng, 0, 60), 25, 1, 0);
            docs.emplace_back("doc" + std::to_string(d), pqe::token_stream{rs.tokens});
        }
        auto const coll = pqe::build_collection(docs);
        EXPECT_NO_THROW(coll.index().check_invariants());
        std::stringstream buf;
        coll.save(buf);
        EXPECT_EQ(pqe::collection::load(buf), coll);

        std::vector<std::string> terms{"w" + std::to_string(draw(rng, 0, 24)), "w" + std::to_string(draw(rng, 0, 24))};
        auto const r = pqe::retrieve(coll.index(), pqe::make_query(terms), 1000, {});
        for (std::size_t j = 1; j < r.entries.size(); ++j) {
            auto const& a = r.entries[j - 1];
            auto const& b = r.entries[j];
            EXPECT_TRUE(a.score > b.score || (a.score == b.score && a.docno < b.docno));
        }
        auto const run = pqe::to_run_entries(r, "P");
        EXPECT_NO_THROW(pqe::validate_run(run));
        pqe::qrels q;
        for (std::size_t d = 0; d < n; d += 3) {
            q.add(0, "doc" + std::to_string(d), 1);
        }
        auto const rep = pqe::evaluate_run(run, q);
        for (auto const& t : rep.per_topic) {
            EXPECT_GE(t.ap, 0.0);
            EXPECT_LE(t.ap, 1.0);
            EXPECT_LE(t.relevant_retrieved, t.relevant);
        }
    }
}
