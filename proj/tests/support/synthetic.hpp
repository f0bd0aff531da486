#pragma once

// Synthetic two-script collection with planted topical terms.
//
// Per topic (query "q1 q2", five planted terms):
//   6 core relevant docs   200 filtered tokens; q1 x4 and q2 x2, with four
//                          keywords packed into one decile around a block
//                          holding four planted terms twice each
//   4 sparse relevant docs 150 tokens; q1 once plus three planted terms
//   4 distractors          80 tokens; q1 three times, nothing else topical
// plus 60 background docs. Topics 1-5 use Latin-script pseudo-words, 6-10
// Devanagari. Raw text carries stopwords and punctuation between tokens so
// the tokenizer has work to do.

#include <cstdint>
#include <string>
#include <vector>

#include "pqe/text.hpp"
#include "pqe/trec_io.hpp"

namespace pqe::test {

struct synthetic_topic {
    topic query;
    std::string q1;
    std::string q2;
    std::vector<std::string> planted;
    std::vector<std::string> relevant;
};

struct synthetic_corpus {
    std::vector<document> docs;
    std::vector<synthetic_topic> topics;
    qrels judgments;

    [[nodiscard]] std::vector<topic> topic_list() const;
};

synthetic_corpus make_synthetic_corpus(lang_profile const& profile, std::uint64_t seed = 2012);

/// TREC SGML rendering of `docs` (DOCNO + TEXT).
std::string to_trec(std::vector<document> const& docs);

}  // namespace pqe::test
