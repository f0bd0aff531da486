#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pqe/evaluation.hpp"
#include "pqe/expansion.hpp"
#include "pqe/index.hpp"
#include "pqe/partition.hpp"
#include "pqe/retrieval.hpp"
#include "pqe/term_scoring.hpp"
#include "pqe/text.hpp"
#include "pqe/trec_io.hpp"

namespace pqe {

struct run_config {
    std::filesystem::path corpus;
    std::filesystem::path index;  ///< persisted collection; used instead of corpus when set
    std::filesystem::path topics;
    std::filesystem::path qrels;
    std::filesystem::path stopwords;
    std::filesystem::path output_dir = "pqe-out";
    std::string tag = "RUN";

    std::size_t feedback_depth = 10;
    std::size_t terms_per_doc = 5;
    std::size_t run_depth = 1000;
    ranking_params ranking;
    std::vector<expansion_method> methods{expansion_method::highest, expansion_method::average,
                                          expansion_method::keyword};
    peak_rule rule = peak_rule::decile_total;
    std::size_t threads = 0;
    bool dump_partitions = false;

    /// Throws input_error for missing paths, zero depths or a bad method list.
    void validate() const;
};

/// Writes every setting as "key = value" lines prefixed by `prefix`.
void write_config(run_config const& config, std::ostream& out, std::string const& prefix = "# ");

/// Everything the feedback stage produced for one topic.
struct topic_expansion {
    int topic = 0;
    std::vector<std::string> query_terms;
    std::vector<std::string> feedback_docs;
    candidate_list candidates;
    std::vector<term_group> groups;
    std::vector<partition> partitions;  ///< only filled when dumping partitions
};

struct method_outcome {
    expansion_method method = expansion_method::none;
    std::vector<expanded_query> queries;  ///< one per topic, topic-file order
    std::vector<run_entry> run;
    run_report report;
};

struct pipeline_result {
    std::vector<topic> topics;
    std::vector<run_entry> baseline_run;
    run_report baseline_report;
    std::vector<topic_expansion> expansions;  ///< topic-file order
    std::vector<method_outcome> methods;      ///< config order
    run_comparison comparison;
    std::vector<std::string> warnings;
};

/// Streams a TREC collection, tokenizing documents in parallel batches.
[[nodiscard]] collection load_collection(std::filesystem::path const& corpus,
                                         lang_profile const& profile, std::size_t threads = 0);

/// Runs baseline retrieval, feedback expansion for each configured method,
/// re-retrieval and evaluation in memory. Per-topic degeneracies become
/// warnings and the topic keeps its unexpanded query.
[[nodiscard]] pipeline_result run_experiment(collection const& coll, std::span<topic const> topics,
                                             lang_profile const& profile, qrels const& judgments,
                                             run_config const& config);

/// Writes run, topic, keyword, report and comparison files under
/// config.output_dir. Returns the paths written, in write order.
std::vector<std::filesystem::path> write_artifacts(pipeline_result const& result,
                                                   run_config const& config);

/// Loads inputs, runs the experiment and writes all artifacts.
pipeline_result run_pipeline(run_config const& config);

}  // namespace pqe
