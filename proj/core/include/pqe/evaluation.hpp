#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pqe/trec_io.hpp"

namespace pqe {

struct topic_eval {
    int topic = 0;
    double ap = 0.0;
    std::size_t retrieved = 0;
    std::size_t relevant = 0;
    std::size_t relevant_retrieved = 0;

    friend bool operator==(topic_eval const&, topic_eval const&) = default;
};

struct eval_totals {
    std::size_t retrieved = 0;
    std::size_t relevant = 0;
    std::size_t relevant_retrieved = 0;

    friend bool operator==(eval_totals const&, eval_totals const&) = default;
};

struct run_report {
    std::vector<topic_eval> per_topic;  ///< ascending topic number
    double map = 0.0;
    eval_totals totals;
    std::vector<int> skipped;  ///< run topics without relevant judgments

    [[nodiscard]] std::size_t topic_count() const noexcept { return per_topic.size(); }
    [[nodiscard]] topic_eval const* find(int topic) const;

    friend bool operator==(run_report const&, run_report const&) = default;
};

/// Non-interpolated average precision of one topic's entries, ordered by rank.
/// Grades above 0 are relevant. Returns nullopt (topic skipped) when the qrels
/// hold no relevant document for the topic. Repeated DOCNOs count once.
[[nodiscard]] std::optional<topic_eval> average_precision(std::span<run_entry const> entries,
                                                          qrels const& judgments, int topic);

/// Per-topic AP in topic order, MAP over evaluated topics and summed counts.
[[nodiscard]] run_report evaluate_run(std::span<run_entry const> entries, qrels const& judgments);

struct topic_delta {
    int topic = 0;
    double ap_before = 0.0;
    double ap_after = 0.0;
    double delta = 0.0;
};

struct method_comparison {
    std::string method;
    std::vector<topic_delta> per_topic;
    std::size_t improved = 0;        ///< topics with delta > 0
    double improved_percent = 0.0;   ///< improved / topics * 100
    double map_before = 0.0;
    double map_after = 0.0;
    double map_delta = 0.0;
    double relative_change_percent = 0.0;  ///< (after - before) / before * 100
};

struct run_comparison {
    std::vector<method_comparison> methods;
};

/// Throws input_error listing the symmetric difference when a variant was
/// evaluated on a different topic set than the baseline.
[[nodiscard]] run_comparison compare_runs(
    run_report const& baseline, std::span<std::pair<std::string, run_report> const> variants);

/// Aligned table with one column per run: queries, retrieved, relevant,
/// relevant retrieved, MAP.
void write_summary_table(std::span<std::pair<std::string, run_report> const> columns,
                         std::ostream& out);

/// Per-topic listing of one report followed by its totals.
void write_run_report(run_report const& report, std::ostream& out);

/// Per-method improvement counts and MAP change.
void write_comparison_table(run_comparison const& comparison, std::ostream& out);

/// "topic,method,ap_before,ap_after,delta" with a header line.
void write_comparison_csv(run_comparison const& comparison, std::ostream& out,
                          bool header = true);

}  // namespace pqe
