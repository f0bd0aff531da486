#include "pqe/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <unordered_set>

#include "pqe/errors.hpp"

namespace pqe {

namespace {

std::string fixed(double value, int decimals)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

std::string pad_left(std::string s, std::size_t width)
{
    if (s.size() < width) {
        s.insert(0, width - s.size(), ' ');
    }
    return s;
}

std::string pad_right(std::string s, std::size_t width)
{
    if (s.size() < width) {
        s.append(width - s.size(), ' ');
    }
    return s;
}

}  // namespace

topic_eval const* run_report::find(int topic) const
{
    auto it = std::lower_bound(per_topic.begin(), per_topic.end(), topic,
                               [](topic_eval const& e, int t) { return e.topic < t; });
    return it != per_topic.end() && it->topic == topic ? &*it : nullptr;
}

std::optional<topic_eval> average_precision(std::span<run_entry const> entries,
                                            qrels const& judgments, int topic)
{
    auto const relevant = judgments.relevant_count(topic);
    if (relevant == 0) {
        return std::nullopt;
    }
    std::vector<run_entry const*> ordered;
    ordered.reserve(entries.size());
    for (auto const& e : entries) {
        if (e.topic == topic) {
            ordered.push_back(&e);
        }
    }
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](auto const* a, auto const* b) { return a->rank < b->rank; });

    topic_eval eval{topic, 0.0, 0, relevant, 0};
    std::unordered_set<std::string> seen;
    double precision_sum = 0.0;
    for (auto const* e : ordered) {
        if (!seen.insert(e->docno).second) {
            continue;
        }
        ++eval.retrieved;
        auto const grade = judgments.grade(topic, e->docno);
        if (grade && *grade > 0) {
            ++eval.relevant_retrieved;
            precision_sum += static_cast<double>(eval.relevant_retrieved)
                / static_cast<double>(eval.retrieved);
        }
    }
    eval.ap = precision_sum / static_cast<double>(relevant);
    return eval;
}

run_report evaluate_run(std::span<run_entry const> entries, qrels const& judgments)
{
    std::map<int, std::vector<run_entry>> by_topic;
    for (auto const& e : entries) {
        by_topic[e.topic].push_back(e);
    }
    run_report report;
    for (auto const& [topic, topic_entries] : by_topic) {
        auto eval = average_precision(topic_entries, judgments, topic);
        if (!eval) {
            report.skipped.push_back(topic);
            continue;
        }
        report.totals.retrieved += eval->retrieved;
        report.totals.relevant += eval->relevant;
        report.totals.relevant_retrieved += eval->relevant_retrieved;
        report.per_topic.push_back(*eval);
    }
    if (!report.per_topic.empty()) {
        double sum = 0.0;
        for (auto const& e : report.per_topic) {
            sum += e.ap;
        }
        report.map = sum / static_cast<double>(report.per_topic.size());
    }
    return report;
}

run_comparison compare_runs(run_report const& baseline,
                            std::span<std::pair<std::string, run_report> const> variants)
{
    std::set<int> base_topics;
    for (auto const& e : baseline.per_topic) {
        base_topics.insert(e.topic);
    }

    run_comparison out;
    for (auto const& [name, report] : variants) {
        std::set<int> topics;
        for (auto const& e : report.per_topic) {
            topics.insert(e.topic);
        }
        if (topics != base_topics) {
            std::vector<int> diff;
            std::set_symmetric_difference(base_topics.begin(), base_topics.end(), topics.begin(),
                                          topics.end(), std::back_inserter(diff));
            std::string list;
            for (auto t : diff) {
                list += (list.empty() ? "" : ", ") + std::to_string(t);
            }
            throw input_error("run '" + name + "' covers a different topic set than the baseline: "
                              + list);
        }

        method_comparison m;
        m.method = name;
        for (auto const& before : baseline.per_topic) {
            auto const* after = report.find(before.topic);
            topic_delta d{before.topic, before.ap, after->ap, after->ap - before.ap};
            if (d.delta > 0.0) {
                ++m.improved;
            }
            m.per_topic.push_back(d);
        }
        if (!m.per_topic.empty()) {
            m.improved_percent =
                100.0 * static_cast<double>(m.improved) / static_cast<double>(m.per_topic.size());
        }
        m.map_before = baseline.map;
        m.map_after = report.map;
        m.map_delta = report.map - baseline.map;
        m.relative_change_percent = baseline.map > 0.0 ? 100.0 * m.map_delta / baseline.map : 0.0;
        out.methods.push_back(std::move(m));
    }
    return out;
}

void write_summary_table(std::span<std::pair<std::string, run_report> const> columns,
                         std::ostream& out)
{
    constexpr std::size_t label_width = 20;
    std::size_t width = 10;
    for (auto const& [name, _] : columns) {
        width = std::max(width, name.size() + 2);
    }
    out << pad_right("", label_width);
    for (auto const& [name, _] : columns) {
        out << pad_left(name, width);
    }
    out << '\n';
    auto row = [&](std::string const& label, auto value_of) {
        out << pad_right(label, label_width);
        for (auto const& [_, report] : columns) {
            out << pad_left(value_of(report), width);
        }
        out << '\n';
    };
    row("No. of Queries", [](run_report const& r) { return std::to_string(r.topic_count()); });
    row("Retrieved", [](run_report const& r) { return std::to_string(r.totals.retrieved); });
    row("Relevant", [](run_report const& r) { return std::to_string(r.totals.relevant); });
    row("Relevant Retrieved",
        [](run_report const& r) { return std::to_string(r.totals.relevant_retrieved); });
    row("Average Precision", [](run_report const& r) { return fixed(r.map, 4); });
}

void write_run_report(run_report const& report, std::ostream& out)
{
    out << pad_left("topic", 8) << pad_left("ap", 10) << pad_left("retrieved", 11)
        << pad_left("relevant", 10) << pad_left("rel_ret", 9) << '\n';
    for (auto const& e : report.per_topic) {
        out << pad_left(std::to_string(e.topic), 8) << pad_left(fixed(e.ap, 4), 10)
            << pad_left(std::to_string(e.retrieved), 11) << pad_left(std::to_string(e.relevant), 10)
            << pad_left(std::to_string(e.relevant_retrieved), 9) << '\n';
    }
    out << pad_left("all", 8) << pad_left(fixed(report.map, 4), 10)
        << pad_left(std::to_string(report.totals.retrieved), 11)
        << pad_left(std::to_string(report.totals.relevant), 10)
        << pad_left(std::to_string(report.totals.relevant_retrieved), 9) << '\n';
    for (auto t : report.skipped) {
        out << "# skipped topic " << t << ": no relevant judgments\n";
    }
}

void write_comparison_table(run_comparison const& comparison, std::ostream& out)
{
    out << pad_right("method", 10) << pad_left("improved", 10) << pad_left("of", 6)
        << pad_left("percent", 10) << pad_left("map_before", 12) << pad_left("map_after", 12)
        << pad_left("delta", 10) << pad_left("relative%", 11) << '\n';
    for (auto const& m : comparison.methods) {
        out << pad_right(m.method, 10) << pad_left(std::to_string(m.improved), 10)
            << pad_left(std::to_string(m.per_topic.size()), 6)
            << pad_left(fixed(m.improved_percent, 2), 10) << pad_left(fixed(m.map_before, 4), 12)
            << pad_left(fixed(m.map_after, 4), 12) << pad_left(fixed(m.map_delta, 4), 10)
            << pad_left(fixed(m.relative_change_percent, 2), 11) << '\n';
    }
}

void write_comparison_csv(run_comparison const& comparison, std::ostream& out, bool header)
{
    if (header) {
        out << "topic,method,ap_before,ap_after,delta\n";
    }
    for (auto const& m : comparison.methods) {
        for (auto const& d : m.per_topic) {
            out << d.topic << ',' << m.method << ',' << fixed(d.ap_before, 4) << ','
                << fixed(d.ap_after, 4) << ',' << fixed(d.delta, 4) << '\n';
        }
    }
}

}  // namespace pqe
