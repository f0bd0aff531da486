#include "pqe/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <set>
#include <stdexcept>
#include <utility>

#include "pqe/errors.hpp"
#include "pqe/parallel.hpp"

namespace pqe {

namespace {

constexpr std::size_t tokenize_batch = 512;

void require_file(std::filesystem::path const& path, char const* what)
{
    if (path.empty()) {
        throw input_error(std::string("missing ") + what + " path");
    }
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
        throw input_error(std::string(what) + " not found: " + path.string());
    }
}

std::string fixed4(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

struct topic_work {
    topic_expansion expansion;
    std::vector<run_entry> baseline;
    std::vector<expanded_query> queries;          // per method
    std::vector<std::vector<run_entry>> variants;  // per method
    std::vector<std::string> warnings;
};

topic_work process_topic(collection const& coll, topic const& t, lang_profile const& profile,
                         run_config const& config)
{
    topic_work work;
    work.expansion.topic = t.number;
    work.expansion.candidates.topic = t.number;
    auto const query_terms = tokenize(t.title, profile).tokens;
    work.expansion.query_terms = query_terms;
    auto const warn = [&](std::string msg) {
        work.warnings.push_back("topic " + std::to_string(t.number) + ": " + std::move(msg));
    };

    auto unexpanded = [&] {
        for (auto method : config.methods) {
            (void)method;
            work.queries.push_back(reformulate(t, std::nullopt, query_terms, expansion_method::none));
            work.variants.push_back(work.baseline);
        }
    };

    ranked_list baseline;
    try {
        baseline = retrieve(coll.index(), make_query(query_terms), config.run_depth, config.ranking,
                            t.number);
    } catch (empty_query_error const&) {
        warn("empty query after stopword removal; topic not retrieved");
        unexpanded();
        return work;
    }
    work.baseline = to_run_entries(baseline, config.tag);

    work.expansion.feedback_docs = feedback_set(baseline, config.feedback_depth);
    if (work.expansion.feedback_docs.empty()) {
        warn("no feedback documents; query left unexpanded");
        unexpanded();
        return work;
    }

    keyword_set const keywords(query_terms.begin(), query_terms.end());
    candidate_options const options{config.terms_per_doc, config.rule};
    std::vector<std::vector<candidate_term>> per_doc;
    for (auto const& docno : work.expansion.feedback_docs) {
        try {
            std::vector<partition> parts;
            per_doc.push_back(document_candidates(coll.tokens(docno), keywords, docno, options,
                                                  config.dump_partitions ? &parts : nullptr));
            work.expansion.partitions.insert(work.expansion.partitions.end(),
                                             std::make_move_iterator(parts.begin()),
                                             std::make_move_iterator(parts.end()));
        } catch (no_keyword_error const&) {
            warn("feedback document " + docno + " holds no query term; skipped");
        } catch (degenerate_document_error const&) {
            warn("feedback document " + docno + " is empty; skipped");
        }
    }
    work.expansion.candidates = merge_candidates(per_doc, t.number);
    work.expansion.groups = form_groups(work.expansion.candidates, keywords);

    for (auto method : config.methods) {
        auto query = reformulate(t, select_group(method, work.expansion.groups), query_terms, method);
        if (query.method == expansion_method::none) {
            warn(std::string(to_string(method)) + ": no expansion terms; query left unexpanded");
            work.variants.push_back(work.baseline);
        } else {
            auto ranked = retrieve(coll.index(), make_query(query.all_terms()), config.run_depth,
                                   config.ranking, t.number);
            work.variants.push_back(to_run_entries(ranked, config.tag));
        }
        work.queries.push_back(std::move(query));
    }
    return work;
}

}  // namespace

void run_config::validate() const
{
    if (index.empty()) {
        require_file(corpus, "corpus");
    } else {
        require_file(index, "index");
    }
    require_file(topics, "topics");
    require_file(qrels, "qrels");
    require_file(stopwords, "stopwords");
    if (feedback_depth == 0 || terms_per_doc == 0 || run_depth == 0) {
        throw input_error("feedback depth, terms per document and run depth must be at least 1");
    }
    if (methods.empty()) {
        throw input_error("no expansion method selected");
    }
    std::set<expansion_method> unique(methods.begin(), methods.end());
    if (unique.size() != methods.size() || unique.contains(expansion_method::none)) {
        throw input_error("expansion methods must be distinct members of highest/average/keyword");
    }
    if (tag.empty() || tag.find_first_of(" \t\n") != std::string::npos) {
        throw input_error("run tag must be a non-empty word");
    }
    if (ranking.k1 < 0.0 || ranking.b < 0.0 || ranking.b > 1.0) {
        throw input_error("ranking parameters out of range (k1 >= 0, 0 <= b <= 1)");
    }
}

void write_config(run_config const& config, std::ostream& out, std::string const& prefix)
{
    std::string methods;
    for (auto m : config.methods) {
        methods += (methods.empty() ? "" : ",") + std::string(to_string(m));
    }
    auto line = [&](char const* key, auto const& value) {
        out << prefix << key << " = " << value << '\n';
    };
    line("corpus", config.corpus.string());
    line("index", config.index.string());
    line("topics", config.topics.string());
    line("qrels", config.qrels.string());
    line("stopwords", config.stopwords.string());
    line("tag", config.tag);
    line("feedback_depth", config.feedback_depth);
    line("terms_per_doc", config.terms_per_doc);
    line("run_depth", config.run_depth);
    line("model", to_string(config.ranking.model));
    line("k1", fixed4(config.ranking.k1));
    line("b", fixed4(config.ranking.b));
    line("methods", methods);
    line("peak_rule", to_string(config.rule));
    line("dump_partitions", config.dump_partitions ? "true" : "false");
}

collection load_collection(std::filesystem::path const& corpus, lang_profile const& profile,
                           std::size_t threads)
{
    auto in = open_input(corpus);
    trec_doc_reader reader(in, corpus.string());
    collection_builder builder;

    std::vector<document> batch;
    std::vector<token_stream> streams;
    auto flush = [&] {
        streams.assign(batch.size(), {});
        parallel_for(batch.size(), threads, [&](std::size_t i) {
            try {
                streams[i] = tokenize(batch[i].body, profile);
            } catch (encoding_error const& e) {
                throw input_error(corpus.string() + ": document " + batch[i].docno + ": " + e.what());
            }
        });
        for (std::size_t i = 0; i < batch.size(); ++i) {
            builder.add(std::move(batch[i].docno), streams[i]);
        }
        batch.clear();
    };
    while (auto doc = reader.next()) {
        batch.push_back(std::move(*doc));
        if (batch.size() == tokenize_batch) {
            flush();
        }
    }
    flush();
    return std::move(builder).build();
}

pipeline_result run_experiment(collection const& coll, std::span<topic const> topics,
                               lang_profile const& profile, qrels const& judgments,
                               run_config const& config)
{
    std::vector<topic_work> work(topics.size());
    parallel_for(topics.size(), config.threads, [&](std::size_t i) {
        work[i] = process_topic(coll, topics[i], profile, config);
    });

    pipeline_result result;
    result.topics.assign(topics.begin(), topics.end());
    result.methods.resize(config.methods.size());
    for (std::size_t m = 0; m < config.methods.size(); ++m) {
        result.methods[m].method = config.methods[m];
    }
    for (auto& w : work) {
        result.baseline_run.insert(result.baseline_run.end(), w.baseline.begin(), w.baseline.end());
        for (std::size_t m = 0; m < config.methods.size(); ++m) {
            auto& outcome = result.methods[m];
            outcome.queries.push_back(std::move(w.queries[m]));
            outcome.run.insert(outcome.run.end(), w.variants[m].begin(), w.variants[m].end());
        }
        result.warnings.insert(result.warnings.end(), w.warnings.begin(), w.warnings.end());
        result.expansions.push_back(std::move(w.expansion));
    }

    result.baseline_report = evaluate_run(result.baseline_run, judgments);
    std::vector<std::pair<std::string, run_report>> variants;
    for (auto& outcome : result.methods) {
        outcome.report = evaluate_run(outcome.run, judgments);
        variants.emplace_back(std::string(to_string(outcome.method)), outcome.report);
    }
    result.comparison = compare_runs(result.baseline_report, variants);
    for (auto t : result.baseline_report.skipped) {
        result.warnings.push_back("topic " + std::to_string(t)
                                  + ": no relevant judgments; excluded from evaluation");
    }
    return result;
}

std::vector<std::filesystem::path> write_artifacts(pipeline_result const& result,
                                                   run_config const& config)
{
    std::filesystem::create_directories(config.output_dir);
    std::vector<std::filesystem::path> written;
    auto path_for = [&](std::string const& suffix) {
        return config.output_dir / (config.tag + "." + suffix);
    };
    auto emit = [&](std::string const& suffix, auto&& writer) {
        auto path = path_for(suffix);
        auto out = open_output(path);
        writer(out);
        out.flush();
        if (!out) {
            throw input_error("failed writing " + path.string());
        }
        written.push_back(std::move(path));
    };

    emit("baseline.run", [&](std::ostream& out) { write_run(result.baseline_run, out); });
    emit("baseline.eval.txt", [&](std::ostream& out) { write_run_report(result.baseline_report, out); });
    emit("keywords.tsv", [&](std::ostream& out) {
        for (auto const& e : result.expansions) {
            write_keywords(e.candidates, out);
        }
    });
    if (config.dump_partitions) {
        emit("partitions.txt", [&](std::ostream& out) {
            for (auto const& e : result.expansions) {
                for (auto const& p : e.partitions) {
                    out << e.topic << ' ';
                    write_partitions(std::span(&p, 1), out);
                }
            }
        });
    }

    for (std::size_t m = 0; m < result.methods.size(); ++m) {
        auto const& outcome = result.methods[m];
        std::string const name(to_string(outcome.method));
        emit(name + ".topics", [&](std::ostream& out) {
            std::vector<topic> expanded;
            for (std::size_t i = 0; i < result.topics.size(); ++i) {
                expanded.push_back(expanded_topic(result.topics[i], outcome.queries[i]));
            }
            write_topics(expanded, out);
        });
        emit(name + ".run", [&](std::ostream& out) { write_run(outcome.run, out); });
        emit(name + ".keywords.tsv", [&](std::ostream& out) {
            for (auto const& q : outcome.queries) {
                candidate_list selected{q.topic, {}};
                for (auto const& term : q.expansion_terms) {
                    selected.entries.push_back({term, q.group_score.value_or(0.0), {}});
                }
                write_keywords(selected, out);
            }
        });
        emit(name + ".eval.txt", [&](std::ostream& out) { write_run_report(outcome.report, out); });
        emit(name + ".compare.csv", [&](std::ostream& out) {
            run_comparison single{{result.comparison.methods[m]}};
            write_comparison_csv(single, out);
        });
    }

    emit("compare.csv", [&](std::ostream& out) { write_comparison_csv(result.comparison, out); });
    emit("report.txt", [&](std::ostream& out) {
        out << "# pqe run report\n";
        write_config(config, out);
        out << '\n';
        std::vector<std::pair<std::string, run_report>> columns;
        columns.emplace_back("baseline", result.baseline_report);
        for (auto const& outcome : result.methods) {
            columns.emplace_back(std::string(to_string(outcome.method)), outcome.report);
        }
        write_summary_table(columns, out);
        out << '\n';
        write_comparison_table(result.comparison, out);
        if (!result.warnings.empty()) {
            out << '\n';
            for (auto const& w : result.warnings) {
                out << "# warning: " << w << '\n';
            }
        }
    });
    return written;
}

pipeline_result run_pipeline(run_config const& config)
{
    config.validate();
    auto const profile = lang_profile::from_file(config.stopwords, config.stopwords.stem().string());

    collection coll;
    if (!config.index.empty()) {
        auto in = open_input(config.index);
        coll = collection::load(in, config.index.string());
    } else {
        coll = load_collection(config.corpus, profile, config.threads);
    }
    auto topics_in = open_input(config.topics);
    auto const topics = parse_topics(topics_in, config.topics.string());
    auto qrels_in = open_input(config.qrels);
    auto const judgments = parse_qrels(qrels_in, config.qrels.string());

    auto result = run_experiment(coll, topics, profile, judgments, config);
    write_artifacts(result, config);
    return result;
}

}  // namespace pqe
