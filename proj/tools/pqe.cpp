// pqe: index, expand and evaluate TREC-style ad hoc runs.
//
//   pqe index-build --corpus docs.trec --stopwords hi.txt --output coll.idx
//   pqe run --config run.ini [--methods keyword] [...]   (run options under [run])
//   pqe eval --qrels q.txt --baseline base.run --variant keyword=kw.run

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "pqe/errors.hpp"
#include "pqe/evaluation.hpp"
#include "pqe/pipeline.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input = 1;
constexpr int exit_internal = 2;

int cmd_index_build(std::filesystem::path const& corpus, std::filesystem::path const& stopwords,
                    std::filesystem::path const& output, std::size_t threads)
{
    auto const profile = pqe::lang_profile::from_file(stopwords, stopwords.stem().string());
    auto const coll = pqe::load_collection(corpus, profile, threads);
    if (output.has_parent_path()) {
        std::filesystem::create_directories(output.parent_path());
    }
    auto out = pqe::open_output(output);
    coll.save(out);
    std::cerr << "indexed " << coll.size() << " documents, " << coll.index().term_count()
              << " terms -> " << output.string() << '\n';
    return exit_ok;
}

int cmd_run(pqe::run_config const& config)
{
    auto const result = pqe::run_pipeline(config);
    for (auto const& w : result.warnings) {
        std::cerr << "warning: " << w << '\n';
    }
    std::vector<std::pair<std::string, pqe::run_report>> columns;
    columns.emplace_back("baseline", result.baseline_report);
    for (auto const& m : result.methods) {
        columns.emplace_back(std::string(pqe::to_string(m.method)), m.report);
    }
    pqe::write_summary_table(columns, std::cout);
    std::cout << '\n';
    pqe::write_comparison_table(result.comparison, std::cout);
    std::cout << "\nartifacts written to " << config.output_dir.string() << '\n';
    return exit_ok;
}

int cmd_eval(std::filesystem::path const& qrels_path, std::filesystem::path const& baseline_path,
             std::vector<std::string> const& variant_args, std::filesystem::path const& output_dir,
             std::string const& tag)
{
    auto qin = pqe::open_input(qrels_path);
    auto const judgments = pqe::parse_qrels(qin, qrels_path.string());
    auto load = [&](std::filesystem::path const& path) {
        auto in = pqe::open_input(path);
        return pqe::evaluate_run(pqe::parse_run(in, path.string()), judgments);
    };

    std::vector<std::pair<std::string, pqe::run_report>> columns;
    columns.emplace_back("baseline", load(baseline_path));
    std::vector<std::pair<std::string, pqe::run_report>> variants;
    for (auto const& arg : variant_args) {
        auto const eq = arg.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == arg.size()) {
            throw pqe::input_error("variant must be given as name=path, got '" + arg + "'");
        }
        variants.emplace_back(arg.substr(0, eq), load(arg.substr(eq + 1)));
        columns.push_back(variants.back());
    }
    auto const comparison = pqe::compare_runs(columns.front().second, variants);

    pqe::write_summary_table(columns, std::cout);
    if (!variants.empty()) {
        std::cout << '\n';
        pqe::write_comparison_table(comparison, std::cout);
    }
    for (auto t : columns.front().second.skipped) {
        std::cerr << "warning: topic " << t << " has no relevant judgments; skipped\n";
    }

    if (!output_dir.empty()) {
        std::filesystem::create_directories(output_dir);
        {
            auto out = pqe::open_output(output_dir / (tag + ".report.txt"));
            pqe::write_summary_table(columns, out);
            out << '\n';
            pqe::write_comparison_table(comparison, out);
        }
        auto csv = pqe::open_output(output_dir / (tag + ".compare.csv"));
        pqe::write_comparison_csv(comparison, csv);
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Partition-based pseudo relevance feedback for TREC-style ad hoc retrieval"};
    app.require_subcommand(1);
    app.set_config("--config", "", "INI/TOML file; options for `run` go under a [run] section");
    app.fallthrough();

    // index-build
    std::filesystem::path ib_corpus;
    std::filesystem::path ib_stopwords;
    std::filesystem::path ib_output;
    std::size_t ib_threads = 0;
    auto* index_build = app.add_subcommand("index-build", "Tokenize a collection and persist it");
    index_build->add_option("--corpus", ib_corpus, "TREC document collection")->required();
    index_build->add_option("--stopwords", ib_stopwords, "Stopword list")->required();
    index_build->add_option("--output,-o", ib_output, "Collection dump to write")->required();
    index_build->add_option("--threads", ib_threads, "Worker threads (0 = all cores)");

    // run
    pqe::run_config config;
    std::string model = "bm25";
    std::string rule = "decile-total";
    std::vector<std::string> methods{"highest", "average", "keyword"};
    auto* run = app.add_subcommand("run", "Baseline, expansion by each method, evaluation");
    run->add_option("--corpus", config.corpus, "TREC document collection");
    run->add_option("--index", config.index, "Collection dump from index-build (replaces --corpus)");
    run->add_option("--topics", config.topics, "TREC topic file")->required();
    run->add_option("--qrels", config.qrels, "Relevance judgments")->required();
    run->add_option("--stopwords", config.stopwords, "Stopword list")->required();
    run->add_option("--tag", config.tag, "Run label written in run files")->capture_default_str();
    run->add_option("--feedback-docs", config.feedback_depth, "Pseudo-relevant documents per topic")
        ->capture_default_str();
    run->add_option("--terms-per-doc", config.terms_per_doc, "Candidate terms kept per document")
        ->capture_default_str();
    run->add_option("--depth", config.run_depth, "Run depth per topic")->capture_default_str();
    run->add_option("--model", model, "Ranking model: bm25 or tfidf")->capture_default_str();
    run->add_option("--k1", config.ranking.k1, "BM25 k1")->capture_default_str();
    run->add_option("--b", config.ranking.b, "BM25 b")->capture_default_str();
    run->add_option("--methods", methods, "Comma-separated subset of highest,average,keyword")
        ->delimiter(',')
        ->capture_default_str();
    run->add_option("--peak-rule", rule, "decile-total or single-keyword")->capture_default_str();
    run->add_option("--threads", config.threads, "Worker threads (0 = all cores)");
    run->add_option("--output-dir,-o", config.output_dir, "Artifact directory")->capture_default_str();
    run->add_flag("--dump-partitions", config.dump_partitions,
                  "Also write <tag>.partitions.txt (topic docno start end keyword_count)");

    // eval
    std::filesystem::path ev_qrels;
    std::filesystem::path ev_baseline;
    std::vector<std::string> ev_variants;
    std::filesystem::path ev_output;
    std::string ev_tag = "EVAL";
    auto* eval = app.add_subcommand("eval", "Reports from existing run files");
    eval->add_option("--qrels", ev_qrels, "Relevance judgments")->required();
    eval->add_option("--baseline", ev_baseline, "Baseline run file")->required();
    eval->add_option("--variant", ev_variants, "name=path of a run to compare (repeatable)");
    eval->add_option("--output-dir,-o", ev_output, "Also write report and CSV here");
    eval->add_option("--tag", ev_tag, "File name prefix for written reports")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        auto const code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    try {
        if (*index_build) {
            return cmd_index_build(ib_corpus, ib_stopwords, ib_output, ib_threads);
        }
        if (*run) {
            config.ranking.model = pqe::parse_ranking_model(model);
            config.rule = pqe::parse_peak_rule(rule);
            config.methods.clear();
            for (auto const& m : methods) {
                config.methods.push_back(pqe::parse_expansion_method(m));
            }
            return cmd_run(config);
        }
        if (*eval) {
            return cmd_eval(ev_qrels, ev_baseline, ev_variants, ev_output, ev_tag);
        }
    } catch (pqe::input_error const& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    } catch (std::filesystem::filesystem_error const& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    } catch (std::exception const& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return exit_internal;
    }
    return exit_internal;
}
