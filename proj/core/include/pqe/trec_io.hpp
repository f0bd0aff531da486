#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace pqe {

struct document {
    std::string docno;
    std::string body;

    friend bool operator==(document const&, document const&) = default;
};

struct topic {
    int number = 0;
    std::string title;

    friend bool operator==(topic const&, topic const&) = default;
};

/// Relevance judgments, (topic, docno) -> grade. Grade 0 is an explicit
/// non-relevant judgment; anything above 0 counts as relevant.
class qrels {
  public:
    /// Re-adding an identical judgment is a no-op; a conflicting grade throws
    /// collection_error.
    void add(int topic, std::string const& docno, int grade);

    [[nodiscard]] std::optional<int> grade(int topic, std::string const& docno) const;
    [[nodiscard]] bool has_topic(int topic) const;
    [[nodiscard]] std::size_t relevant_count(int topic) const;
    [[nodiscard]] std::vector<int> topics() const;
    [[nodiscard]] std::size_t size() const noexcept { return m_size; }

  private:
    std::map<int, std::unordered_map<std::string, int>> m_judgments;
    std::size_t m_size = 0;
};

/// One line of a run file: "topic Q0 docno rank score tag".
struct run_entry {
    int topic = 0;
    std::string docno;
    std::size_t rank = 0;
    double score = 0.0;
    std::string tag;

    friend bool operator==(run_entry const&, run_entry const&) = default;
};

/// Streaming reader for SGML-style TREC collections. Holds at most one
/// document in memory; remembers seen DOCNOs to reject duplicates.
///
/// The body is the text content of every element inside <DOC> other than
/// <DOCNO>, in document order, with markup removed and element contents
/// joined by a single space.
class trec_doc_reader {
  public:
    explicit trec_doc_reader(std::istream& in, std::string source = "<stream>");

    /// Next document, or nullopt at end of input. Throws parse_error on
    /// unclosed <DOC> or missing DOCNO, collection_error on duplicate DOCNO.
    std::optional<document> next();

    [[nodiscard]] std::size_t line() const noexcept { return m_line; }

  private:
    bool fill();

    std::istream& m_in;
    std::string m_source;
    std::string m_rest;
    std::size_t m_line = 0;
    std::unordered_set<std::string> m_seen;
};

[[nodiscard]] std::vector<document> parse_trec_docs(std::istream& in,
                                                    std::string const& source = "<stream>");

/// Only <num> and <title> are kept. Accepts both closed FIRE-style tags and
/// unclosed classic TREC tags ("<num> Number: 401").
[[nodiscard]] std::vector<topic> parse_topics(std::istream& in,
                                              std::string const& source = "<stream>");

/// Whitespace-separated "topic iter docno rel"; iter is ignored.
[[nodiscard]] qrels parse_qrels(std::istream& in, std::string const& source = "<stream>");

[[nodiscard]] std::vector<run_entry> parse_run(std::istream& in,
                                               std::string const& source = "<stream>");

/// Throws invariant_error unless ranks are 1..n per topic and scores are
/// non-increasing with rank.
void validate_run(std::span<run_entry const> entries);

/// Validates, then writes one line per entry. Throws input_error if the sink
/// fails.
void write_run(std::span<run_entry const> entries, std::ostream& out);

/// Topic file in the input format (<top><num><title>).
void write_topics(std::span<topic const> topics, std::ostream& out);

/// Fixed notation with 4 decimals when that reproduces the value exactly,
/// otherwise the shortest fixed notation that does.
[[nodiscard]] std::string format_score(double score);

/// Opens a file for reading or throws input_error naming it.
[[nodiscard]] std::ifstream open_input(std::filesystem::path const& path);
[[nodiscard]] std::ofstream open_output(std::filesystem::path const& path);

}  // namespace pqe
