#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pqe {

/// Bad user-supplied input: malformed files, invalid encodings, unreadable
/// paths. The CLI maps these to exit status 1.
class input_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A located syntax error inside an input file.
class parse_error : public input_error {
  public:
    parse_error(std::string source, std::size_t line, std::string const& what);

    [[nodiscard]] std::string const& source() const noexcept { return m_source; }
    [[nodiscard]] std::size_t line() const noexcept { return m_line; }

  private:
    std::string m_source;
    std::size_t m_line;
};

/// Input that parses but breaks a collection-level rule (duplicate DOCNO,
/// conflicting judgments).
class collection_error : public input_error {
  public:
    using input_error::input_error;
};

/// Byte sequence that is not valid UTF-8.
class encoding_error : public input_error {
  public:
    encoding_error(std::size_t byte_offset, std::string const& what);
    [[nodiscard]] std::size_t byte_offset() const noexcept { return m_offset; }

  private:
    std::size_t m_offset;
};

/// Broken internal invariant or violated precondition; exit status 2.
class invariant_error : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

// Per-topic / per-document degeneracies. The pipeline catches these and
// falls back to the unexpanded query or skips the document.

class empty_query_error : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

class no_keyword_error : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

class degenerate_document_error : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

class undefined_idf_error : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

}  // namespace pqe
