#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pqe/text.hpp"

namespace pqe {

using doc_id = std::uint32_t;
using term_id = std::uint32_t;

struct posting {
    doc_id doc = 0;
    std::uint32_t freq = 0;

    friend bool operator==(posting const&, posting const&) = default;
};

/// Document-at-a-time postings over filtered token streams. Immutable once
/// built; safe to share across threads.
class inverted_index {
  public:
    [[nodiscard]] std::size_t doc_count() const noexcept { return m_docnos.size(); }
    [[nodiscard]] std::size_t term_count() const noexcept { return m_terms.size(); }
    [[nodiscard]] std::uint64_t total_length() const noexcept { return m_total_length; }
    [[nodiscard]] double average_doc_length() const noexcept;

    /// Empty span for unknown terms. Sorted by doc ordinal.
    [[nodiscard]] std::span<posting const> postings(std::string_view term) const;
    [[nodiscard]] std::span<posting const> postings(term_id id) const { return m_postings[id]; }
    [[nodiscard]] std::optional<term_id> lookup(std::string_view term) const;
    [[nodiscard]] std::string const& term(term_id id) const { return m_terms[id]; }

    [[nodiscard]] std::uint32_t doc_length(doc_id doc) const { return m_doc_lengths[doc]; }
    [[nodiscard]] std::string const& docno(doc_id doc) const { return m_docnos[doc]; }
    [[nodiscard]] std::optional<doc_id> ordinal(std::string_view docno) const;

    /// Throws invariant_error if postings and document lengths disagree.
    void check_invariants() const;

    friend bool operator==(inverted_index const& a, inverted_index const& b)
    {
        return a.m_terms == b.m_terms && a.m_postings == b.m_postings
            && a.m_doc_lengths == b.m_doc_lengths && a.m_docnos == b.m_docnos;
    }

  private:
    friend class collection_builder;
    friend class collection;

    std::vector<std::string> m_terms;
    std::unordered_map<std::string, term_id> m_lexicon;
    std::vector<std::vector<posting>> m_postings;
    std::vector<std::uint32_t> m_doc_lengths;
    std::vector<std::string> m_docnos;
    std::unordered_map<std::string, doc_id> m_docno_lookup;
    std::uint64_t m_total_length = 0;
};

/// Inverted index plus a forward store of each document's token stream, which
/// the feedback stage needs for positional partitioning.
class collection {
  public:
    [[nodiscard]] inverted_index const& index() const noexcept { return m_index; }
    [[nodiscard]] std::size_t size() const noexcept { return m_forward.size(); }

    [[nodiscard]] token_stream tokens(doc_id doc) const;
    /// Throws input_error for unknown DOCNOs.
    [[nodiscard]] token_stream tokens(std::string_view docno) const;

    /// Versioned text dump; load() validates the result.
    void save(std::ostream& out) const;
    [[nodiscard]] static collection load(std::istream& in, std::string const& source = "<stream>");

    friend bool operator==(collection const&, collection const&) = default;

  private:
    friend class collection_builder;

    inverted_index m_index;
    std::vector<std::vector<term_id>> m_forward;
};

/// Single-writer builder. Documents receive ordinals in insertion order.
class collection_builder {
  public:
    /// Throws collection_error on duplicate DOCNO.
    doc_id add(std::string docno, token_stream const& tokens);
    [[nodiscard]] collection build() &&;

  private:
    collection m_collection;
};

[[nodiscard]] collection build_collection(
    std::span<std::pair<std::string, token_stream> const> docs);

}  // namespace pqe
