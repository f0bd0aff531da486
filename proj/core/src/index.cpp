#include "pqe/index.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "pqe/errors.hpp"

namespace pqe {

namespace {

constexpr std::string_view format_magic = "pqe-collection v1";

template <typename Int>
Int read_int(std::string_view s, std::string const& source, std::size_t line)
{
    Int value{};
    auto const* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc{} || ptr != end || s.empty()) {
        throw parse_error(source, line, "expected integer, found '" + std::string(s) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto const next = s.find(sep, pos);
        if (next == std::string_view::npos) {
            out.push_back(s.substr(pos));
            break;
        }
        out.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

}  // namespace

double inverted_index::average_doc_length() const noexcept
{
    if (m_docnos.empty()) {
        return 0.0;
    }
    return static_cast<double>(m_total_length) / static_cast<double>(m_docnos.size());
}

std::optional<term_id> inverted_index::lookup(std::string_view term) const
{
    auto it = m_lexicon.find(std::string(term));
    if (it == m_lexicon.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::span<posting const> inverted_index::postings(std::string_view term) const
{
    if (auto id = lookup(term)) {
        return m_postings[*id];
    }
    return {};
}

std::optional<doc_id> inverted_index::ordinal(std::string_view docno) const
{
    auto it = m_docno_lookup.find(std::string(docno));
    if (it == m_docno_lookup.end()) {
        return std::nullopt;
    }
    return it->second;
}

void inverted_index::check_invariants() const
{
    std::vector<std::uint64_t> lengths(m_docnos.size(), 0);
    for (auto const& list : m_postings) {
        for (std::size_t i = 0; i < list.size(); ++i) {
            auto const& p = list[i];
            if (p.doc >= m_docnos.size() || p.freq == 0) {
                throw invariant_error("posting out of range or with zero frequency");
            }
            if (i > 0 && list[i - 1].doc >= p.doc) {
                throw invariant_error("posting list not strictly ascending");
            }
            lengths[p.doc] += p.freq;
        }
    }
    std::uint64_t total = 0;
    for (std::size_t d = 0; d < lengths.size(); ++d) {
        if (lengths[d] != m_doc_lengths[d]) {
            throw invariant_error("document length disagrees with postings for " + m_docnos[d]);
        }
        total += lengths[d];
    }
    if (total != m_total_length) {
        throw invariant_error("total length disagrees with postings");
    }
}

token_stream collection::tokens(doc_id doc) const
{
    token_stream stream;
    auto const& ids = m_forward.at(doc);
    stream.tokens.reserve(ids.size());
    for (auto id : ids) {
        stream.tokens.push_back(m_index.m_terms[id]);
    }
    return stream;
}

token_stream collection::tokens(std::string_view docno) const
{
    auto doc = m_index.ordinal(docno);
    if (!doc) {
        throw input_error("unknown DOCNO " + std::string(docno));
    }
    return tokens(*doc);
}

doc_id collection_builder::add(std::string docno, token_stream const& tokens)
{
    auto& index = m_collection.m_index;
    auto const doc = static_cast<doc_id>(index.m_docnos.size());
    if (!index.m_docno_lookup.emplace(docno, doc).second) {
        throw collection_error("duplicate DOCNO " + docno);
    }
    index.m_docnos.push_back(std::move(docno));
    index.m_doc_lengths.push_back(static_cast<std::uint32_t>(tokens.size()));
    index.m_total_length += tokens.size();

    std::vector<term_id> forward;
    forward.reserve(tokens.size());
    for (auto const& token : tokens.tokens) {
        auto [it, inserted] =
            index.m_lexicon.emplace(token, static_cast<term_id>(index.m_terms.size()));
        if (inserted) {
            index.m_terms.push_back(token);
            index.m_postings.emplace_back();
        }
        forward.push_back(it->second);
    }

    auto sorted = forward;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) {
            ++j;
        }
        index.m_postings[sorted[i]].push_back({doc, static_cast<std::uint32_t>(j - i)});
        i = j;
    }
    m_collection.m_forward.push_back(std::move(forward));
    return doc;
}

collection collection_builder::build() &&
{
    return std::move(m_collection);
}

collection build_collection(std::span<std::pair<std::string, token_stream> const> docs)
{
    collection_builder builder;
    for (auto const& [docno, tokens] : docs) {
        builder.add(docno, tokens);
    }
    return std::move(builder).build();
}

void collection::save(std::ostream& out) const
{
    out << format_magic << '\n' << "documents " << m_forward.size() << '\n';
    for (std::size_t d = 0; d < m_forward.size(); ++d) {
        out << m_index.m_docnos[d] << '\t' << m_index.m_doc_lengths[d] << '\t';
        for (std::size_t i = 0; i < m_forward[d].size(); ++i) {
            out << (i ? " " : "") << m_forward[d][i];
        }
        out << '\n';
    }
    out << "terms " << m_index.m_terms.size() << '\n';
    for (std::size_t t = 0; t < m_index.m_terms.size(); ++t) {
        auto const& list = m_index.m_postings[t];
        out << m_index.m_terms[t] << '\t' << list.size() << '\t';
        for (std::size_t i = 0; i < list.size(); ++i) {
            out << (i ? " " : "") << list[i].doc << ':' << list[i].freq;
        }
        out << '\n';
    }
    out << "end\n";
    if (!out) {
        throw input_error("failed writing collection dump");
    }
}

collection collection::load(std::istream& in, std::string const& source)
{
    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&]() -> std::string_view {
        if (!std::getline(in, line)) {
            throw parse_error(source, line_no, "unexpected end of collection dump");
        }
        ++line_no;
        return line;
    };
    auto header = [&](std::string_view expected) {
        auto const l = next_line();
        if (!l.starts_with(expected) || l.size() <= expected.size() + 1) {
            throw parse_error(source, line_no, "expected '" + std::string(expected) + " <n>'");
        }
        return read_int<std::size_t>(l.substr(expected.size() + 1), source, line_no);
    };

    if (next_line() != format_magic) {
        throw parse_error(source, line_no, "not a pqe collection dump (or unsupported version)");
    }

    collection c;
    auto& index = c.m_index;
    auto const doc_count = header("documents");
    std::vector<std::vector<std::string_view>> pending;
    for (std::size_t d = 0; d < doc_count; ++d) {
        auto const fields = split(next_line(), '\t');
        if (fields.size() != 3) {
            throw parse_error(source, line_no, "malformed document line");
        }
        std::string docno(fields[0]);
        if (!index.m_docno_lookup.emplace(docno, static_cast<doc_id>(d)).second) {
            throw parse_error(source, line_no, "duplicate DOCNO " + docno);
        }
        index.m_docnos.push_back(std::move(docno));
        auto const length = read_int<std::uint32_t>(fields[1], source, line_no);
        index.m_doc_lengths.push_back(length);
        index.m_total_length += length;
        std::vector<term_id> forward;
        if (!fields[2].empty()) {
            for (auto id : split(fields[2], ' ')) {
                forward.push_back(read_int<term_id>(id, source, line_no));
            }
        }
        if (forward.size() != length) {
            throw parse_error(source, line_no, "token count disagrees with document length");
        }
        c.m_forward.push_back(std::move(forward));
    }

    auto const term_count = header("terms");
    for (std::size_t t = 0; t < term_count; ++t) {
        auto const fields = split(next_line(), '\t');
        if (fields.size() != 3 || fields[0].empty()) {
            throw parse_error(source, line_no, "malformed term line");
        }
        std::string term(fields[0]);
        if (!index.m_lexicon.emplace(term, static_cast<term_id>(t)).second) {
            throw parse_error(source, line_no, "duplicate term " + term);
        }
        index.m_terms.push_back(std::move(term));
        auto const df = read_int<std::size_t>(fields[1], source, line_no);
        std::vector<posting> list;
        if (!fields[2].empty()) {
            for (auto p : split(fields[2], ' ')) {
                auto const colon = p.find(':');
                if (colon == std::string_view::npos) {
                    throw parse_error(source, line_no, "malformed posting");
                }
                list.push_back({read_int<doc_id>(p.substr(0, colon), source, line_no),
                                read_int<std::uint32_t>(p.substr(colon + 1), source, line_no)});
            }
        }
        if (list.size() != df) {
            throw parse_error(source, line_no, "posting count disagrees with df");
        }
        index.m_postings.push_back(std::move(list));
    }
    if (next_line() != "end") {
        throw parse_error(source, line_no, "missing end marker");
    }

    for (auto const& forward : c.m_forward) {
        for (auto id : forward) {
            if (id >= term_count) {
                throw parse_error(source, line_no, "term id out of range in forward store");
            }
        }
    }
    try {
        index.check_invariants();
    } catch (invariant_error const& e) {
        throw parse_error(source, line_no, std::string("inconsistent dump: ") + e.what());
    }
    return c;
}

}  // namespace pqe
