#include "pqe/trec_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <system_error>

#include "pqe/errors.hpp"

namespace pqe {

namespace {

bool iequals(std::string_view a, std::string_view b)
{
    return a.size() == b.size()
        && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x))
                   == std::tolower(static_cast<unsigned char>(y));
           });
}

struct tag_match {
    std::size_t begin = std::string_view::npos;  // position of '<'
    std::size_t end = std::string_view::npos;    // one past '>'
    [[nodiscard]] bool found() const noexcept { return begin != std::string_view::npos; }
};

/// Finds "<name>" or "<name attr...>" (closing=false) or "</name>" (closing=true),
/// case-insensitively.
tag_match find_tag(std::string_view text, std::string_view name, bool closing, std::size_t from = 0)
{
    std::size_t const prefix = closing ? 2 : 1;
    for (auto pos = text.find('<', from); pos != std::string_view::npos;
         pos = text.find('<', pos + 1)) {
        if (closing && (pos + 1 >= text.size() || text[pos + 1] != '/')) {
            continue;
        }
        if (!closing && pos + 1 < text.size() && text[pos + 1] == '/') {
            continue;
        }
        auto const name_at = pos + prefix;
        if (name_at + name.size() > text.size()
            || !iequals(text.substr(name_at, name.size()), name)) {
            continue;
        }
        auto const after = name_at + name.size();
        if (after >= text.size()) {
            continue;
        }
        char const c = text[after];
        if (c == '>') {
            return {pos, after + 1};
        }
        if (!closing && std::isspace(static_cast<unsigned char>(c))) {
            auto const gt = text.find('>', after);
            if (gt != std::string_view::npos) {
                return {pos, gt + 1};
            }
        }
    }
    return {};
}

std::string_view trim(std::string_view s)
{
    auto const first = s.find_first_not_of(" \t\r\n\f\v");
    if (first == std::string_view::npos) {
        return {};
    }
    auto const last = s.find_last_not_of(" \t\r\n\f\v");
    return s.substr(first, last - first + 1);
}

std::string collapse_whitespace(std::string_view s)
{
    std::string out;
    bool pending_space = false;
    for (char c : trim(s)) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending_space = true;
            continue;
        }
        if (pending_space && !out.empty()) {
            out.push_back(' ');
        }
        pending_space = false;
        out.push_back(c);
    }
    return out;
}

std::size_t line_at(std::string_view text, std::size_t offset, std::size_t first_line)
{
    return first_line
        + static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n'));
}

/// Text content with markup removed; non-empty element contents joined by ' '.
std::string strip_markup(std::string_view block)
{
    std::string body;
    std::size_t pos = 0;
    while (pos < block.size()) {
        auto const lt = block.find('<', pos);
        auto const piece = trim(block.substr(pos, lt == std::string_view::npos ? lt : lt - pos));
        if (!piece.empty()) {
            if (!body.empty()) {
                body.push_back(' ');
            }
            body.append(piece);
        }
        if (lt == std::string_view::npos) {
            break;
        }
        auto const gt = block.find('>', lt);
        if (gt == std::string_view::npos) {
            break;
        }
        pos = gt + 1;
    }
    return body;
}

template <typename Int>
bool parse_int(std::string_view s, Int& out)
{
    auto const* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc{} && ptr == end && !s.empty();
}

std::vector<std::string_view> split_ws(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
        auto const start = line.find_first_not_of(" \t\r", pos);
        if (start == std::string_view::npos) {
            break;
        }
        auto const end = line.find_first_of(" \t\r", start);
        fields.push_back(line.substr(start, end == std::string_view::npos ? end : end - start));
        if (end == std::string_view::npos) {
            break;
        }
        pos = end;
    }
    return fields;
}

}  // namespace

// ---------------------------------------------------------------- qrels

void qrels::add(int topic, std::string const& docno, int grade)
{
    auto& judged = m_judgments[topic];
    auto [it, inserted] = judged.emplace(docno, grade);
    if (inserted) {
        ++m_size;
        return;
    }
    if (it->second != grade) {
        throw collection_error("conflicting judgments for topic " + std::to_string(topic)
                               + " document " + docno + ": " + std::to_string(it->second)
                               + " vs " + std::to_string(grade));
    }
}

std::optional<int> qrels::grade(int topic, std::string const& docno) const
{
    auto t = m_judgments.find(topic);
    if (t == m_judgments.end()) {
        return std::nullopt;
    }
    auto d = t->second.find(docno);
    if (d == t->second.end()) {
        return std::nullopt;
    }
    return d->second;
}

bool qrels::has_topic(int topic) const { return m_judgments.contains(topic); }

std::size_t qrels::relevant_count(int topic) const
{
    auto t = m_judgments.find(topic);
    if (t == m_judgments.end()) {
        return 0;
    }
    return static_cast<std::size_t>(std::count_if(
        t->second.begin(), t->second.end(), [](auto const& kv) { return kv.second > 0; }));
}

std::vector<int> qrels::topics() const
{
    std::vector<int> out;
    out.reserve(m_judgments.size());
    for (auto const& [t, _] : m_judgments) {
        out.push_back(t);
    }
    return out;
}

// ---------------------------------------------------------------- documents

trec_doc_reader::trec_doc_reader(std::istream& in, std::string source)
    : m_in(in), m_source(std::move(source))
{}

bool trec_doc_reader::fill()
{
    std::string line;
    if (!std::getline(m_in, line)) {
        return false;
    }
    ++m_line;
    m_rest = std::move(line);
    m_rest.push_back('\n');
    return true;
}

std::optional<document> trec_doc_reader::next()
{
    // Skip to the next <DOC>.
    tag_match open;
    while (!(open = find_tag(m_rest, "DOC", false)).found()) {
        if (!fill()) {
            return std::nullopt;
        }
    }
    std::size_t const open_line = m_line;
    std::string block;
    m_rest.erase(0, open.end);

    while (true) {
        auto const close = find_tag(m_rest, "DOC", true);
        auto const nested = find_tag(m_rest, "DOC", false);
        if (nested.found() && (!close.found() || nested.begin < close.begin)) {
            throw parse_error(m_source, m_line, "<DOC> opened at line " + std::to_string(open_line)
                                                    + " is not closed before the next <DOC>");
        }
        if (close.found()) {
            block.append(m_rest, 0, close.begin);
            m_rest.erase(0, close.end);
            break;
        }
        block.append(m_rest);
        m_rest.clear();
        if (!fill()) {
            throw parse_error(m_source, open_line, "unclosed <DOC>");
        }
    }

    auto const docno_open = find_tag(block, "DOCNO", false);
    auto const docno_close =
        docno_open.found() ? find_tag(block, "DOCNO", true, docno_open.end) : tag_match{};
    if (!docno_open.found() || !docno_close.found()) {
        throw parse_error(m_source, open_line, "<DOC> without <DOCNO>");
    }
    std::string docno(trim(std::string_view(block).substr(
        docno_open.end, docno_close.begin - docno_open.end)));
    if (docno.empty()) {
        throw parse_error(m_source, open_line, "empty <DOCNO>");
    }
    if (!m_seen.insert(docno).second) {
        throw collection_error(m_source + ":" + std::to_string(open_line) + ": duplicate DOCNO "
                               + docno);
    }
    block.erase(docno_open.begin, docno_close.end - docno_open.begin);
    return document{std::move(docno), strip_markup(block)};
}

std::vector<document> parse_trec_docs(std::istream& in, std::string const& source)
{
    trec_doc_reader reader(in, source);
    std::vector<document> docs;
    while (auto doc = reader.next()) {
        docs.push_back(std::move(*doc));
    }
    return docs;
}

// ---------------------------------------------------------------- topics

std::vector<topic> parse_topics(std::istream& in, std::string const& source)
{
    std::string const text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::string_view const view(text);
    std::vector<topic> topics;
    std::unordered_set<int> seen;

    std::size_t pos = 0;
    while (true) {
        auto const open = find_tag(view, "top", false, pos);
        if (!open.found()) {
            break;
        }
        auto const line = line_at(view, open.begin, 1);
        auto const close = find_tag(view, "top", true, open.end);
        if (!close.found()) {
            throw parse_error(source, line, "unclosed <top>");
        }
        auto const block = view.substr(open.end, close.begin - open.end);
        pos = close.end;

        auto field = [&](std::string_view name) -> std::optional<std::string_view> {
            auto const tag = find_tag(block, name, false);
            if (!tag.found()) {
                return std::nullopt;
            }
            auto const end = block.find('<', tag.end);
            return block.substr(tag.end, end == std::string_view::npos ? end : end - tag.end);
        };

        auto num_text = field("num");
        if (!num_text) {
            throw parse_error(source, line, "<top> without <num>");
        }
        auto num = trim(*num_text);
        if (num.size() >= 7 && iequals(num.substr(0, 7), "Number:")) {
            num = trim(num.substr(7));
        }
        topic t;
        if (!parse_int(num, t.number)) {
            throw parse_error(source, line, "non-numeric <num> '" + std::string(num) + "'");
        }
        auto title = field("title");
        if (!title) {
            throw parse_error(source, line, "<top> without <title>");
        }
        t.title = collapse_whitespace(*title);
        if (t.title.empty()) {
            throw parse_error(source, line, "empty <title> for topic " + std::to_string(t.number));
        }
        if (!seen.insert(t.number).second) {
            throw parse_error(source, line, "duplicate topic number " + std::to_string(t.number));
        }
        topics.push_back(std::move(t));
    }
    return topics;
}

void write_topics(std::span<topic const> topics, std::ostream& out)
{
    for (auto const& t : topics) {
        out << "<top>\n<num>" << t.number << "</num>\n<title>" << t.title << "</title>\n</top>\n\n";
    }
    if (!out) {
        throw input_error("failed writing topic file");
    }
}

// ---------------------------------------------------------------- qrels

qrels parse_qrels(std::istream& in, std::string const& source)
{
    qrels q;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto const fields = split_ws(line);
        if (fields.empty()) {
            continue;
        }
        if (fields.size() != 4) {
            throw parse_error(source, line_no,
                              "expected 4 columns, found " + std::to_string(fields.size()));
        }
        int topic = 0;
        int grade = 0;
        if (!parse_int(fields[0], topic)) {
            throw parse_error(source, line_no, "non-numeric topic '" + std::string(fields[0]) + "'");
        }
        if (!parse_int(fields[3], grade)) {
            throw parse_error(source, line_no,
                              "non-numeric relevance '" + std::string(fields[3]) + "'");
        }
        try {
            q.add(topic, std::string(fields[2]), grade);
        } catch (collection_error const& e) {
            throw parse_error(source, line_no, e.what());
        }
    }
    return q;
}

// ---------------------------------------------------------------- runs

std::vector<run_entry> parse_run(std::istream& in, std::string const& source)
{
    std::vector<run_entry> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto const fields = split_ws(line);
        if (fields.empty()) {
            continue;
        }
        if (fields.size() != 6) {
            throw parse_error(source, line_no,
                              "expected 6 columns, found " + std::to_string(fields.size()));
        }
        run_entry e;
        e.docno = std::string(fields[2]);
        e.tag = std::string(fields[5]);
        auto const* score_end = fields[4].data() + fields[4].size();
        auto [ptr, ec] = std::from_chars(fields[4].data(), score_end, e.score);
        if (!parse_int(fields[0], e.topic) || !parse_int(fields[3], e.rank) || ec != std::errc{}
            || ptr != score_end) {
            throw parse_error(source, line_no, "malformed run line");
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

void validate_run(std::span<run_entry const> entries)
{
    struct progress {
        std::size_t next_rank = 1;
        double last_score = 0.0;
    };
    std::unordered_map<int, progress> topics;
    for (auto const& e : entries) {
        auto& p = topics[e.topic];
        if (e.rank != p.next_rank) {
            throw invariant_error("run topic " + std::to_string(e.topic) + ": expected rank "
                                  + std::to_string(p.next_rank) + ", got "
                                  + std::to_string(e.rank));
        }
        if (e.rank > 1 && e.score > p.last_score) {
            throw invariant_error("run topic " + std::to_string(e.topic)
                                  + ": score increases at rank " + std::to_string(e.rank));
        }
        p.last_score = e.score;
        ++p.next_rank;
    }
}

std::string format_score(double score)
{
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), score, std::chars_format::fixed, 4);
    std::string fixed4(buf.data(), res.ptr);
    double back = 0.0;
    std::from_chars(fixed4.data(), fixed4.data() + fixed4.size(), back);
    if (back == score) {
        return fixed4;
    }
    res = std::to_chars(buf.data(), buf.data() + buf.size(), score, std::chars_format::fixed);
    return std::string(buf.data(), res.ptr);
}

void write_run(std::span<run_entry const> entries, std::ostream& out)
{
    validate_run(entries);
    for (auto const& e : entries) {
        out << e.topic << " Q0 " << e.docno << ' ' << e.rank << ' ' << format_score(e.score) << ' '
            << e.tag << '\n';
    }
    if (!out) {
        throw input_error("failed writing run file");
    }
}

std::ifstream open_input(std::filesystem::path const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw input_error("cannot open " + path.string());
    }
    return in;
}

std::ofstream open_output(std::filesystem::path const& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw input_error("cannot create " + path.string());
    }
    return out;
}

}  // namespace pqe
