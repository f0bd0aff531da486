#include "pqe/text.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "pqe/errors.hpp"

namespace pqe {

namespace {

icu::Normalizer2 const& nfc()
{
    UErrorCode status = U_ZERO_ERROR;
    auto const* instance = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status) || instance == nullptr) {
        throw invariant_error("ICU NFC normalizer unavailable");
    }
    return *instance;
}

icu::UnicodeString to_nfc(icu::UnicodeString const& s)
{
    UErrorCode status = U_ZERO_ERROR;
    auto out = nfc().normalize(s, status);
    if (U_FAILURE(status)) {
        throw invariant_error("NFC normalization failed");
    }
    return out;
}

bool is_separator(UChar32 c)
{
    constexpr std::uint32_t mask = U_GC_P_MASK | U_GC_Z_MASK | U_GC_CC_MASK;
    return (U_GET_GC_MASK(c) & mask) != 0;
}

std::string normalize_unicode(icu::UnicodeString piece)
{
    piece.toLower(icu::Locale::getRoot());
    std::string out;
    to_nfc(piece).toUTF8String(out);
    return out;
}

}  // namespace

std::string_view to_string(script_hint hint) noexcept
{
    switch (hint) {
    case script_hint::latin: return "latin";
    case script_hint::devanagari: return "devanagari";
    case script_hint::mixed: return "mixed";
    }
    return "mixed";
}

void validate_utf8(std::string_view bytes)
{
    auto const* s = reinterpret_cast<std::uint8_t const*>(bytes.data());
    auto const length = static_cast<std::int32_t>(bytes.size());
    std::int32_t i = 0;
    while (i < length) {
        std::int32_t const start = i;
        UChar32 c = 0;
        U8_NEXT(s, i, length, c);
        if (c < 0) {
            throw encoding_error(static_cast<std::size_t>(start), "invalid UTF-8 sequence");
        }
    }
}

std::string normalize(std::string_view token)
{
    validate_utf8(token);
    auto piece = icu::UnicodeString::fromUTF8(
        icu::StringPiece(token.data(), static_cast<std::int32_t>(token.size())));
    return normalize_unicode(to_nfc(piece));
}

token_stream tokenize(std::string_view raw, lang_profile const& profile)
{
    validate_utf8(raw);
    token_stream stream;
    if (raw.empty()) {
        return stream;
    }
    auto const text = to_nfc(icu::UnicodeString::fromUTF8(
        icu::StringPiece(raw.data(), static_cast<std::int32_t>(raw.size()))));

    auto emit = [&](std::int32_t begin, std::int32_t end) {
        if (begin >= end) {
            return;
        }
        auto token = normalize_unicode(icu::UnicodeString(text, begin, end - begin));
        if (!token.empty() && !profile.is_stopword(token)) {
            stream.tokens.push_back(std::move(token));
        }
    };

    std::int32_t begin = 0;
    std::int32_t i = 0;
    while (i < text.length()) {
        UChar32 const c = text.char32At(i);
        std::int32_t const next = text.moveIndex32(i, 1);
        if (is_separator(c)) {
            emit(begin, i);
            begin = next;
        }
        i = next;
    }
    emit(begin, text.length());
    return stream;
}

lang_profile::lang_profile(std::string name, std::vector<std::string> const& stopwords,
                           script_hint hint)
    : m_name(std::move(name)), m_hint(hint)
{
    for (auto const& word : stopwords) {
        if (!word.empty()) {
            m_stopwords.insert(normalize(word));
        }
    }
}

lang_profile lang_profile::from_file(std::filesystem::path const& path, std::string name,
                                     script_hint hint)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw input_error("cannot open stopword file " + path.string());
    }
    return lang_profile(std::move(name), read_stopwords(in, path.string()), hint);
}

bool lang_profile::is_stopword(std::string_view normalized_token) const
{
    return m_stopwords.find(std::string(normalized_token)) != m_stopwords.end();
}

std::vector<std::string> lang_profile::sorted_stopwords() const
{
    std::vector<std::string> words(m_stopwords.begin(), m_stopwords.end());
    std::sort(words.begin(), words.end());
    return words;
}

std::vector<std::string> read_stopwords(std::istream& in, std::string const& source)
{
    std::vector<std::string> words;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        try {
            validate_utf8(line);
        } catch (encoding_error const& e) {
            throw parse_error(source, line_no, e.what());
        }
        auto const first = line.find_first_not_of(" \t");
        auto const last = line.find_last_not_of(" \t");
        if (first == std::string::npos) {
            continue;
        }
        words.push_back(line.substr(first, last - first + 1));
    }
    return words;
}

}  // namespace pqe
