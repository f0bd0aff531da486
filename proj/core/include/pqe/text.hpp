#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace pqe {

enum class script_hint { latin, devanagari, mixed };

[[nodiscard]] std::string_view to_string(script_hint hint) noexcept;

/// Stopword set plus a label. Members are stored normalized, so membership
/// tests take normalized tokens.
class lang_profile {
  public:
    lang_profile() = default;
    lang_profile(std::string name, std::vector<std::string> const& stopwords, script_hint hint);

    /// Stopword file: UTF-8, one token per line, lines starting with '#' are
    /// comments, blank lines ignored.
    static lang_profile from_file(std::filesystem::path const& path, std::string name,
                                  script_hint hint = script_hint::mixed);

    [[nodiscard]] bool is_stopword(std::string_view normalized_token) const;
    [[nodiscard]] std::string const& name() const noexcept { return m_name; }
    [[nodiscard]] script_hint hint() const noexcept { return m_hint; }
    [[nodiscard]] std::size_t stopword_count() const noexcept { return m_stopwords.size(); }
    [[nodiscard]] std::vector<std::string> sorted_stopwords() const;

  private:
    std::string m_name;
    std::unordered_set<std::string> m_stopwords;
    script_hint m_hint = script_hint::mixed;
};

/// Reads a stopword list. Throws input_error on invalid UTF-8 (with the line).
[[nodiscard]] std::vector<std::string> read_stopwords(std::istream& in,
                                                      std::string const& source = "<stream>");

/// Stopword-filtered normalized tokens. The position of a token is its index
/// in `tokens`; positions therefore count only surviving tokens.
struct token_stream {
    std::vector<std::string> tokens;

    [[nodiscard]] std::size_t size() const noexcept { return tokens.size(); }
    [[nodiscard]] bool empty() const noexcept { return tokens.empty(); }
    [[nodiscard]] std::string const& operator[](std::size_t pos) const { return tokens[pos]; }

    friend bool operator==(token_stream const&, token_stream const&) = default;
};

/// Throws encoding_error naming the offset of the first invalid byte.
void validate_utf8(std::string_view bytes);

/// NFC, lowercased. Idempotent. Returns an empty string only for empty input.
[[nodiscard]] std::string normalize(std::string_view token);

/// Splits on Unicode punctuation (P*), separators (Z*) and control characters
/// (Cc), normalizes each piece and drops stopwords. Digits stay inside tokens.
[[nodiscard]] token_stream tokenize(std::string_view raw, lang_profile const& profile);

}  // namespace pqe
