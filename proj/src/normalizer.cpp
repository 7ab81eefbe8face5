#include "tsili/normalizer.hpp"

namespace tsili {

namespace {

inline bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

}  // namespace

NormalizedCode normalize(std::string_view raw, const LanguageProfile& profile,
                         WarningLog* warnings) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;

    auto warn = [&](const char* code, const char* detail) {
        if (warnings != nullptr) warnings->emit(code, detail);
    };
    // Whitespace runs and removed comments both become a single interior
    // space; leading/trailing runs vanish because the flag is only flushed
    // in front of a real character.
    auto emit = [&](char c) {
        if (pending_space && !out.empty()) out += ' ';
        pending_space = false;
        out += c;
    };

    std::size_t i = 0;
    const std::size_t n = raw.size();
    auto starts_with = [&](const std::string& marker) {
        return !marker.empty() && raw.compare(i, marker.size(), marker) == 0;
    };
    // Copies a quoted literal verbatim, contents untouched. The opening
    // quote goes through emit() so preceding whitespace still collapses.
    auto copy_literal = [&](char quote, const char* what) {
        emit(quote);
        ++i;
        while (i < n) {
            char c = raw[i];
            if (c == profile.escape_char && i + 1 < n) {
                out += c;
                out += raw[i + 1];
                i += 2;
                continue;
            }
            out += c;
            ++i;
            if (c == quote) return;
        }
        warn("UNTERMINATED_LITERAL", what);
    };

    while (i < n) {
        char c = raw[i];
        if (is_ws(c)) {
            pending_space = true;
            ++i;
            continue;
        }
        if (starts_with(profile.line_comment)) {
            i += profile.line_comment.size();
            while (i < n && raw[i] != '\n') ++i;
            pending_space = true;
            continue;
        }
        if (starts_with(profile.block_comment_open)) {
            std::size_t close =
                raw.find(profile.block_comment_close, i + profile.block_comment_open.size());
            if (close == std::string_view::npos) {
                warn("UNTERMINATED_COMMENT", "block comment runs to end of input");
                i = n;
            } else {
                i = close + profile.block_comment_close.size();
            }
            pending_space = true;
            continue;
        }
        if (c == '"' && profile.double_quoted_strings) {
            copy_literal('"', "string literal runs to end of input");
            continue;
        }
        if (c == '\'' && profile.single_quoted_chars) {
            copy_literal('\'', "character literal runs to end of input");
            continue;
        }
        emit(c);
        ++i;
    }

    NormalizedCode result;
    result.text = std::move(out);
    result.digest = sha256(result.text);
    result.empty = result.text.empty();
    return result;
}

Sha256Digest digest_of(const NormalizedCode& code) { return sha256(code.text); }

}  // namespace tsili
