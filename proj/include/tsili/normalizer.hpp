#pragma once

#include <string>
#include <string_view>

#include "tsili/common.hpp"
#include "tsili/sha256.hpp"

namespace tsili {

// Comment and literal syntax used by the canonicalizing scanner. The default
// covers the C family (C, C++, Java, C#, JavaScript): `//` line comments,
// non-nesting `/* */` block comments, double-quoted strings and single-quoted
// character literals with backslash escapes.
struct LanguageProfile {
    std::string line_comment = "//";
    std::string block_comment_open = "/*";
    std::string block_comment_close = "*/";
    bool double_quoted_strings = true;
    bool single_quoted_chars = true;
    char escape_char = '\\';
};

// Canonical code form used for cross-version equivalence comparison.
// `text` has no comments, no newlines and no runs of consecutive whitespace;
// it is trimmed at both ends, so "" is the canonical empty form.
struct NormalizedCode {
    std::string text;
    Sha256Digest digest;
    bool empty = false;
};

/// Single left-to-right scan over `raw`: comments are replaced by one space,
/// every whitespace run (space, tab, newline, carriage return) outside
/// string/char literals collapses to one space, and literal contents are
/// preserved verbatim — including comment-lookalike substrings. Unterminated
/// block comments or literals normalize to end of input with a warning.
NormalizedCode normalize(std::string_view raw, const LanguageProfile& profile = {},
                         WarningLog* warnings = nullptr);

Sha256Digest digest_of(const NormalizedCode& code);

}  // namespace tsili
