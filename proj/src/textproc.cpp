#include "biasrank/textproc.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>

#include "biasrank/error.hpp"

namespace biasrank {

namespace {

// Decodes the UTF-8 codepoint at s[i]; advances i past it. Invalid bytes
// are consumed one at a time and returned as-is.
std::uint32_t decode_utf8(std::string_view s, std::size_t& i) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    std::uint32_t cp = c;
    if (c >= 0xF0) {
        len = 4;
        cp = c & 0x07u;
    } else if (c >= 0xE0) {
        len = 3;
        cp = c & 0x0Fu;
    } else if (c >= 0xC0) {
        len = 2;
        cp = c & 0x1Fu;
    }
    if (len == 1 || i + len > s.size()) {
        ++i;
        return cp;
    }
    for (std::size_t k = 1; k < len; ++k) {
        const unsigned char cont = static_cast<unsigned char>(s[i + k]);
        if ((cont & 0xC0u) != 0x80u) {
            ++i;
            return c;
        }
        cp = (cp << 6) | (cont & 0x3Fu);
    }
    i += len;
    return cp;
}

bool is_unicode_space(std::uint32_t cp) {
    switch (cp) {
        case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D:
        case 0x20: case 0x85: case 0xA0: case 0x1680:
        case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

bool is_ascii_alnum(char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

// Strips leading/trailing ASCII punctuation; non-ASCII bytes count as word
// characters so accented words keep their edges.
std::string_view strip_edges(std::string_view token) {
    std::size_t begin = 0;
    std::size_t end = token.size();
    while (begin < end) {
        const unsigned char c = static_cast<unsigned char>(token[begin]);
        if (c >= 0x80 || is_ascii_alnum(token[begin])) break;
        ++begin;
    }
    while (end > begin) {
        const unsigned char c = static_cast<unsigned char>(token[end - 1]);
        if (c >= 0x80 || is_ascii_alnum(token[end - 1])) break;
        --end;
    }
    return token.substr(begin, end - begin);
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t probe = i;
        if (is_unicode_space(decode_utf8(text, probe))) {
            i = probe;
            continue;
        }
        const std::size_t start = i;
        while (i < text.size()) {
            probe = i;
            if (is_unicode_space(decode_utf8(text, probe))) break;
            i = probe;
        }
        const auto word = strip_edges(text.substr(start, i - start));
        if (!word.empty()) {
            std::string lowered;
            lowered.reserve(word.size());
            for (char c : word) {
                lowered.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
            }
            tokens.push_back(std::move(lowered));
        }
    }
    return tokens;
}

namespace {

bool iequal(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i]))) {
            return false;
        }
    }
    return true;
}

bool istarts_with(std::string_view s, std::size_t pos, std::string_view prefix) {
    if (pos + prefix.size() > s.size()) return false;
    return iequal(s.substr(pos, prefix.size()), prefix);
}

std::string_view trim_view(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool is_excluded_heading(std::string_view title) {
    const auto t = trim_view(title);
    return iequal(t, "external links") || iequal(t, "references");
}

// Finds the matching closer for a two-character bracket pair starting at
// `open_pos` (which points at the opener). Returns npos when unbalanced.
std::size_t find_matching(std::string_view s, std::size_t open_pos,
                          std::string_view opener, std::string_view closer) {
    int depth = 0;
    std::size_t i = open_pos;
    while (i < s.size()) {
        if (s.compare(i, opener.size(), opener) == 0) {
            ++depth;
            i += opener.size();
        } else if (s.compare(i, closer.size(), closer) == 0) {
            --depth;
            if (depth == 0) return i;
            i += closer.size();
        } else {
            ++i;
        }
    }
    return std::string_view::npos;
}

// Splits link content at top-level pipes and returns the last segment
// (the display label); the whole content when there is no pipe.
std::string_view link_label(std::string_view content) {
    int depth = 0;
    std::size_t last_pipe = std::string_view::npos;
    for (std::size_t i = 0; i < content.size(); ++i) {
        if (content.compare(i, 2, "[[") == 0 || content.compare(i, 2, "{{") == 0) {
            ++depth;
            ++i;
        } else if (content.compare(i, 2, "]]") == 0 || content.compare(i, 2, "}}") == 0) {
            --depth;
            ++i;
        } else if (content[i] == '|' && depth == 0) {
            last_pipe = i;
        }
    }
    return last_pipe == std::string_view::npos ? content : content.substr(last_pipe + 1);
}

bool is_url_start(std::string_view s, std::size_t pos) {
    return istarts_with(s, pos, "http://") || istarts_with(s, pos, "https://") ||
           istarts_with(s, pos, "ftp://");
}

// One scan over the markup; returns false when an excluded section heading
// was reached and the caller should stop emitting.
bool strip_into(std::string_view s, std::string& out) {
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (c == '<') {
            if (s.compare(i, 4, "<!--") == 0) {
                const auto end = s.find("-->", i + 4);
                if (end != std::string_view::npos) {
                    i = end + 3;
                    continue;
                }
            } else if (istarts_with(s, i, "<ref") &&
                       (i + 4 == s.size() || !is_ascii_alnum(s[i + 4]))) {
                const auto tag_end = s.find('>', i);
                if (tag_end != std::string_view::npos) {
                    if (s[tag_end - 1] == '/') {  // self-closing
                        i = tag_end + 1;
                        continue;
                    }
                    std::size_t close = std::string_view::npos;
                    for (std::size_t k = tag_end; k + 6 <= s.size(); ++k) {
                        if (istarts_with(s, k, "</ref")) {
                            const auto gt = s.find('>', k);
                            if (gt != std::string_view::npos) close = gt;
                            break;
                        }
                    }
                    if (close != std::string_view::npos) {
                        i = close + 1;
                        continue;
                    }
                }
            } else if (i + 1 < s.size() &&
                       (std::isalpha(static_cast<unsigned char>(s[i + 1])) || s[i + 1] == '/')) {
                const auto gt = s.find('>', i);
                const auto lt = s.find('<', i + 1);
                if (gt != std::string_view::npos && (lt == std::string_view::npos || gt < lt)) {
                    i = gt + 1;  // drop the tag, keep its content
                    continue;
                }
            }
            out.push_back(c);
            ++i;
        } else if (s.compare(i, 2, "{{") == 0) {
            const auto close = find_matching(s.substr(i), 0, "{{", "}}");
            if (close != std::string_view::npos) {
                i += close + 2;
            } else {
                out.append("{{");
                i += 2;
            }
        } else if (s.compare(i, 2, "[[") == 0) {
            const auto close = find_matching(s.substr(i), 0, "[[", "]]");
            if (close != std::string_view::npos) {
                const auto content = s.substr(i + 2, close - 2);
                if (!strip_into(link_label(content), out)) return false;
                i += close + 2;
            } else {
                out.append("[[");
                i += 2;
            }
        } else if (c == '[' && is_url_start(s, i + 1)) {
            const auto close = s.find(']', i);
            if (close != std::string_view::npos) {
                auto content = s.substr(i + 1, close - i - 1);
                const auto sp = content.find_first_of(" \t");
                if (sp != std::string_view::npos) {
                    if (!strip_into(trim_view(content.substr(sp + 1)), out)) return false;
                }
                i = close + 1;
            } else {
                out.push_back('[');
                ++i;
            }
        } else if (c == '\'' && s.compare(i, 2, "''") == 0) {
            std::size_t run = 2;
            while (i + run < s.size() && s[i + run] == '\'') ++run;
            if (run >= 5) {
                i += 5;  // bold italic
            } else if (run >= 3) {
                i += 3;  // bold
            } else {
                i += 2;  // italic
            }
        } else if (c == '=' && s.compare(i, 2, "==") == 0) {
            std::size_t open_run = 2;
            while (i + open_run < s.size() && s[i + open_run] == '=') ++open_run;
            const auto line_end = std::min(s.find('\n', i), s.size());
            std::size_t close = std::string_view::npos;
            for (std::size_t k = i + open_run; k + 1 < line_end; ++k) {
                if (s[k] == '=' && s[k + 1] == '=') {
                    close = k;
                    break;
                }
            }
            if (close != std::string_view::npos) {
                const auto title = s.substr(i + open_run, close - i - open_run);
                if (is_excluded_heading(title)) return false;
                if (!strip_into(trim_view(title), out)) return false;
                std::size_t close_run = 0;
                while (close + close_run < s.size() && s[close + close_run] == '=') ++close_run;
                i = close + close_run;
            } else {
                out.append(s.substr(i, open_run));
                i += open_run;
            }
        } else {
            out.push_back(c);
            ++i;
        }
    }
    return true;
}

}  // namespace

std::string strip_wikitext(std::string_view wikitext) {
    std::string out;
    out.reserve(wikitext.size());
    strip_into(wikitext, out);
    const auto trimmed = trim_view(out);
    return std::string(trimmed);
}

DocumentFeatures featurize(std::string_view text, const EmbeddingTable& table) {
    DocumentFeatures feats;
    const auto tokens = tokenize(text);
    feats.total_tokens = static_cast<std::int64_t>(tokens.size());
    for (const auto& token : tokens) {
        if (table.lookup(token) != nullptr) {
            ++feats.counts[token];
            ++feats.in_vocab_tokens;
        }
    }

    const auto d = static_cast<std::size_t>(table.dim());
    feats.sum_vector.assign(d, 0.0);
    for (const auto& [word, count] : feats.counts) {  // lexicographic order
        const auto* v = table.lookup(word);
        const auto weight = static_cast<double>(count);
        for (std::size_t i = 0; i < d; ++i) {
            feats.sum_vector[i] += weight * static_cast<double>((*v)[i]);
        }
    }
    feats.norm = norm(feats.sum_vector);
    if (feats.norm == 0.0) {
        raise(Errc::empty_feature,
              "document has no in-vocabulary tokens (or they cancel exactly)");
    }
    feats.unit_vector.resize(d);
    for (std::size_t i = 0; i < d; ++i) feats.unit_vector[i] = feats.sum_vector[i] / feats.norm;
    return feats;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
    // Common affixes never change the distance; trimming them makes the
    // typical revision-pair call cheap.
    std::size_t prefix = 0;
    while (prefix < a.size() && prefix < b.size() && a[prefix] == b[prefix]) ++prefix;
    a.remove_prefix(prefix);
    b.remove_prefix(prefix);
    std::size_t suffix = 0;
    while (suffix < a.size() && suffix < b.size() &&
           a[a.size() - 1 - suffix] == b[b.size() - 1 - suffix]) {
        ++suffix;
    }
    a.remove_suffix(suffix);
    b.remove_suffix(suffix);

    if (a.empty()) return b.size();
    if (b.empty()) return a.size();
    if (a.size() < b.size()) std::swap(a, b);

    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t saved = row[j];
            if (a[i - 1] == b[j - 1]) {
                row[j] = diag;
            } else {
                row[j] = 1 + std::min({row[j], row[j - 1], diag});
            }
            diag = saved;
        }
    }
    return row[b.size()];
}

}  // namespace biasrank
