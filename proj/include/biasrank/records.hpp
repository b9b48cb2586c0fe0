#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

namespace biasrank {

/// One training example: the revision before a neutrality edit (the more
/// biased member) and the revision after it. Extra JSON fields seen in a
/// pairs file are kept so read-then-write preserves them.
struct RevisionPair {
    std::string pair_id;
    std::string article_id;
    std::string before_text;
    std::string after_text;
    nlohmann::json extras = nlohmann::json::object();
};

/// One scored document with optional grouping metadata (story, outlet,
/// outlet leaning), timestamp, external quality score, and the comment
/// counts used for quartile labeling.
struct GroupedDocument {
    std::string doc_id;
    std::string text;
    std::string group_id;                     // empty when ungrouped
    std::string source_id;                    // empty when unattributed
    std::optional<std::string> source_label;  // left / center / right
    std::optional<std::string> timestamp;     // ISO-8601
    std::optional<double> quality_score;
    std::optional<std::int64_t> pov_comment_count;  // c_r
    std::optional<std::int64_t> comment_window;     // k
    nlohmann::json extras = nlohmann::json::object();
};

/// One revision from an article's history, as fetched or read from disk.
struct RevisionMeta {
    std::string article_id;
    std::string revision_id;
    std::optional<std::string> parent_revision_id;
    std::string timestamp;  // ISO-8601; sorts lexicographically
    std::string comment;
    std::string text;
};

}  // namespace biasrank
