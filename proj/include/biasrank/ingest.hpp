#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "biasrank/records.hpp"

namespace biasrank {

/// Ordered set of case-insensitive patterns that mark an edit comment as
/// neutrality-related. The shipped default covers the obvious markers and
/// is fully replaceable by a pattern-per-line file.
class PovRegexSet {
  public:
    static PovRegexSet load(const std::string& path);
    static PovRegexSet default_set();
    static PovRegexSet from_patterns(const std::vector<std::string>& patterns);

    bool matches(std::string_view comment) const;
    std::size_t size() const;
    const std::vector<std::string>& patterns() const;

    PovRegexSet(PovRegexSet&&) noexcept;
    PovRegexSet& operator=(PovRegexSet&&) noexcept;
    ~PovRegexSet();

  private:
    PovRegexSet();
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

bool is_pov_edit(std::string_view comment, const PovRegexSet& regexes);

struct ExtractStats {
    std::size_t scanned = 0;            // revisions examined
    std::size_t pov_matched = 0;        // POV comment with a resolvable parent
    std::size_t distance_filtered = 0;  // dropped by the edit-distance threshold
    std::size_t emitted = 0;
};

/// Emits (stripped parent text, stripped revision text) for every revision
/// whose comment matches and whose parent is present, keeping pairs with
/// edit distance >= min_distance. Revisions of each article must be in
/// timestamp order.
std::vector<RevisionPair> extract_pairs(const std::vector<RevisionMeta>& revisions,
                                        const PovRegexSet& regexes,
                                        std::size_t min_distance = 10,
                                        ExtractStats* stats = nullptr);

// Line-delimited JSON files. Unknown fields survive a read-then-write.
std::vector<RevisionPair> read_pairs(const std::string& path);
void write_pairs(const std::vector<RevisionPair>& pairs, const std::string& path);

std::vector<GroupedDocument> read_corpus(const std::string& path);
void write_corpus(const std::vector<GroupedDocument>& docs, const std::string& path);

std::vector<RevisionMeta> read_revisions(const std::string& path);
void write_revisions(const std::vector<RevisionMeta>& revisions, const std::string& path);

struct FetchOptions {
    std::string endpoint;  // e.g. "https://en.wikipedia.org/w/api.php"
    std::string user_agent = "biasrank/0.1";
    double requests_per_second = 1.0;
    int max_retries = 3;
    std::size_t page_size = 50;       // revisions per request
    std::size_t max_revisions = 0;    // 0 = unlimited
    std::string checkpoint_path;      // continuation token recorded here
    std::string cache_dir;            // raw responses cached here when set
};

/// Pages through the standard MediaWiki revisions query for one article,
/// honoring continuation tokens, rate limits, and retry with backoff on
/// transient failures.
std::vector<RevisionMeta> fetch_revisions(const std::string& article_title,
                                          const FetchOptions& options);

}  // namespace biasrank
