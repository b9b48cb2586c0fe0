#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "biasrank/features.hpp"
#include "biasrank/linalg.hpp"

namespace biasrank {

/// Immutable store of static word vectors keyed by lowercase word.
///
/// The on-disk format is the de facto text format for published vectors:
/// an optional `count dim` header line followed by `word v1 v2 ... vd`
/// lines. Values are kept as 32-bit floats, which round-trip exactly
/// through the 9-significant-digit decimal text written by dump().
class EmbeddingTable {
  public:
    static EmbeddingTable load(const std::string& path,
                               std::optional<int> expected_dim = std::nullopt);

    /// Writes `count dim` header plus entries in sorted word order.
    void dump(const std::string& path) const;

    int dim() const { return dim_; }
    std::size_t size() const { return entries_.size(); }

    /// Case-insensitive lookup; nullptr when out of vocabulary.
    const std::vector<float>* lookup(std::string_view word) const;

    /// Sorted copy of the vocabulary (deterministic iteration order).
    std::vector<std::string> words_sorted() const;

    bool operator==(const EmbeddingTable& other) const;

  private:
    int dim_ = 0;
    std::unordered_map<std::string, std::vector<float>> entries_;
};

/// Mean of the documents' normalized vectors t̂_i. This is the corpus mean
/// that makes the general word score equal the average of the per-document
/// word scores.
Vec corpus_mean_normalized(const std::vector<DocumentFeatures>& docs);

/// Mean of the raw sum vectors t_i, exposed as an alternative weighting
/// for callers that want long documents to count more.
Vec corpus_mean_raw(const std::vector<DocumentFeatures>& docs);

std::string lowercase_ascii(std::string_view s);

}  // namespace biasrank
