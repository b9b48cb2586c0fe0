#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "biasrank/embeddings.hpp"
#include "biasrank/features.hpp"

namespace biasrank {

/// Lowercased tokens split on Unicode whitespace. Leading and trailing
/// ASCII punctuation is stripped from each token; internal hyphens and
/// apostrophes survive ("state-of-the-art", "isn't"). Empty tokens are
/// dropped, order is preserved.
std::vector<std::string> tokenize(std::string_view text);

/// Plain text from wiki markup: templates and ref bodies removed, links
/// replaced by their labels, tags and quote markers dropped, heading
/// markers stripped, and everything from the first "External links" or
/// "References" heading onward cut. Unbalanced markup is kept as literal
/// text, which makes the function idempotent.
std::string strip_wikitext(std::string_view wikitext);

/// Tokenizes, counts in-vocabulary words, and builds the normalized
/// embedding-sum vector. Throws Errc::empty_feature when no token is in
/// vocabulary (the norm would be zero).
DocumentFeatures featurize(std::string_view text, const EmbeddingTable& table);

/// Character-level edit distance with unit insert/delete/substitute costs.
std::size_t levenshtein(std::string_view a, std::string_view b);

}  // namespace biasrank
