#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "biasrank/linalg.hpp"

namespace biasrank {

/// Bag-of-words features of one document: in-vocabulary token counts, the
/// count-weighted sum of embedding vectors, its Euclidean norm, and the
/// normalized direction vector. The sum is accumulated in lexicographic
/// word order so that identical bags always produce identical floats.
struct DocumentFeatures {
    std::map<std::string, std::int64_t> counts;  // in-vocabulary words only
    Vec sum_vector;
    double norm = 0.0;
    Vec unit_vector;
    std::int64_t in_vocab_tokens = 0;
    std::int64_t total_tokens = 0;

    std::size_t dim() const { return sum_vector.size(); }
};

}  // namespace biasrank
