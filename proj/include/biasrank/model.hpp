#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biasrank/embeddings.hpp"
#include "biasrank/features.hpp"
#include "biasrank/linalg.hpp"

namespace biasrank {

enum class Variant { linear, quadratic };

/// The learned scorer. Only W = U + U^T and b are observable through any
/// scoring operation; U itself is the optimization variable. The linear
/// variant keeps U identically zero. An optional corpus mean vector is
/// carried for general word scores.
class BiasModel {
  public:
    BiasModel(Variant variant, int dim);

    int dim() const { return dim_; }
    Variant variant() const { return variant_; }

    const Vec& u() const { return u_; }
    const Vec& b() const { return b_; }
    Vec& u_mut() { return u_; }
    Vec& b_mut() { return b_; }

    const std::optional<Vec>& mean_vector() const { return mean_vector_; }
    void set_mean_vector(Vec mean);
    void clear_mean_vector() { mean_vector_.reset(); }

    void save(const std::string& path) const;
    static BiasModel load(const std::string& path);

  private:
    Variant variant_;
    int dim_;
    Vec u_;  // row-major dim x dim
    Vec b_;
    std::optional<Vec> mean_vector_;
};

struct WordBiasReport {
    std::string word;
    double score = 0.0;
    std::int64_t count = 0;  // occurrences in the queried document; 0 for general scores
};

/// s_i = t̂^T (U + U^T) t̂ + b^T t̂. Independent of document length.
double score_document(const BiasModel& model, const DocumentFeatures& feats);

/// P(i is more biased than j) = sigmoid(s_i - s_j), evaluated in the
/// numerically stable log-sigmoid form.
double pair_probability(const BiasModel& model, const DocumentFeatures& feats_i,
                        const DocumentFeatures& feats_j);

double log_sigmoid(double x);

/// f_i = (U + U^T) t̂_i + b, the direction whose alignment with a word
/// vector gives that word's bias contribution in this document.
Vec query_vector(const BiasModel& model, const DocumentFeatures& feats);

/// B(word, doc) = f_i . v_word. The word need not occur in the document;
/// its count is then reported as zero.
WordBiasReport word_bias_in_context(const BiasModel& model, const DocumentFeatures& feats,
                                    std::string_view word, const EmbeddingTable& table);

/// GB(word) = mean_vector^T (U + U^T) v_word + b^T v_word.
WordBiasReport general_word_bias(const BiasModel& model, std::string_view word,
                                 const EmbeddingTable& table);

/// The n vocabulary words with the largest (or smallest) general score,
/// ties broken lexicographically.
std::vector<WordBiasReport> top_words(const BiasModel& model, const EmbeddingTable& table,
                                      std::size_t n, bool ascending = false);

/// Per-word contextual scores for every word occurring in the document,
/// sorted by score (ties lexicographic).
std::vector<WordBiasReport> explain_document(const BiasModel& model,
                                             const DocumentFeatures& feats,
                                             const EmbeddingTable& table,
                                             bool ascending = false);

}  // namespace biasrank
