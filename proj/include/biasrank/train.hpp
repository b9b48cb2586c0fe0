#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "biasrank/embeddings.hpp"
#include "biasrank/features.hpp"
#include "biasrank/model.hpp"
#include "biasrank/records.hpp"

namespace biasrank {

struct TrainConfig {
    double learning_rate = 0.01;
    std::size_t batch_size = 256;
    std::size_t epochs = 10;
    std::uint64_t seed = 42;
    Variant variant = Variant::quadratic;
    bool shuffle = true;
};

struct SplitSpec {
    double train_fraction = 0.90;
    double valid_fraction = 0.05;
    double test_fraction = 0.05;
    std::uint64_t seed = 42;
};

struct Splits {
    std::vector<RevisionPair> train;
    std::vector<RevisionPair> valid;
    std::vector<RevisionPair> test;
};

/// Shuffles articles (not pairs) with seeded randomness and assigns each
/// article's pairs wholesale to the first split still below its target
/// pair count. Deterministic for a fixed seed.
Splits split_by_article(const std::vector<RevisionPair>& pairs, const SplitSpec& spec);

struct FeaturizedPair {
    DocumentFeatures before;
    DocumentFeatures after;
};

struct LogLikelihood {
    double value = 0.0;
    std::size_t n_used = 0;
    std::size_t n_skipped = 0;  // pairs with an all-out-of-vocabulary member
};

LogLikelihood pair_log_likelihood(const BiasModel& model,
                                  const std::vector<RevisionPair>& pairs,
                                  const EmbeddingTable& table);

double pair_log_likelihood(const BiasModel& model,
                           const std::vector<FeaturizedPair>& pairs);

struct Gradient {
    Vec du;  // row-major d x d; zero for the linear variant
    Vec db;
};

/// Gradient of the batch log-likelihood. For each pair with
/// p = sigmoid(s_before - s_after), accumulates
/// (1-p) * (2 t̂_b t̂_b^T - 2 t̂_a t̂_a^T) into du and (1-p)(t̂_b - t̂_a)
/// into db.
Gradient gradient(const BiasModel& model, const std::vector<FeaturizedPair>& batch);

struct EpochRecord {
    std::size_t epoch = 0;
    double train_ll = 0.0;
    double valid_accuracy = 0.0;  // NaN when no usable validation pairs
    std::size_t skipped_pairs = 0;
};

struct TrainingLog {
    std::vector<EpochRecord> epochs;
    std::size_t skipped_train_pairs = 0;
    std::size_t skipped_valid_pairs = 0;
    std::size_t best_epoch = 0;  // 0 = initial parameters
    std::string objective = "log_likelihood";
    std::string regularization = "none";

    /// Line-delimited JSON: one settings record, then one record per epoch.
    void write(const std::string& path) const;
};

struct FitResult {
    BiasModel model;
    TrainingLog log;
};

/// Mini-batch stochastic gradient ascent from zero-initialized parameters
/// with a constant learning rate. Features are computed once up front.
/// Returns the parameters from the epoch with the highest validation
/// accuracy (ties resolved toward the latest epoch). Deterministic for a
/// fixed seed.
FitResult fit(const std::vector<RevisionPair>& pairs_train,
              const std::vector<RevisionPair>& pairs_valid,
              const EmbeddingTable& table, const TrainConfig& config);

}  // namespace biasrank
