#include "biasrank/train.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <random>

#include <json.hpp>

#include "biasrank/error.hpp"
#include "biasrank/parallel.hpp"
#include "biasrank/textproc.hpp"

namespace biasrank {

namespace {

// In-place Fisher-Yates with explicit draws so the permutation depends
// only on the seed, not on the standard library.
template <typename T>
void seeded_shuffle(std::vector<T>& items, std::mt19937_64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(items[i - 1], items[j]);
    }
}

struct FeaturizedCorpus {
    std::vector<FeaturizedPair> pairs;
    std::size_t skipped = 0;
};

FeaturizedCorpus featurize_pairs(const std::vector<RevisionPair>& pairs,
                                 const EmbeddingTable& table) {
    std::vector<std::optional<FeaturizedPair>> slots(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t i) {
        try {
            FeaturizedPair fp{featurize(pairs[i].before_text, table),
                              featurize(pairs[i].after_text, table)};
            slots[i] = std::move(fp);
        } catch (const Error& e) {
            if (e.code() != Errc::empty_feature) throw;
        }
    });
    FeaturizedCorpus out;
    out.pairs.reserve(pairs.size());
    for (auto& slot : slots) {
        if (slot) {
            out.pairs.push_back(std::move(*slot));
        } else {
            ++out.skipped;
        }
    }
    return out;
}

double accuracy_with_coin(const BiasModel& model, const std::vector<FeaturizedPair>& pairs,
                          std::mt19937_64& rng) {
    if (pairs.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::size_t correct = 0;
    for (const auto& fp : pairs) {
        const double sb = score_document(model, fp.before);
        const double sa = score_document(model, fp.after);
        bool predicted_before;
        if (sb == sa) {
            predicted_before = (rng() & 1u) == 0;
        } else {
            predicted_before = sb > sa;
        }
        if (predicted_before) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(pairs.size());
}

}  // namespace

Splits split_by_article(const std::vector<RevisionPair>& pairs, const SplitSpec& spec) {
    if (pairs.empty()) raise(Errc::empty_input, "no pairs to split");
    const double sum = spec.train_fraction + spec.valid_fraction + spec.test_fraction;
    if (std::abs(sum - 1.0) > 1e-9) {
        raise(Errc::invalid_argument, "split fractions must sum to 1");
    }
    for (double f : {spec.train_fraction, spec.valid_fraction, spec.test_fraction}) {
        if (!(f > 0.0 && f < 1.0)) {
            raise(Errc::invalid_argument, "split fractions must lie in (0,1)");
        }
    }

    std::vector<std::string> articles;
    std::vector<std::vector<std::size_t>> article_pairs;  // indices into `pairs`
    {
        std::map<std::string, std::size_t> index;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            auto [it, inserted] = index.emplace(pairs[i].article_id, articles.size());
            if (inserted) {
                articles.push_back(pairs[i].article_id);
                article_pairs.emplace_back();
            }
            article_pairs[it->second].push_back(i);
        }
    }

    std::vector<std::size_t> order(articles.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::mt19937_64 rng(spec.seed);
    seeded_shuffle(order, rng);

    const double total = static_cast<double>(pairs.size());
    const double targets[3] = {spec.train_fraction * total, spec.valid_fraction * total,
                               spec.test_fraction * total};
    double counts[3] = {0.0, 0.0, 0.0};

    Splits splits;
    std::vector<RevisionPair>* buckets[3] = {&splits.train, &splits.valid, &splits.test};
    for (std::size_t article : order) {
        int target_split = 2;
        for (int s = 0; s < 3; ++s) {
            if (counts[s] < targets[s]) {
                target_split = s;
                break;
            }
        }
        for (std::size_t idx : article_pairs[article]) {
            buckets[target_split]->push_back(pairs[idx]);
        }
        counts[target_split] += static_cast<double>(article_pairs[article].size());
    }
    return splits;
}

double pair_log_likelihood(const BiasModel& model, const std::vector<FeaturizedPair>& pairs) {
    double ll = 0.0;
    for (const auto& fp : pairs) {
        const double diff =
            score_document(model, fp.before) - score_document(model, fp.after);
        ll += log_sigmoid(diff);
    }
    return ll;
}

LogLikelihood pair_log_likelihood(const BiasModel& model,
                                  const std::vector<RevisionPair>& pairs,
                                  const EmbeddingTable& table) {
    auto corpus = featurize_pairs(pairs, table);
    if (corpus.pairs.empty()) raise(Errc::no_usable_pairs, "every pair has an all-OOV member");
    LogLikelihood out;
    out.value = pair_log_likelihood(model, corpus.pairs);
    out.n_used = corpus.pairs.size();
    out.n_skipped = corpus.skipped;
    return out;
}

Gradient gradient(const BiasModel& model, const std::vector<FeaturizedPair>& batch) {
    if (batch.empty()) raise(Errc::empty_batch, "gradient over empty batch");
    const auto d = static_cast<std::size_t>(model.dim());
    Gradient g;
    g.du.assign(d * d, 0.0);
    g.db.assign(d, 0.0);

    for (const auto& fp : batch) {
        const double sb = score_document(model, fp.before);
        const double sa = score_document(model, fp.after);
        const double p = std::exp(log_sigmoid(sb - sa));
        const double coef = 1.0 - p;
        const Vec& tb = fp.before.unit_vector;
        const Vec& ta = fp.after.unit_vector;
        for (std::size_t i = 0; i < d; ++i) g.db[i] += coef * (tb[i] - ta[i]);
        if (model.variant() == Variant::quadratic) {
            for (std::size_t r = 0; r < d; ++r) {
                const double cb = 2.0 * coef * tb[r];
                const double ca = 2.0 * coef * ta[r];
                for (std::size_t c = 0; c < d; ++c) {
                    g.du[r * d + c] += cb * tb[c] - ca * ta[c];
                }
            }
        }
    }
    return g;
}

void TrainingLog::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(Errc::io, "cannot open for writing: " + path);
    nlohmann::json head{{"objective", objective},
                        {"regularization", regularization},
                        {"best_epoch", best_epoch},
                        {"skipped_train_pairs", skipped_train_pairs},
                        {"skipped_valid_pairs", skipped_valid_pairs}};
    out << head.dump() << '\n';
    for (const auto& rec : epochs) {
        nlohmann::json line{{"epoch", rec.epoch},
                            {"train_ll", rec.train_ll},
                            {"skipped_pairs", rec.skipped_pairs}};
        if (std::isnan(rec.valid_accuracy)) {
            line["valid_accuracy"] = nullptr;
        } else {
            line["valid_accuracy"] = rec.valid_accuracy;
        }
        out << line.dump() << '\n';
    }
    if (!out) raise(Errc::io, "write failed: " + path);
}

FitResult fit(const std::vector<RevisionPair>& pairs_train,
              const std::vector<RevisionPair>& pairs_valid,
              const EmbeddingTable& table, const TrainConfig& config) {
    if (pairs_train.empty()) raise(Errc::empty_train_set, "no training pairs");
    if (config.learning_rate < 0.0) raise(Errc::invalid_argument, "negative learning rate");
    if (config.batch_size == 0) raise(Errc::invalid_argument, "batch size must be positive");

    auto train = featurize_pairs(pairs_train, table);
    if (train.pairs.empty()) {
        raise(Errc::no_usable_pairs, "every training pair has an all-OOV member");
    }
    auto valid = featurize_pairs(pairs_valid, table);

    BiasModel model(config.variant, table.dim());
    const auto d = static_cast<std::size_t>(model.dim());

    TrainingLog log;
    log.skipped_train_pairs = train.skipped;
    log.skipped_valid_pairs = valid.skipped;

    Vec best_u = model.u();
    Vec best_b = model.b();
    double best_accuracy = -1.0;
    std::size_t best_epoch = 0;

    std::mt19937_64 shuffle_rng(config.seed);
    std::vector<std::size_t> order(train.pairs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    std::vector<FeaturizedPair> batch;
    for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
        if (config.shuffle) seeded_shuffle(order, shuffle_rng);

        for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
            const std::size_t stop = std::min(order.size(), start + config.batch_size);
            batch.clear();
            for (std::size_t k = start; k < stop; ++k) batch.push_back(train.pairs[order[k]]);
            const Gradient g = gradient(model, batch);
            if (model.variant() == Variant::quadratic) {
                Vec& u = model.u_mut();
                for (std::size_t i = 0; i < d * d; ++i) u[i] += config.learning_rate * g.du[i];
            }
            Vec& b = model.b_mut();
            for (std::size_t i = 0; i < d; ++i) b[i] += config.learning_rate * g.db[i];
        }

        std::mt19937_64 eval_rng(config.seed ^ (0x517cc1b727220a95ULL + epoch));
        EpochRecord rec;
        rec.epoch = epoch;
        rec.train_ll = pair_log_likelihood(model, train.pairs);
        rec.valid_accuracy = accuracy_with_coin(model, valid.pairs, eval_rng);
        rec.skipped_pairs = train.skipped;
        log.epochs.push_back(rec);

        if (valid.pairs.empty() || rec.valid_accuracy >= best_accuracy) {
            best_accuracy = rec.valid_accuracy;
            best_u = model.u();
            best_b = model.b();
            best_epoch = epoch;
        }
    }

    model.u_mut() = std::move(best_u);
    model.b_mut() = std::move(best_b);
    log.best_epoch = best_epoch;
    return FitResult{std::move(model), std::move(log)};
}

}  // namespace biasrank
