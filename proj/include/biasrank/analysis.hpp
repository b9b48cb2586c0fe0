#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "biasrank/baselines.hpp"
#include "biasrank/records.hpp"

namespace biasrank {

struct PairPrediction {
    std::string pair_id;
    Choice predicted = Choice::before;
    bool correct = false;
};

struct EvalReport {
    std::size_t n_pairs = 0;
    std::size_t n_correct = 0;
    double accuracy = 0.0;
    double ci_half_width = 0.0;  // 95%, normal approximation
    std::size_t n_skipped = 0;
    std::vector<PairPrediction> predictions;
};

/// A predictor names the more-biased member of a pair, or nothing to skip
/// the pair (e.g. a member with no in-vocabulary tokens).
using Predictor = std::function<std::optional<Choice>(const RevisionPair&)>;

/// A prediction is correct when it names the before-text. Skipped pairs
/// are excluded from n_pairs.
EvalReport evaluate_pairwise(const Predictor& predict,
                             const std::vector<RevisionPair>& pairs);

double binomial_ci_half_width(double accuracy, std::size_t n);

/// Percentile of each document within its group, by ascending score:
/// 100*(rank-1)/(m-1) with average ranks for ties; singleton groups get 50.
std::map<std::string, double> percentile_rank_within_groups(
    const std::vector<GroupedDocument>& docs,
    const std::map<std::string, double>& scores);

struct SourceStat {
    double mean = 0.0;
    std::optional<double> ci_half_width;  // absent when n < 2
    std::size_t n = 0;
};

std::map<std::string, SourceStat> mean_percentile_by_source(
    const std::vector<GroupedDocument>& docs,
    const std::map<std::string, double>& percentiles);

enum class PovLabel { pov, npov, unlabeled };

struct RevisionRecord {
    std::string article_id;
    std::int64_t revision_index = 0;
    std::string timestamp;
    std::string text;
    std::int64_t pov_comment_count = 0;  // c_r
    std::int64_t comment_window = 1;     // k; ratio is c_r / (2k)
    std::optional<double> quality_score;
};

/// Labels revisions by corpus-wide quartiles of the comment ratio
/// c_r/(2k): at or above Q3 is POV, at or below Q1 is NPOV. A revision
/// that would satisfy both (degenerate spread) stays unlabeled.
std::vector<PovLabel> label_by_comment_ratio(const std::vector<RevisionRecord>& revisions);

/// Tukey hinges: medians of the lower and upper halves, the halves
/// including the middle element when n is odd.
std::pair<double, double> tukey_quartiles(std::vector<double> values);

/// Pearson correlation of average-tied ranks.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

struct Histogram {
    double min = 0.0;
    double max = 0.0;
    std::vector<std::size_t> counts;  // equal-width bins over [min, max]
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
};

Histogram score_distribution(const std::vector<double>& scores, int bins);

// CSV / JSONL emitters with frozen headers.
void write_eval_csv(const EvalReport& report, std::ostream& out);
void write_eval_jsonl(const EvalReport& report, std::ostream& out);
void write_source_table_csv(const std::map<std::string, SourceStat>& stats,
                            std::ostream& out);
void write_histogram_csv(const Histogram& hist, std::ostream& out);

std::string csv_escape(const std::string& field);

}  // namespace biasrank
