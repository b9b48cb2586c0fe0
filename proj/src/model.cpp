#include "biasrank/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>

#include "biasrank/error.hpp"

namespace biasrank {

namespace {

constexpr char kMagicPrefix[] = "BIASRANK";
constexpr char kVersion = '1';

std::uint32_t crc32(const std::string& data) {
    static const auto table = [] {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t n = 0; n < 256; ++n) {
            std::uint32_t c = n;
            for (int k = 0; k < 8; ++k) c = (c & 1u) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
            t[n] = c;
        }
        return t;
    }();
    std::uint32_t c = 0xFFFFFFFFu;
    for (unsigned char byte : data) c = table[(c ^ byte) & 0xFFu] ^ (c >> 8);
    return c ^ 0xFFFFFFFFu;
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
}

void put_f64(std::string& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFFu));
}

class Reader {
  public:
    Reader(const std::string& data, std::size_t pos) : data_(data), pos_(pos) {}

    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(data_[pos_++]);
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) {
            v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
        }
        pos_ += 4;
        return v;
    }
    double f64() {
        need(8);
        std::uint64_t bits = 0;
        for (int i = 0; i < 8; ++i) {
            bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
        }
        pos_ += 8;
        double v;
        std::memcpy(&v, &bits, sizeof(v));
        return v;
    }
    std::size_t pos() const { return pos_; }

  private:
    void need(std::size_t n) const {
        if (pos_ + n > data_.size()) raise(Errc::corrupt_file, "model file truncated");
    }
    const std::string& data_;
    std::size_t pos_;
};

}  // namespace

BiasModel::BiasModel(Variant variant, int dim)
    : variant_(variant), dim_(dim) {
    if (dim < 1) raise(Errc::invalid_argument, "model dimension must be positive");
    u_.assign(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), 0.0);
    b_.assign(static_cast<std::size_t>(dim), 0.0);
}

void BiasModel::set_mean_vector(Vec mean) {
    if (mean.size() != static_cast<std::size_t>(dim_)) {
        raise(Errc::dimension_mismatch, "mean vector dimension differs from model");
    }
    mean_vector_ = std::move(mean);
}

void BiasModel::save(const std::string& path) const {
    std::string payload;
    payload.push_back(variant_ == Variant::linear ? 0 : 1);
    put_u32(payload, static_cast<std::uint32_t>(dim_));
    for (double v : u_) put_f64(payload, v);
    for (double v : b_) put_f64(payload, v);
    payload.push_back(mean_vector_ ? 1 : 0);
    if (mean_vector_) {
        for (double v : *mean_vector_) put_f64(payload, v);
    }

    std::ofstream out(path, std::ios::binary);
    if (!out) raise(Errc::io, "cannot open for writing: " + path);
    out.write(kMagicPrefix, 8);
    out.put(kVersion);
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    std::string crc;
    put_u32(crc, crc32(payload));
    out.write(crc.data(), 4);
    if (!out) raise(Errc::io, "write failed: " + path);
}

BiasModel BiasModel::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::io, "cannot open model file: " + path);
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    if (data.size() < 9 + 4 || data.compare(0, 8, kMagicPrefix) != 0) {
        raise(Errc::corrupt_file, "not a model file (bad magic): " + path);
    }
    if (data[8] != kVersion) {
        raise(Errc::version_mismatch,
              std::string("unsupported model format version '") + data[8] + "'");
    }
    const std::string payload = data.substr(9, data.size() - 9 - 4);
    Reader crc_reader(data, data.size() - 4);
    if (crc_reader.u32() != crc32(payload)) {
        raise(Errc::corrupt_file, "model checksum mismatch: " + path);
    }

    Reader r(data, 9);
    const auto variant_tag = r.u8();
    if (variant_tag > 1) raise(Errc::corrupt_file, "unknown variant tag");
    const auto dim = r.u32();
    if (dim == 0 || dim > (1u << 20)) raise(Errc::corrupt_file, "implausible dimension");

    BiasModel model(variant_tag == 0 ? Variant::linear : Variant::quadratic,
                    static_cast<int>(dim));
    for (double& v : model.u_) v = r.f64();
    for (double& v : model.b_) v = r.f64();
    if (r.u8() != 0) {
        Vec mean(dim);
        for (double& v : mean) v = r.f64();
        model.mean_vector_ = std::move(mean);
    }
    if (r.pos() != data.size() - 4) raise(Errc::corrupt_file, "trailing bytes in model file");

    if (model.variant_ == Variant::linear &&
        std::any_of(model.u_.begin(), model.u_.end(), [](double v) { return v != 0.0; })) {
        raise(Errc::corrupt_file, "linear model with nonzero interaction matrix");
    }
    return model;
}

namespace {

void check_scorable(const BiasModel& model, const DocumentFeatures& feats) {
    if (feats.dim() != static_cast<std::size_t>(model.dim())) {
        raise(Errc::dimension_mismatch,
              "feature dimension " + std::to_string(feats.dim()) +
                  " differs from model dimension " + std::to_string(model.dim()));
    }
    if (!(feats.norm > 0.0)) raise(Errc::zero_norm_document, "document has zero-norm features");
}

}  // namespace

double score_document(const BiasModel& model, const DocumentFeatures& feats) {
    check_scorable(model, feats);
    const Vec wt = symmetrized_matvec(model.u(), feats.unit_vector);
    return dot(feats.unit_vector, wt) + dot(model.b(), feats.unit_vector);
}

double log_sigmoid(double x) {
    return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

double pair_probability(const BiasModel& model, const DocumentFeatures& feats_i,
                        const DocumentFeatures& feats_j) {
    const double diff = score_document(model, feats_i) - score_document(model, feats_j);
    return std::exp(log_sigmoid(diff));
}

Vec query_vector(const BiasModel& model, const DocumentFeatures& feats) {
    check_scorable(model, feats);
    Vec f = symmetrized_matvec(model.u(), feats.unit_vector);
    axpy(1.0, model.b(), f);
    return f;
}

WordBiasReport word_bias_in_context(const BiasModel& model, const DocumentFeatures& feats,
                                    std::string_view word, const EmbeddingTable& table) {
    const auto* v = table.lookup(word);
    if (v == nullptr) {
        raise(Errc::out_of_vocabulary, "word not in vocabulary: " + std::string(word));
    }
    const Vec f = query_vector(model, feats);
    double score = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) score += f[i] * static_cast<double>((*v)[i]);

    WordBiasReport report;
    report.word = lowercase_ascii(word);
    report.score = score;
    auto it = feats.counts.find(report.word);
    report.count = it == feats.counts.end() ? 0 : it->second;
    return report;
}

WordBiasReport general_word_bias(const BiasModel& model, std::string_view word,
                                 const EmbeddingTable& table) {
    if (!model.mean_vector()) {
        raise(Errc::mean_vector_missing, "model has no corpus mean vector");
    }
    const auto* v = table.lookup(word);
    if (v == nullptr) {
        raise(Errc::out_of_vocabulary, "word not in vocabulary: " + std::string(word));
    }
    Vec vw(v->size());
    for (std::size_t i = 0; i < v->size(); ++i) vw[i] = static_cast<double>((*v)[i]);
    const Vec wv = symmetrized_matvec(model.u(), vw);

    WordBiasReport report;
    report.word = lowercase_ascii(word);
    report.score = dot(*model.mean_vector(), wv) + dot(model.b(), vw);
    report.count = 0;
    return report;
}

namespace {

void sort_reports(std::vector<WordBiasReport>& reports, bool ascending) {
    std::sort(reports.begin(), reports.end(),
              [ascending](const WordBiasReport& a, const WordBiasReport& b) {
                  if (a.score != b.score) return ascending ? a.score < b.score : a.score > b.score;
                  return a.word < b.word;
              });
}

}  // namespace

std::vector<WordBiasReport> top_words(const BiasModel& model, const EmbeddingTable& table,
                                      std::size_t n, bool ascending) {
    if (!model.mean_vector()) {
        raise(Errc::mean_vector_missing, "model has no corpus mean vector");
    }
    std::vector<WordBiasReport> reports;
    reports.reserve(table.size());
    for (const auto& word : table.words_sorted()) {
        reports.push_back(general_word_bias(model, word, table));
    }
    sort_reports(reports, ascending);
    if (reports.size() > n) reports.resize(n);
    return reports;
}

std::vector<WordBiasReport> explain_document(const BiasModel& model,
                                             const DocumentFeatures& feats,
                                             const EmbeddingTable& table, bool ascending) {
    check_scorable(model, feats);
    const Vec f = query_vector(model, feats);
    std::vector<WordBiasReport> reports;
    reports.reserve(feats.counts.size());
    for (const auto& [word, count] : feats.counts) {
        const auto* v = table.lookup(word);
        double score = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) score += f[i] * static_cast<double>((*v)[i]);
        reports.push_back({word, score, count});
    }
    sort_reports(reports, ascending);
    return reports;
}

}  // namespace biasrank
