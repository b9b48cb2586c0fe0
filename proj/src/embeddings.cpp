#include "biasrank/embeddings.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "biasrank/error.hpp"

namespace biasrank {

std::string lowercase_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) fields.emplace_back(line.substr(start, i - start));
    }
    return fields;
}

bool parse_float_exact(const std::string& s, float& out) {
    const char* begin = s.c_str();
    char* end = nullptr;
    out = std::strtof(begin, &end);
    return end == begin + s.size() && !s.empty();
}

bool is_nonneg_integer(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

EmbeddingTable EmbeddingTable::load(const std::string& path,
                                    std::optional<int> expected_dim) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::io, "cannot open embedding file: " + path);

    EmbeddingTable table;
    int dim = expected_dim.value_or(0);
    std::string line;
    std::size_t line_no = 0;
    bool first = true;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto fields = split_fields(line);
        if (fields.empty()) continue;

        if (first) {
            first = false;
            // Optional `count dim` header.
            if (fields.size() == 2 && is_nonneg_integer(fields[0]) &&
                is_nonneg_integer(fields[1])) {
                int header_dim = std::atoi(fields[1].c_str());
                if (expected_dim && header_dim != *expected_dim) {
                    raise(Errc::dimension_mismatch,
                          "header dimension " + std::to_string(header_dim) +
                              " differs from expected " + std::to_string(*expected_dim));
                }
                if (dim == 0) dim = header_dim;
                continue;
            }
        }

        if (fields.size() < 2) {
            raise(Errc::malformed_line,
                  "line " + std::to_string(line_no) + ": expected word and vector");
        }
        const int line_dim = static_cast<int>(fields.size()) - 1;
        if (dim == 0) {
            dim = line_dim;
        } else if (line_dim != dim) {
            raise(Errc::malformed_line,
                  "line " + std::to_string(line_no) + ": expected " +
                      std::to_string(dim) + " values, got " + std::to_string(line_dim));
        }

        std::vector<float> vec(static_cast<std::size_t>(line_dim));
        for (int i = 0; i < line_dim; ++i) {
            if (!parse_float_exact(fields[static_cast<std::size_t>(i) + 1], vec[static_cast<std::size_t>(i)])) {
                raise(Errc::malformed_line,
                      "line " + std::to_string(line_no) + ": unparseable value '" +
                          fields[static_cast<std::size_t>(i) + 1] + "'");
            }
        }
        std::string word = lowercase_ascii(fields[0]);
        table.entries_.emplace(std::move(word), std::move(vec));  // first wins
    }

    if (table.entries_.empty()) raise(Errc::empty_table, "no embedding entries in " + path);
    if (expected_dim && dim != *expected_dim) {
        raise(Errc::dimension_mismatch,
              "table dimension " + std::to_string(dim) + " differs from expected " +
                  std::to_string(*expected_dim));
    }
    table.dim_ = dim;
    return table;
}

void EmbeddingTable::dump(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(Errc::io, "cannot open for writing: " + path);
    out << entries_.size() << ' ' << dim_ << '\n';
    char buf[64];
    for (const auto& word : words_sorted()) {
        out << word;
        for (float v : entries_.at(word)) {
            std::snprintf(buf, sizeof(buf), " %.9g", static_cast<double>(v));
            out << buf;
        }
        out << '\n';
    }
    if (!out) raise(Errc::io, "write failed: " + path);
}

const std::vector<float>* EmbeddingTable::lookup(std::string_view word) const {
    auto it = entries_.find(lowercase_ascii(word));
    return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> EmbeddingTable::words_sorted() const {
    std::vector<std::string> words;
    words.reserve(entries_.size());
    for (const auto& [word, _] : entries_) words.push_back(word);
    std::sort(words.begin(), words.end());
    return words;
}

bool EmbeddingTable::operator==(const EmbeddingTable& other) const {
    return dim_ == other.dim_ && entries_ == other.entries_;
}

namespace {

Vec mean_of(const std::vector<DocumentFeatures>& docs, bool normalized) {
    if (docs.empty()) raise(Errc::empty_corpus, "corpus mean over zero documents");
    const std::size_t d = docs.front().dim();
    Vec mean(d, 0.0);
    for (const auto& doc : docs) {
        const Vec& v = normalized ? doc.unit_vector : doc.sum_vector;
        if (v.size() != d) {
            raise(Errc::dimension_mismatch, "document feature dimension mismatch");
        }
        for (std::size_t i = 0; i < d; ++i) mean[i] += v[i];
    }
    for (double& x : mean) x /= static_cast<double>(docs.size());
    return mean;
}

}  // namespace

Vec corpus_mean_normalized(const std::vector<DocumentFeatures>& docs) {
    return mean_of(docs, true);
}

Vec corpus_mean_raw(const std::vector<DocumentFeatures>& docs) {
    return mean_of(docs, false);
}

}  // namespace biasrank
