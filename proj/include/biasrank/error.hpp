#pragma once

#include <stdexcept>
#include <string>

namespace biasrank {

// One code per distinct failure mode named in the library contracts.
enum class Errc {
    io,
    malformed_line,
    malformed_record,
    corrupt_file,
    version_mismatch,
    dimension_mismatch,
    empty_table,
    empty_corpus,
    empty_input,
    empty_batch,
    empty_train_set,
    empty_feature,
    zero_norm_document,
    out_of_vocabulary,
    mean_vector_missing,
    no_usable_pairs,
    missing_score,
    length_mismatch,
    degenerate_series,
    unsorted_input,
    http_error,
    api_error,
    invalid_argument,
};

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Errc code() const { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace biasrank
