#pragma once

#include <random>
#include <set>
#include <string>

#include "biasrank/records.hpp"

namespace biasrank {

enum class Choice { before, after };

/// A set of lowercase watchwords, loaded from a word-per-line file
/// (UTF-8, `#` comments allowed).
struct Lexicon {
    std::set<std::string> words;
    std::string name;

    static Lexicon load(const std::string& path);
};

/// Uniform coin flip between the two members of a pair.
Choice random_compare(const RevisionPair& pair, std::mt19937_64& rng);

/// Predicts the member with the higher lexicon-word token count; flips a
/// coin on equal counts.
Choice lexicon_compare(const RevisionPair& pair, const Lexicon& lexicon,
                       std::mt19937_64& rng);

}  // namespace biasrank
