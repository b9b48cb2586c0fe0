#include "biasrank/baselines.hpp"

#include <fstream>

#include "biasrank/embeddings.hpp"
#include "biasrank/error.hpp"
#include "biasrank/textproc.hpp"

namespace biasrank {

Lexicon Lexicon::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::io, "cannot open lexicon file: " + path);
    Lexicon lex;
    lex.name = path;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        const auto begin = line.find_first_not_of(" \t");
        if (begin == std::string::npos) continue;
        const auto end = line.find_last_not_of(" \t");
        lex.words.insert(lowercase_ascii(line.substr(begin, end - begin + 1)));
    }
    if (lex.words.empty()) raise(Errc::empty_input, "lexicon has no words: " + path);
    return lex;
}

Choice random_compare(const RevisionPair&, std::mt19937_64& rng) {
    return (rng() & 1u) == 0 ? Choice::before : Choice::after;
}

namespace {

std::size_t lexicon_count(const std::string& text, const Lexicon& lexicon) {
    std::size_t count = 0;
    for (const auto& token : tokenize(text)) {
        if (lexicon.words.count(token) != 0) ++count;
    }
    return count;
}

}  // namespace

Choice lexicon_compare(const RevisionPair& pair, const Lexicon& lexicon,
                       std::mt19937_64& rng) {
    const auto before = lexicon_count(pair.before_text, lexicon);
    const auto after = lexicon_count(pair.after_text, lexicon);
    if (before > after) return Choice::before;
    if (after > before) return Choice::after;
    return random_compare(pair, rng);
}

}  // namespace biasrank
