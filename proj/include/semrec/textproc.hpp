#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "semrec/corpus.hpp"

namespace semrec {

// Stopword and forum-boilerplate lists applied during cleaning.
struct TextFilters {
  std::set<std::string> stopwords;
  std::set<std::string> boilerplate;
};

struct TermInfo {
  std::uint32_t term_id = 0;
  std::uint64_t corpus_frequency = 0;    // total occurrences across corpus
  std::uint32_t document_frequency = 0;  // discussions containing the stem
};

// Stemmed term inventory. Term ids are dense 0..n-1 in lexicographic stem
// order, so identical inputs always produce identical ids.
struct Vocabulary {
  std::map<std::string, TermInfo> terms;
  std::size_t n_discussions = 0;

  bool contains(const std::string& stem) const { return terms.count(stem) > 0; }
  const TermInfo* find(const std::string& stem) const {
    auto it = terms.find(stem);
    return it == terms.end() ? nullptr : &it->second;
  }

  std::string to_json() const;
  static Vocabulary from_json(const std::string& text);
};

// One lowercase word per line; '#' lines and blank lines are skipped.
std::set<std::string> load_wordlist(const std::string& path);

// Lowercases, splits on every character that is neither an ASCII letter nor
// part of a multi-byte UTF-8 sequence, and drops stopwords and forum
// boilerplate. Tokens are not stemmed here.
std::vector<std::string> clean_and_tokenize(const std::string& text,
                                            const std::set<std::string>& stopwords,
                                            const std::set<std::string>& boilerplate);

inline std::vector<std::string> clean_and_tokenize(const std::string& text,
                                                   const TextFilters& filters) {
  return clean_and_tokenize(text, filters.stopwords, filters.boilerplate);
}

// Tokens of a whole discussion (all posts in order), cleaned and stemmed.
std::vector<std::string> discussion_stems(const Discussion& discussion,
                                          const TextFilters& filters);

// Cleaned, stemmed tokens of a single post.
std::vector<std::string> post_stems(const Post& post, const TextFilters& filters);

// Builds the corpus vocabulary. Stems whose document frequency exceeds
// max_df_ratio * n_discussions are dropped. Throws data_error when nothing
// survives the filters.
Vocabulary build_vocabulary(const Corpus& corpus, const TextFilters& filters,
                            double max_df_ratio);

}  // namespace semrec
