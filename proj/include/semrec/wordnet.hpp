#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace semrec {

struct Synset {
  std::string key;                        // offset-pos for wordnet-db, head lemma for mini-tsv
  std::vector<std::string> lemmas;        // lowercase, multiword joined by '_'
  std::vector<std::string> hypernym_keys;
  std::string gloss;
};

// Noun lexicon with synonym/hypernym/gloss queries. Immutable after load;
// queries are pure.
class Lexicon {
 public:
  // format: "wordnet-db" (path = directory containing index.noun/data.noun)
  //         "mini-tsv"   (path = a single TSV file)
  static Lexicon load(const std::string& path, const std::string& format);

  // Co-lemmas over all senses of term, excluding the term itself.
  // Multiword results carry spaces. Unknown terms give the empty set.
  std::set<std::string> synonyms(const std::string& term) const;

  // Lemmas one or two hypernym steps above the first sense of term.
  std::set<std::string> hypernyms(const std::string& term, int steps) const;

  // Tokens of the first sense's gloss that are themselves noun-index entries,
  // minus stopwords and the term itself.
  std::set<std::string> gloss_nouns(const std::string& term,
                                    const std::set<std::string>& stopwords) const;

  std::size_t synset_count() const { return synsets_.size(); }
  std::size_t lemma_count() const { return index_.size(); }
  bool empty() const { return synsets_.empty(); }

  const std::map<std::string, Synset>& synsets() const { return synsets_; }
  const std::map<std::string, std::vector<std::string>>& index() const {
    return index_;
  }

 private:
  const Synset* first_sense(const std::string& term) const;
  void validate() const;

  std::map<std::string, Synset> synsets_;
  // lemma -> synset keys in sense order
  std::map<std::string, std::vector<std::string>> index_;
};

}  // namespace semrec
