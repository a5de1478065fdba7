#include "semrec/textproc.hpp"

#include <fstream>

#include "json.hpp"
#include "semrec/common.hpp"
#include "semrec/porter.hpp"

namespace semrec {

using nlohmann::json;

std::set<std::string> load_wordlist(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open word list: " + path);
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    words.insert(line);
  }
  return words;
}

namespace {

bool token_char(unsigned char c) {
  // ASCII letters plus any byte of a multi-byte UTF-8 sequence
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

}  // namespace

std::vector<std::string> clean_and_tokenize(const std::string& text,
                                            const std::set<std::string>& stopwords,
                                            const std::set<std::string>& boilerplate) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    if (!stopwords.count(cur) && !boilerplate.count(cur)) tokens.push_back(cur);
    cur.clear();
  };
  for (char raw : text) {
    if (token_char(static_cast<unsigned char>(raw))) {
      cur.push_back(ascii_lower(raw));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

std::vector<std::string> post_stems(const Post& post, const TextFilters& filters) {
  std::vector<std::string> stems;
  for (std::string& token : clean_and_tokenize(post.text, filters))
    stems.push_back(porter_stem(token));
  return stems;
}

std::vector<std::string> discussion_stems(const Discussion& discussion,
                                          const TextFilters& filters) {
  std::vector<std::string> stems;
  for (const Post& post : discussion.posts)
    for (std::string& stem : post_stems(post, filters))
      stems.push_back(std::move(stem));
  return stems;
}

Vocabulary build_vocabulary(const Corpus& corpus, const TextFilters& filters,
                            double max_df_ratio) {
  if (corpus.discussions.empty()) throw data_error("empty corpus");
  if (max_df_ratio <= 0.0 || max_df_ratio > 1.0)
    throw config_error("max_df_ratio must be in (0, 1]");

  Vocabulary vocab;
  vocab.n_discussions = corpus.discussions.size();

  // stem -> (corpus frequency, document frequency); the map keeps the merge
  // independent of discussion iteration order
  std::map<std::string, std::pair<std::uint64_t, std::uint32_t>> counts;
  for (const auto& [id, discussion] : corpus.discussions) {
    std::map<std::string, std::uint64_t> local;
    for (const std::string& stem : discussion_stems(discussion, filters))
      local[stem] += 1;
    for (const auto& [stem, n] : local) {
      counts[stem].first += n;
      counts[stem].second += 1;
    }
  }

  const double n = static_cast<double>(vocab.n_discussions);
  std::uint32_t next_id = 0;
  for (const auto& [stem, c] : counts) {
    if (static_cast<double>(c.second) / n > max_df_ratio) continue;
    vocab.terms[stem] = TermInfo{next_id++, c.first, c.second};
  }
  if (vocab.terms.empty()) throw data_error("empty vocabulary");
  return vocab;
}

std::string Vocabulary::to_json() const {
  json doc;
  doc["n_discussions"] = n_discussions;
  json term_obj = json::object();
  for (const auto& [stem, info] : terms) {
    term_obj[stem] = {{"id", info.term_id},
                      {"cf", info.corpus_frequency},
                      {"df", info.document_frequency}};
  }
  doc["terms"] = term_obj;
  return doc.dump(2) + "\n";
}

Vocabulary Vocabulary::from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw data_error(std::string("malformed vocabulary file: ") + e.what());
  }
  Vocabulary vocab;
  vocab.n_discussions = doc.at("n_discussions").get<std::size_t>();
  for (const auto& [stem, info] : doc.at("terms").items()) {
    vocab.terms[stem] = TermInfo{info.at("id").get<std::uint32_t>(),
                                 info.at("cf").get<std::uint64_t>(),
                                 info.at("df").get<std::uint32_t>()};
  }
  return vocab;
}

}  // namespace semrec
