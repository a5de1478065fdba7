#include "semrec/wordnet.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "semrec/common.hpp"
#include "semrec/textproc.hpp"

namespace semrec {

namespace {

std::string lower(std::string s) {
  for (char& c : s)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return s;
}

std::string underscored(std::string s) {
  std::replace(s.begin(), s.end(), ' ', '_');
  return s;
}

std::string spaced(std::string s) {
  std::replace(s.begin(), s.end(), '_', ' ');
  return s;
}

[[noreturn]] void parse_fail(const std::string& file, std::size_t line_no,
                             const std::string& what) {
  throw data_error(file + ":" + std::to_string(line_no) + ": " + what);
}

struct MiniParser {
  std::map<std::string, Synset> synsets;
  std::map<std::string, std::vector<std::string>> index;
  // remembers which lemmas have a head synset, in declaration order
  std::vector<std::string> head_order;

  Synset& head(const std::string& lemma) {
    std::string key = "tsv:" + lemma;
    auto [it, inserted] = synsets.try_emplace(key);
    if (inserted) {
      it->second.key = key;
      it->second.lemmas.push_back(lemma);
      head_order.push_back(lemma);
    }
    return it->second;
  }

  void parse(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open lexicon file: " + path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      std::vector<std::string> fields = split(line, '\t');
      if (fields.size() != 3)
        parse_fail(path, line_no, "expected lemma<TAB>rel<TAB>target");
      std::string lemma = lower(underscored(fields[0]));
      const std::string& rel = fields[1];
      if (rel == "syn") {
        std::string target = lower(underscored(fields[2]));
        Synset& s = head(lemma);
        if (std::find(s.lemmas.begin(), s.lemmas.end(), target) == s.lemmas.end())
          s.lemmas.push_back(target);
      } else if (rel == "hyper") {
        std::string target = lower(underscored(fields[2]));
        head(target);  // ensure the target synset exists
        Synset& s = head(lemma);
        std::string target_key = "tsv:" + target;
        if (std::find(s.hypernym_keys.begin(), s.hypernym_keys.end(),
                      target_key) == s.hypernym_keys.end())
          s.hypernym_keys.push_back(target_key);
      } else if (rel == "gloss") {
        head(lemma).gloss = fields[2];
      } else {
        parse_fail(path, line_no, "unknown relation '" + rel + "'");
      }
    }
    // Index: a lemma's own head synset is its first sense; co-memberships
    // follow in declaration order.
    for (const std::string& lemma : head_order)
      index[lemma].push_back("tsv:" + lemma);
    for (const std::string& lemma : head_order) {
      const Synset& s = synsets.at("tsv:" + lemma);
      for (const std::string& member : s.lemmas) {
        auto& senses = index[member];
        if (std::find(senses.begin(), senses.end(), s.key) == senses.end())
          senses.push_back(s.key);
      }
    }
  }
};

struct WndbParser {
  std::map<std::string, Synset> synsets;
  std::map<std::string, std::vector<std::string>> index;

  static bool skip_line(const std::string& line) {
    return line.empty() || line[0] == ' ';
  }

  void parse_data(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open WordNet data file: " + path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (skip_line(line)) continue;

      std::string gloss;
      std::string head = line;
      if (auto bar = line.find(" | "); bar != std::string::npos) {
        gloss = line.substr(bar + 3);
        head = line.substr(0, bar);
      }
      std::istringstream ss(head);
      std::string offset, lex_filenum, ss_type, w_cnt_hex;
      if (!(ss >> offset >> lex_filenum >> ss_type >> w_cnt_hex))
        parse_fail(path, line_no, "truncated synset header");

      Synset synset;
      synset.key = offset + "-" + ss_type;
      synset.gloss = gloss;

      std::size_t w_cnt = std::stoul(w_cnt_hex, nullptr, 16);
      if (w_cnt == 0) parse_fail(path, line_no, "synset with no words");
      for (std::size_t i = 0; i < w_cnt; ++i) {
        std::string word, lex_id;
        if (!(ss >> word >> lex_id))
          parse_fail(path, line_no, "truncated word list");
        synset.lemmas.push_back(lower(word));
      }

      std::string p_cnt_str;
      if (!(ss >> p_cnt_str)) parse_fail(path, line_no, "missing pointer count");
      std::size_t p_cnt = std::stoul(p_cnt_str, nullptr, 10);
      for (std::size_t i = 0; i < p_cnt; ++i) {
        std::string symbol, tgt_offset, tgt_pos, src_tgt;
        if (!(ss >> symbol >> tgt_offset >> tgt_pos >> src_tgt))
          parse_fail(path, line_no, "truncated pointer list");
        if (symbol == "@" && tgt_pos == "n")
          synset.hypernym_keys.push_back(tgt_offset + "-n");
      }
      synsets[synset.key] = std::move(synset);
    }
  }

  void parse_index(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open WordNet index file: " + path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (skip_line(line)) continue;
      std::istringstream ss(line);
      std::string lemma, pos;
      std::size_t synset_cnt, p_cnt;
      if (!(ss >> lemma >> pos >> synset_cnt >> p_cnt))
        parse_fail(path, line_no, "truncated index entry");
      std::string skip_tok;
      for (std::size_t i = 0; i < p_cnt; ++i)
        if (!(ss >> skip_tok)) parse_fail(path, line_no, "truncated pointer symbols");
      std::size_t sense_cnt, tagsense_cnt;
      if (!(ss >> sense_cnt >> tagsense_cnt))
        parse_fail(path, line_no, "missing sense counts");
      std::vector<std::string>& senses = index[lower(lemma)];
      for (std::size_t i = 0; i < synset_cnt; ++i) {
        std::string offset;
        if (!(ss >> offset)) parse_fail(path, line_no, "truncated offset list");
        std::string key = offset + "-" + pos;
        if (!synsets.count(key))
          parse_fail(path, line_no, "index references missing synset " + key);
        senses.push_back(key);
      }
    }
    // Complete the index with co-members that only appear inside synsets.
    for (const auto& [key, synset] : synsets) {
      for (const std::string& lemma : synset.lemmas) {
        auto& senses = index[lemma];
        if (std::find(senses.begin(), senses.end(), key) == senses.end())
          senses.push_back(key);
      }
    }
  }
};

}  // namespace

Lexicon Lexicon::load(const std::string& path, const std::string& format) {
  Lexicon lex;
  if (format == "mini-tsv") {
    MiniParser p;
    p.parse(path);
    lex.synsets_ = std::move(p.synsets);
    lex.index_ = std::move(p.index);
  } else if (format == "wordnet-db") {
    WndbParser p;
    p.parse_data(path + "/data.noun");
    p.parse_index(path + "/index.noun");
    lex.synsets_ = std::move(p.synsets);
    lex.index_ = std::move(p.index);
  } else {
    throw config_error("unknown lexicon format: " + format);
  }
  lex.validate();
  return lex;
}

void Lexicon::validate() const {
  // hypernym targets must exist
  for (const auto& [key, synset] : synsets_)
    for (const std::string& h : synset.hypernym_keys)
      if (!synsets_.count(h))
        throw data_error("hypernym pointer to missing synset " + h + " from " + key);

  // the hypernym graph must be acyclic; iterative three-color DFS
  std::map<std::string, int> color;  // 0 white, 1 gray, 2 black
  for (const auto& [start, s] : synsets_) {
    if (color[start]) continue;
    std::vector<std::pair<std::string, std::size_t>> stack{{start, 0}};
    color[start] = 1;
    while (!stack.empty()) {
      auto& [key, next] = stack.back();
      const Synset& cur = synsets_.at(key);
      if (next < cur.hypernym_keys.size()) {
        const std::string& child = cur.hypernym_keys[next++];
        int c = color[child];
        if (c == 1)
          throw data_error("cyclic hypernym chain involving synset " + child);
        if (c == 0) {
          color[child] = 1;
          stack.push_back({child, 0});
        }
      } else {
        color[key] = 2;
        stack.pop_back();
      }
    }
  }
}

const Synset* Lexicon::first_sense(const std::string& term) const {
  auto it = index_.find(lower(underscored(term)));
  if (it == index_.end() || it->second.empty()) return nullptr;
  return &synsets_.at(it->second.front());
}

std::set<std::string> Lexicon::synonyms(const std::string& term) const {
  std::string norm = lower(underscored(term));
  std::set<std::string> out;
  auto it = index_.find(norm);
  if (it == index_.end()) return out;
  for (const std::string& key : it->second)
    for (const std::string& lemma : synsets_.at(key).lemmas)
      if (lemma != norm) out.insert(spaced(lemma));
  return out;
}

std::set<std::string> Lexicon::hypernyms(const std::string& term, int steps) const {
  if (steps != 1 && steps != 2)
    throw config_error("hypernyms: steps must be 1 or 2");
  std::set<std::string> out;
  const Synset* sense = first_sense(term);
  if (!sense) return out;
  if (steps == 1) {
    for (const std::string& key : sense->hypernym_keys)
      for (const std::string& lemma : synsets_.at(key).lemmas)
        out.insert(spaced(lemma));
  } else {
    for (const std::string& key : sense->hypernym_keys)
      for (const std::string& key2 : synsets_.at(key).hypernym_keys)
        for (const std::string& lemma : synsets_.at(key2).lemmas)
          out.insert(spaced(lemma));
  }
  return out;
}

std::set<std::string> Lexicon::gloss_nouns(
    const std::string& term, const std::set<std::string>& stopwords) const {
  std::set<std::string> out;
  const Synset* sense = first_sense(term);
  if (!sense || sense->gloss.empty()) return out;
  std::string norm = lower(underscored(term));
  for (const std::string& token :
       clean_and_tokenize(sense->gloss, stopwords, {})) {
    if (token == norm) continue;
    if (index_.count(token)) out.insert(token);
  }
  return out;
}

}  // namespace semrec
