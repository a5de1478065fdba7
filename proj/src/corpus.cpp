#include "semrec/corpus.hpp"

#include <algorithm>
#include <fstream>

#include "json.hpp"
#include "semrec/common.hpp"

namespace semrec {

using nlohmann::json;

std::vector<std::string> Corpus::discussions_of(const std::string& user_id) const {
  std::vector<std::string> out;
  for (const auto& [key, count] : participation)
    if (key.first == user_id) out.push_back(key.second);
  return out;
}

std::uint64_t Corpus::total_posts_of(const std::string& user_id) const {
  std::uint64_t total = 0;
  for (const auto& [key, count] : participation)
    if (key.first == user_id) total += count;
  return total;
}

Corpus load_corpus(const std::string& path, const std::string& format) {
  if (format != "jsonl")
    throw config_error("unknown corpus format: " + format);

  std::ifstream in(path);
  if (!in) throw data_error("cannot open corpus file: " + path);

  Corpus corpus;
  // seq values seen per discussion, to reject duplicates from explicit input
  std::map<std::string, std::set<std::uint32_t>> seen_seq;
  std::map<std::string, std::uint32_t> next_seq;

  std::string line;
  std::size_t line_no = 0;
  std::size_t n_records = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw data_error("malformed corpus record at line " +
                       std::to_string(line_no) + ": " + e.what());
    }
    if (!rec.is_object() || !rec.contains("discussion_id") ||
        !rec.contains("user_id") || !rec.contains("text") ||
        !rec["discussion_id"].is_string() || !rec["user_id"].is_string() ||
        !rec["text"].is_string()) {
      throw data_error("malformed corpus record at line " +
                       std::to_string(line_no) +
                       ": required string keys discussion_id, user_id, text");
    }
    Post post;
    post.discussion_id = rec["discussion_id"].get<std::string>();
    post.user_id = rec["user_id"].get<std::string>();
    post.text = rec["text"].get<std::string>();
    if (post.discussion_id.empty() || post.user_id.empty())
      throw data_error("malformed corpus record at line " +
                       std::to_string(line_no) +
                       ": empty discussion_id or user_id");

    if (rec.contains("seq")) {
      if (!rec["seq"].is_number_unsigned())
        throw data_error("malformed corpus record at line " +
                         std::to_string(line_no) + ": seq must be a non-negative integer");
      post.seq = rec["seq"].get<std::uint32_t>();
    } else {
      post.seq = next_seq[post.discussion_id];
    }
    if (!seen_seq[post.discussion_id].insert(post.seq).second)
      throw data_error("duplicate (discussion_id, seq) pair at line " +
                       std::to_string(line_no) + ": (" + post.discussion_id +
                       ", " + std::to_string(post.seq) + ")");
    next_seq[post.discussion_id] =
        std::max(next_seq[post.discussion_id], post.seq + 1);

    auto& discussion = corpus.discussions[post.discussion_id];
    discussion.id = post.discussion_id;
    corpus.users.insert(post.user_id);
    corpus.participation[{post.user_id, post.discussion_id}] += 1;
    discussion.posts.push_back(std::move(post));
    ++n_records;
  }

  if (n_records == 0) throw data_error("empty corpus: " + path);

  for (auto& [id, discussion] : corpus.discussions) {
    std::sort(discussion.posts.begin(), discussion.posts.end(),
              [](const Post& a, const Post& b) { return a.seq < b.seq; });
  }
  return corpus;
}

std::string corpus_to_jsonl(const Corpus& corpus) {
  std::string out;
  for (const auto& [id, discussion] : corpus.discussions) {
    for (const Post& post : discussion.posts) {
      json rec;
      rec["discussion_id"] = post.discussion_id;
      rec["seq"] = post.seq;
      rec["text"] = post.text;
      rec["user_id"] = post.user_id;
      out += rec.dump();
      out += '\n';
    }
  }
  return out;
}

CorpusStats corpus_stats(const Corpus& corpus) {
  if (corpus.discussions.empty()) throw data_error("empty corpus");

  CorpusStats stats;
  stats.n_discussions = corpus.discussions.size();
  for (const auto& [id, discussion] : corpus.discussions)
    stats.n_posts += discussion.posts.size();
  stats.n_users = corpus.users.size();

  std::map<std::string, std::size_t> distinct;
  for (const auto& [key, count] : corpus.participation) distinct[key.first] += 1;
  std::size_t sum = 0;
  for (const auto& [user, n] : distinct) {
    sum += n;
    stats.max_participation = std::max(stats.max_participation, n);
  }
  stats.mean_participation =
      static_cast<double>(sum) / static_cast<double>(stats.n_users);
  return stats;
}

}  // namespace semrec
