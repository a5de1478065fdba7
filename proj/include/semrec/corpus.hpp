#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace semrec {

struct Post {
  std::string discussion_id;
  std::string user_id;
  std::string text;
  std::uint32_t seq = 0;  // ordinal position within the discussion

  bool operator==(const Post&) const = default;
};

struct Discussion {
  std::string id;
  std::vector<Post> posts;  // ordered by seq

  bool operator==(const Discussion&) const = default;
};

// Immutable view of a loaded forum corpus. participation maps
// (user_id, discussion_id) to the number of posts that user made there.
struct Corpus {
  std::map<std::string, Discussion> discussions;
  std::set<std::string> users;
  std::map<std::pair<std::string, std::string>, std::uint32_t> participation;

  bool operator==(const Corpus&) const = default;

  std::uint32_t posts_of(const std::string& user_id,
                         const std::string& discussion_id) const {
    auto it = participation.find({user_id, discussion_id});
    return it == participation.end() ? 0 : it->second;
  }

  // Distinct discussions the user posted in.
  std::vector<std::string> discussions_of(const std::string& user_id) const;

  std::uint64_t total_posts_of(const std::string& user_id) const;
};

struct CorpusStats {
  std::size_t n_discussions = 0;
  std::size_t n_posts = 0;
  std::size_t n_users = 0;
  double mean_participation = 0.0;  // mean distinct discussions per user
  std::size_t max_participation = 0;
};

// Loads a line-delimited corpus: one JSON object per line with keys
// "discussion_id", "user_id", "text", optional "timestamp" (ignored) and
// optional "seq". When "seq" is absent it is assigned by per-discussion
// encounter order; explicit values must be unique within a discussion.
// format must be "jsonl".
Corpus load_corpus(const std::string& path, const std::string& format = "jsonl");

// Serializes back to the same JSONL shape with explicit seq values, sorted by
// (discussion_id, seq); load_corpus(save) is an identity round trip.
std::string corpus_to_jsonl(const Corpus& corpus);

CorpusStats corpus_stats(const Corpus& corpus);

}  // namespace semrec
