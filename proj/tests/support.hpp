#pragma once

#include <array>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <unistd.h>
#include <vector>

#include "semrec/corpus.hpp"
#include "semrec/textproc.hpp"

namespace testsupport {

inline std::string data_path(const std::string& rel) {
  return std::string(SEMREC_DATA_DIR) + "/" + rel;
}

inline std::string cli_path() { return SEMREC_CLI_PATH; }

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<unsigned> counter{0};
    auto base = std::filesystem::temp_directory_path();
    path_ = base / ("semrec-test-" + std::to_string(::getpid()) + "-" +
                    std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

// Builds a corpus directly from (discussion, user, text) triples, assigning
// seq by encounter order.
inline semrec::Corpus make_corpus(
    const std::vector<std::array<std::string, 3>>& posts) {
  semrec::Corpus corpus;
  std::map<std::string, std::uint32_t> next_seq;
  for (const auto& [disc, user, text] : posts) {
    semrec::Post post{disc, user, text, next_seq[disc]++};
    auto& discussion = corpus.discussions[disc];
    discussion.id = disc;
    discussion.posts.push_back(post);
    corpus.users.insert(user);
    corpus.participation[{user, disc}] += 1;
  }
  return corpus;
}

inline const semrec::TextFilters& default_filters() {
  static const semrec::TextFilters filters{
      semrec::load_wordlist(data_path("stopwords.txt")),
      semrec::load_wordlist(data_path("boilerplate.txt"))};
  return filters;
}

}  // namespace testsupport
