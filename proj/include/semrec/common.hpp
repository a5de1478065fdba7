#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace semrec {

// Error categories map onto CLI exit codes: config 2, data 3, numeric 4.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct data_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Seeded RNG with hand-rolled draw helpers so that sampled sequences do not
// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform integer in [0, n), rejection-sampled to avoid modulo bias.
  std::size_t next_index(std::size_t n) {
    if (n == 0) throw numeric_error("Rng::next_index: n must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t r;
    do {
      r = gen_();
    } while (r >= limit);
    return static_cast<std::size_t>(r % n);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 gen_;
};

// FNV-1a over bytes; used for run-manifest artifact digests.
std::string fnv1a_hex(const std::string& bytes);

std::string read_file(const std::string& path);

// Writes content to a temp file in the target directory then renames it into
// place, so a crash never leaves a partial artifact at `path`.
void write_file_atomic(const std::string& path, const std::string& content);

std::vector<std::string> split(const std::string& s, char sep);

}  // namespace semrec
