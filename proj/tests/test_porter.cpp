#include <string>
#include <vector>

#include "doctest.h"
#include "porter_ref.hpp"
#include "semrec/common.hpp"
#include "semrec/porter.hpp"

using semrec::porter_stem;

namespace {

// Pairs from the published sample vocabulary for the algorithm, including the
// step-by-step rule examples that survive unchanged end to end.
const std::vector<std::pair<std::string, std::string>> kSamplePairs = {
    {"caresses", "caress"},   {"ponies", "poni"},
    {"ties", "ti"},           {"caress", "caress"},
    {"cats", "cat"},          {"flies", "fli"},
    {"dies", "di"},           {"mules", "mule"},
    {"denied", "deni"},       {"died", "di"},
    {"agreed", "agre"},       {"owned", "own"},
    {"humbled", "humbl"},     {"sized", "size"},
    {"meeting", "meet"},      {"stating", "state"},
    {"siezing", "siez"},      {"itemization", "item"},
    {"sensational", "sensat"},{"traditional", "tradit"},
    {"reference", "refer"},   {"colonizer", "colon"},
    {"plotted", "plot"},      {"feed", "feed"},
    {"plastered", "plaster"}, {"bled", "bled"},
    {"motoring", "motor"},    {"sing", "sing"},
    {"conflated", "conflat"}, {"troubled", "troubl"},
    {"hopping", "hop"},       {"tanned", "tan"},
    {"falling", "fall"},      {"hissing", "hiss"},
    {"fizzed", "fizz"},       {"failing", "fail"},
    {"filing", "file"},       {"happy", "happi"},
    {"sky", "sky"},           {"relational", "relat"},
    {"conditional", "condit"},{"rational", "ration"},
    {"valenci", "valenc"},    {"hesitanci", "hesit"},
    {"digitizer", "digit"},   {"differently", "differ"},
    {"vileli", "vile"},       {"analogousli", "analog"},
    {"vietnamization", "vietnam"}, {"predication", "predic"},
    {"operator", "oper"},     {"feudalism", "feudal"},
    {"decisiveness", "decis"},{"hopefulness", "hope"},
    {"callousness", "callous"}, {"formality", "formal"},
    {"sensitivity", "sensit"},{"sensibility", "sensibl"},
    {"triplicate", "triplic"},{"formative", "form"},
    {"formalize", "formal"},  {"electricity", "electr"},
    {"electrical", "electr"}, {"hopeful", "hope"},
    {"goodness", "good"},     {"revival", "reviv"},
    {"allowance", "allow"},   {"inference", "infer"},
    {"airliner", "airlin"},   {"gyroscopic", "gyroscop"},
    {"adjustable", "adjust"}, {"defensible", "defens"},
    {"irritant", "irrit"},    {"replacement", "replac"},
    {"adjustment", "adjust"}, {"dependent", "depend"},
    {"adoption", "adopt"},    {"homologous", "homolog"},
    {"communism", "commun"},  {"activate", "activ"},
    {"angularity", "angular"},{"effective", "effect"},
    {"bowdlerize", "bowdler"},{"probate", "probat"},
    {"rate", "rate"},         {"cease", "ceas"},
    {"controller", "control"},{"controlling", "control"},
    {"roll", "roll"},         {"generalizations", "gener"},
    {"oscillators", "oscil"}, {"movies", "movi"},
};

std::string random_word(semrec::Rng& rng) {
  static const std::vector<std::string> suffixes = {
      "",      "s",     "es",    "ies",   "ed",     "ing",    "ational",
      "tional","enci",  "izer",  "bli",   "alli",   "ization","ation",
      "ator",  "alism", "iveness","aliti","iviti",  "biliti", "icate",
      "ative", "alize", "ical",  "ful",   "ness",   "al",     "ance",
      "ence",  "er",    "ic",    "able",  "ant",    "ement",  "ment",
      "ent",   "ion",   "ism",   "ate",   "iti",    "ous",    "ive",
      "ize",   "e",     "y",     "eed",   "ll",     "logi"};
  const std::string letters = "abcdefghijklmnopqrstuvwxyz";
  std::string word;
  const std::size_t root = 1 + rng.next_index(7);
  for (std::size_t i = 0; i < root; ++i)
    word.push_back(letters[rng.next_index(letters.size())]);
  word += suffixes[rng.next_index(suffixes.size())];
  if (rng.next_index(4) == 0)
    word += suffixes[rng.next_index(suffixes.size())];
  return word;
}

}  // namespace

TEST_CASE("porter matches the published sample vocabulary") {
  for (const auto& [word, expected] : kSamplePairs) {
    CAPTURE(word);
    CHECK(porter_stem(word) == expected);
  }
}

TEST_CASE("porter handles the movie example") {
  CHECK(porter_stem("movie") == "movi");
}

TEST_CASE("porter leaves words of length <= 2 unchanged") {
  CHECK(porter_stem("a") == "a");
  CHECK(porter_stem("at") == "at");
  CHECK(porter_stem("be") == "be");
}

TEST_CASE("porter passes non-lowercase-ascii tokens through") {
  CHECK(porter_stem("ABC") == "ABC");
  CHECK(porter_stem("abc123") == "abc123");
  CHECK(porter_stem("caf\xc3\xa9") == "caf\xc3\xa9");
  CHECK(porter_stem("") == "");
}

TEST_CASE("porter agrees with an independent reference on 10000 random words") {
  semrec::Rng rng(20240901);
  for (int i = 0; i < 10000; ++i) {
    const std::string word = random_word(rng);
    CAPTURE(word);
    REQUIRE(porter_stem(word) == porter_ref::stem(word));
  }
}

TEST_CASE("porter agrees with the reference on the sample vocabulary") {
  for (const auto& [word, expected] : kSamplePairs) {
    CAPTURE(word);
    CHECK(porter_ref::stem(word) == expected);
  }
}
