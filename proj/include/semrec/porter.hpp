#pragma once

#include <string>

namespace semrec {

// Porter (1980) suffix-stripping stemmer, matching the author's reference
// implementation (including its two documented step-2 revisions, bli/logi).
// Expects a lowercase ASCII word; words shorter than 3 letters and tokens
// containing non-letters are returned unchanged.
std::string porter_stem(const std::string& word);

}  // namespace semrec
