#include "semrec/porter.hpp"

namespace semrec {
namespace {

bool is_ascii_lower(char c) { return c >= 'a' && c <= 'z'; }

// Working buffer with the measure/condition helpers from the algorithm's
// definition. `end` is the index one past the last letter of the stem under
// consideration; suffix matching shrinks it.
class Stemmer {
 public:
  explicit Stemmer(std::string w) : b_(std::move(w)), end_(b_.size()) {}

  std::string run() {
    if (b_.size() < 3) return b_;
    step1a();
    step1b();
    step1c();
    step2();
    step3();
    step4();
    step5a();
    step5b();
    return b_.substr(0, end_);
  }

 private:
  std::string b_;
  std::size_t end_;    // one past last letter of current word
  std::size_t stem_;   // one past last letter of stem after a suffix match

  bool consonant(std::size_t i) const {
    char c = b_[i];
    if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return false;
    if (c == 'y') return i == 0 ? true : !consonant(i - 1);
    return true;
  }

  // Measure of b_[0, upto): number of VC sequences in [C](VC)^m[V].
  std::size_t measure(std::size_t upto) const {
    std::size_t n = 0, i = 0;
    while (true) {
      if (i >= upto) return n;
      if (!consonant(i)) break;
      ++i;
    }
    ++i;
    while (true) {
      while (true) {
        if (i >= upto) return n;
        if (consonant(i)) break;
        ++i;
      }
      ++i;
      ++n;
      while (true) {
        if (i >= upto) return n;
        if (!consonant(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool stem_has_vowel() const {
    for (std::size_t i = 0; i < stem_; ++i)
      if (!consonant(i)) return true;
    return false;
  }

  bool double_consonant(std::size_t upto) const {
    if (upto < 2) return false;
    if (b_[upto - 1] != b_[upto - 2]) return false;
    return consonant(upto - 1);
  }

  // cvc at the end of b_[0, upto), where the final consonant is not w, x or y.
  bool cvc(std::size_t upto) const {
    if (upto < 3) return false;
    if (!consonant(upto - 3) || consonant(upto - 2) || !consonant(upto - 1))
      return false;
    char c = b_[upto - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool ends(const char* suffix) {
    std::size_t len = 0;
    while (suffix[len]) ++len;
    if (len > end_) return false;
    if (b_.compare(end_ - len, len, suffix) != 0) return false;
    stem_ = end_ - len;
    return true;
  }

  void set_to(const std::string& repl) {
    b_.replace(stem_, end_ - stem_, repl);
    end_ = stem_ + repl.size();
  }

  void replace_if_m0(const char* repl) {
    if (measure(stem_) > 0) set_to(repl);
  }

  void replace_if_m1(const char* repl) {
    if (measure(stem_) > 1) set_to(repl);
  }

  void step1a() {
    if (b_[end_ - 1] != 's') return;
    if (ends("sses")) {
      set_to("ss");
    } else if (ends("ies")) {
      set_to("i");
    } else if (ends("ss")) {
      // unchanged
    } else if (ends("s")) {
      set_to("");
    }
  }

  void step1b() {
    if (ends("eed")) {
      if (measure(stem_) > 0) set_to("ee");
      return;
    }
    bool fired = false;
    if (ends("ed")) {
      if (stem_has_vowel()) {
        set_to("");
        fired = true;
      }
    } else if (ends("ing")) {
      if (stem_has_vowel()) {
        set_to("");
        fired = true;
      }
    }
    if (!fired) return;
    if (ends("at")) {
      set_to("ate");
    } else if (ends("bl")) {
      set_to("ble");
    } else if (ends("iz")) {
      set_to("ize");
    } else if (double_consonant(end_)) {
      char c = b_[end_ - 1];
      if (c != 'l' && c != 's' && c != 'z') --end_;
    } else if (measure(end_) == 1 && cvc(end_)) {
      stem_ = end_;
      set_to("e");
    }
  }

  void step1c() {
    if (ends("y") && stem_has_vowel()) set_to("i");
  }

  void step2() {
    if (end_ < 2) return;
    switch (b_[end_ - 2]) {
      case 'a':
        if (ends("ational")) { replace_if_m0("ate"); break; }
        if (ends("tional")) { replace_if_m0("tion"); break; }
        break;
      case 'c':
        if (ends("enci")) { replace_if_m0("ence"); break; }
        if (ends("anci")) { replace_if_m0("ance"); break; }
        break;
      case 'e':
        if (ends("izer")) { replace_if_m0("ize"); break; }
        break;
      case 'g':
        // revised rule from the reference implementation
        if (ends("logi")) { replace_if_m0("log"); break; }
        break;
      case 'l':
        // "bli" here is the reference implementation's revision of "abli"
        if (ends("bli")) { replace_if_m0("ble"); break; }
        if (ends("alli")) { replace_if_m0("al"); break; }
        if (ends("entli")) { replace_if_m0("ent"); break; }
        if (ends("eli")) { replace_if_m0("e"); break; }
        if (ends("ousli")) { replace_if_m0("ous"); break; }
        break;
      case 'o':
        if (ends("ization")) { replace_if_m0("ize"); break; }
        if (ends("ation")) { replace_if_m0("ate"); break; }
        if (ends("ator")) { replace_if_m0("ate"); break; }
        break;
      case 's':
        if (ends("alism")) { replace_if_m0("al"); break; }
        if (ends("iveness")) { replace_if_m0("ive"); break; }
        if (ends("fulness")) { replace_if_m0("ful"); break; }
        if (ends("ousness")) { replace_if_m0("ous"); break; }
        break;
      case 't':
        if (ends("aliti")) { replace_if_m0("al"); break; }
        if (ends("iviti")) { replace_if_m0("ive"); break; }
        if (ends("biliti")) { replace_if_m0("ble"); break; }
        break;
      default:
        break;
    }
  }

  void step3() {
    switch (b_[end_ - 1]) {
      case 'e':
        if (ends("icate")) { replace_if_m0("ic"); break; }
        if (ends("ative")) { replace_if_m0(""); break; }
        if (ends("alize")) { replace_if_m0("al"); break; }
        break;
      case 'i':
        if (ends("iciti")) { replace_if_m0("ic"); break; }
        break;
      case 'l':
        if (ends("ical")) { replace_if_m0("ic"); break; }
        if (ends("ful")) { replace_if_m0(""); break; }
        break;
      case 's':
        if (ends("ness")) { replace_if_m0(""); break; }
        break;
      default:
        break;
    }
  }

  void step4() {
    if (end_ < 2) return;
    bool matched = false;
    switch (b_[end_ - 2]) {
      case 'a':
        matched = ends("al");
        break;
      case 'c':
        matched = ends("ance") || ends("ence");
        break;
      case 'e':
        matched = ends("er");
        break;
      case 'i':
        matched = ends("ic");
        break;
      case 'l':
        matched = ends("able") || ends("ible");
        break;
      case 'n':
        matched = ends("ant") || ends("ement") || ends("ment") || ends("ent");
        break;
      case 'o':
        if (ends("ion")) {
          matched = stem_ > 0 && (b_[stem_ - 1] == 's' || b_[stem_ - 1] == 't');
        } else {
          matched = ends("ou");
        }
        break;
      case 's':
        matched = ends("ism");
        break;
      case 't':
        matched = ends("ate") || ends("iti");
        break;
      case 'u':
        matched = ends("ous");
        break;
      case 'v':
        matched = ends("ive");
        break;
      case 'z':
        matched = ends("ize");
        break;
      default:
        break;
    }
    if (matched && measure(stem_) > 1) set_to("");
  }

  void step5a() {
    if (b_[end_ - 1] != 'e') return;
    stem_ = end_ - 1;
    std::size_t m = measure(stem_);
    if (m > 1 || (m == 1 && !cvc(stem_))) set_to("");
  }

  void step5b() {
    if (b_[end_ - 1] == 'l' && double_consonant(end_) && measure(end_) > 1)
      --end_;
  }
};

}  // namespace

std::string porter_stem(const std::string& word) {
  for (char c : word)
    if (!is_ascii_lower(c)) return word;
  return Stemmer(word).run();
}

}  // namespace semrec
