#pragma once

// hnn.hpp -- words and the word problem in a multiple HNN extension of a
// free group F with cyclic associated subgroups.  A presentation adjoins
// stable letters u_i to F with relations u_i s_i u_i^{-1} = t_i; the word
// problem is decided by Britton pinch reduction: a word with stable letters
// and no pinch is nontrivial, and a stable-letter-free word is trivial iff
// it reduces to the empty word in F.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <utility>

#include "word.hpp"

namespace britton {

/// One occurrence of a stable letter inside an HNN word.
struct StableLetter {
  std::uint32_t index = 0;
  int sign = 1;

  StableLetter inverse() const { return {index, -sign}; }
  friend bool operator==(const StableLetter&, const StableLetter&) = default;
};

inline bool stable_letter_less(StableLetter a, StableLetter b) {
  if (a.index != b.index) return a.index < b.index;
  return a.sign > b.sign;
}

/// The relation u s u^{-1} = t attached to one stable letter.  Both sides
/// generate the cyclic associated subgroups and must be nontrivial.
struct HnnRelation {
  Word s;
  Word t;
};

/// Base generators, stable letters, and one relation per stable letter.
/// Zero stable letters denotes the free group F itself.
class MultipleHnnPresentation {
 public:
  MultipleHnnPresentation() = default;

  MultipleHnnPresentation(Alphabet base, std::vector<std::string> stable,
                          std::vector<HnnRelation> relations)
      : base_(std::move(base)),
        stable_(std::move(stable)),
        relations_(std::move(relations)) {
    for (const auto& n : stable_) {
      if (!detail::is_identifier(n))
        throw std::invalid_argument("presentation: stable letter '" + n + "' is not an identifier");
      if (base_.index_of(n))
        throw std::invalid_argument("presentation: name '" + n + "' is both a base generator and a stable letter");
    }
    for (std::size_t i = 0; i < stable_.size(); ++i)
      for (std::size_t j = i + 1; j < stable_.size(); ++j)
        if (stable_[i] == stable_[j])
          throw std::invalid_argument("presentation: duplicate stable letter '" + stable_[i] + "'");
    if (relations_.size() != stable_.size())
      throw std::invalid_argument("presentation: need exactly one relation per stable letter");
    for (const auto& r : relations_) {
      if (r.s.empty() || r.t.empty())
        throw std::invalid_argument("presentation: relation sides must be nontrivial");
      for (const auto& side : {r.s, r.t})
        for (Letter l : side.letters())
          if (l.gen >= base_.size())
            throw std::invalid_argument("presentation: relation word uses an out-of-range generator");
    }
  }

  const Alphabet& base() const { return base_; }
  std::size_t stable_count() const { return stable_.size(); }
  const std::string& stable_name(std::uint32_t i) const { return stable_.at(i); }
  const std::vector<std::string>& stable_names() const { return stable_; }
  const HnnRelation& relation(std::uint32_t i) const { return relations_.at(i); }
  const std::vector<HnnRelation>& relations() const { return relations_; }
  bool is_free() const { return stable_.empty(); }

  std::optional<std::uint32_t> stable_index_of(std::string_view name) const {
    for (std::size_t i = 0; i < stable_.size(); ++i)
      if (stable_[i] == name) return static_cast<std::uint32_t>(i);
    return std::nullopt;
  }

  /// Presentation file grammar (line oriented, `#` starts a comment):
  ///   base: x y z
  ///   stable: u v
  ///   rel: u : x y^-1 -> y z^-1
  /// One rel line per stable letter, in stable-list order.
  static MultipleHnnPresentation parse(std::string_view text);
  static MultipleHnnPresentation load(const std::string& path);

 private:
  Alphabet base_;
  std::vector<std::string> stable_;
  std::vector<HnnRelation> relations_;
};

/// Alternating sequence w_0 e_1 w_1 ... e_m w_m of base-group words and
/// signed stable letters.  The type implies no normalization; pinch
/// reduction is an explicit operation.  operator== is structural, not
/// equality in the group.
class HnnWord {
 public:
  HnnWord() : bases_(1) {}
  explicit HnnWord(Word base) : bases_{std::move(base)} {}

  HnnWord(std::vector<Word> bases, std::vector<StableLetter> letters)
      : bases_(std::move(bases)), letters_(std::move(letters)) {
    if (bases_.size() != letters_.size() + 1)
      throw std::invalid_argument("HnnWord: need n+1 base words around n stable letters");
  }

  std::size_t letter_count() const { return letters_.size(); }
  const Word& base(std::size_t i) const { return bases_.at(i); }
  StableLetter letter(std::size_t i) const { return letters_.at(i); }
  const std::vector<Word>& bases() const { return bases_; }
  const std::vector<StableLetter>& letters() const { return letters_; }
  bool purely_base() const { return letters_.empty(); }

  /// Total letter count across all syllables.
  std::size_t weight() const {
    std::size_t n = letters_.size();
    for (const auto& b : bases_) n += b.length();
    return n;
  }

  friend bool operator==(const HnnWord&, const HnnWord&) = default;

 private:
  std::vector<Word> bases_;
  std::vector<StableLetter> letters_;
};

inline HnnWord hnn_concat(const HnnWord& a, const HnnWord& b) {
  std::vector<Word> bases = a.bases();
  std::vector<StableLetter> letters = a.letters();
  bases.back() = concat(bases.back(), b.base(0));
  bases.insert(bases.end(), b.bases().begin() + 1, b.bases().end());
  letters.insert(letters.end(), b.letters().begin(), b.letters().end());
  return HnnWord(std::move(bases), std::move(letters));
}

inline HnnWord hnn_invert(const HnnWord& w) {
  std::vector<Word> bases;
  std::vector<StableLetter> letters;
  bases.reserve(w.bases().size());
  letters.reserve(w.letters().size());
  for (auto it = w.bases().rbegin(); it != w.bases().rend(); ++it)
    bases.push_back(invert(*it));
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it)
    letters.push_back(it->inverse());
  return HnnWord(std::move(bases), std::move(letters));
}

/// Audit record for one removed pinch.  position is the flattened syllable
/// index of the opening stable letter at the time of removal (syllables are
/// numbered w_0 = 0, e_1 = 1, w_1 = 2, ...).  direction +1 means
/// u w u^{-1} with w in <s> was rewritten to t^k; -1 the reverse.
struct PinchReport {
  std::size_t position = 0;
  std::uint32_t letter = 0;
  int direction = 1;
  long long exponent = 0;
};

struct PinchResult {
  HnnWord word;
  std::vector<PinchReport> reports;
};

/// Britton reduction: repeatedly remove the leftmost pinch until none
/// remains.  Deterministic; the fixpoint decides triviality.
inline PinchResult pinch_reduce(const MultipleHnnPresentation& p, const HnnWord& w) {
  std::vector<Word> bases = w.bases();
  std::vector<StableLetter> letters = w.letters();
  std::vector<PinchReport> reports;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t j = 0; j + 1 < letters.size(); ++j) {
      if (letters[j].index != letters[j + 1].index ||
          letters[j].sign != -letters[j + 1].sign)
        continue;
      const HnnRelation& rel = p.relation(letters[j].index);
      const Word& side = letters[j].sign > 0 ? rel.s : rel.t;
      auto k = cyclic_power_membership(bases[j + 1], side);
      if (!k) continue;
      const Word& target = letters[j].sign > 0 ? rel.t : rel.s;
      reports.push_back({2 * j + 1, letters[j].index, letters[j].sign, *k});
      bases[j] = concat(concat(bases[j], power(target, *k)), bases[j + 2]);
      bases.erase(bases.begin() + j + 1, bases.begin() + j + 3);
      letters.erase(letters.begin() + j, letters.begin() + j + 2);
      changed = true;
      break;
    }
  }
  return {HnnWord(std::move(bases), std::move(letters)), std::move(reports)};
}

/// True when w contains no pinch (used to check reduction fixpoints).
inline bool is_pinch_free(const MultipleHnnPresentation& p, const HnnWord& w) {
  for (std::size_t j = 0; j + 1 < w.letter_count(); ++j) {
    if (w.letter(j).index != w.letter(j + 1).index ||
        w.letter(j).sign != -w.letter(j + 1).sign)
      continue;
    const HnnRelation& rel = p.relation(w.letter(j).index);
    const Word& side = w.letter(j).sign > 0 ? rel.s : rel.t;
    if (cyclic_power_membership(w.base(j + 1), side)) return false;
  }
  return true;
}

inline bool is_trivial(const MultipleHnnPresentation& p, const HnnWord& w) {
  if (w.purely_base()) return w.base(0).empty();
  HnnWord r = pinch_reduce(p, w).word;
  return r.purely_base() && r.base(0).empty();
}

inline bool are_equal(const MultipleHnnPresentation& p, const HnnWord& a, const HnnWord& b) {
  if (a.purely_base() && b.purely_base()) return a.base(0) == b.base(0);
  return is_trivial(p, hnn_concat(a, hnn_invert(b)));
}

/// g^h = h^{-1} g h, pinch reduced.
inline HnnWord hnn_conjugate(const MultipleHnnPresentation& p, const HnnWord& g, const HnnWord& h) {
  return pinch_reduce(p, hnn_concat(hnn_concat(hnn_invert(h), g), h)).word;
}

/// Word syntax extended with stable-letter names; adjacent base letters are
/// grouped into base syllables.
inline HnnWord parse_hnn_word(const MultipleHnnPresentation& p, std::string_view text) {
  std::vector<Word> bases;
  std::vector<StableLetter> letters;
  std::vector<Letter> cur;
  for (std::string_view token : detail::split_ws(text)) {
    if (token == "1") continue;
    detail::Factor f = detail::parse_factor(token);
    int sign = f.exponent < 0 ? -1 : 1;
    long long n = f.exponent < 0 ? -f.exponent : f.exponent;
    if (auto gi = p.base().index_of(f.name)) {
      for (long long i = 0; i < n; ++i) cur.push_back({*gi, sign});
    } else if (auto si = p.stable_index_of(f.name)) {
      for (long long i = 0; i < n; ++i) {
        bases.emplace_back(std::move(cur));
        cur.clear();
        letters.push_back({*si, sign});
      }
    } else {
      throw parse_error("unknown symbol '" + std::string(f.name) + "'");
    }
  }
  bases.emplace_back(std::move(cur));
  return HnnWord(std::move(bases), std::move(letters));
}

/// Inverse of parse_hnn_word; runs of one stable letter print as `u^k`.
inline std::string format_hnn_word(const MultipleHnnPresentation& p, const HnnWord& w) {
  std::string out;
  auto append = [&out](const std::string& piece) {
    if (piece.empty()) return;
    if (!out.empty()) out += ' ';
    out += piece;
  };
  std::size_t i = 0;
  while (i < w.letter_count()) {
    if (!w.base(i).empty()) append(format_word(p.base(), w.base(i)));
    StableLetter l = w.letter(i);
    long long run = 1;
    while (i + run < w.letter_count() && w.letter(i + run) == l &&
           w.base(i + run).empty())
      ++run;
    std::string piece = p.stable_name(l.index);
    long long k = run * l.sign;
    if (k != 1) piece += '^' + std::to_string(k);
    append(piece);
    i += static_cast<std::size_t>(run);
  }
  if (!w.base(w.letter_count()).empty())
    append(format_word(p.base(), w.base(w.letter_count())));
  return out.empty() ? "1" : out;
}

inline MultipleHnnPresentation MultipleHnnPresentation::parse(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::string line;
    std::istringstream in{std::string(text)};
    while (std::getline(in, line)) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      auto toks = detail::split_ws(line);
      if (!toks.empty()) lines.push_back(line);
    }
  }
  auto expect_prefix = [](const std::string& line, std::string_view prefix) -> std::string {
    auto toks = detail::split_ws(line);
    if (toks.empty() || toks[0] != prefix)
      throw parse_error("presentation: expected '" + std::string(prefix) + "' line, got '" + line + "'");
    std::size_t at = line.find(prefix.data(), 0, prefix.size());
    return line.substr(at + prefix.size());
  };
  if (lines.empty()) throw parse_error("presentation: empty input");
  std::vector<std::string> base_names;
  for (auto t : detail::split_ws(expect_prefix(lines[0], "base:"))) base_names.emplace_back(t);
  if (base_names.empty()) throw parse_error("presentation: no base generators");
  Alphabet base(base_names);

  if (lines.size() < 2) throw parse_error("presentation: missing 'stable:' line");
  std::vector<std::string> stable;
  for (auto t : detail::split_ws(expect_prefix(lines[1], "stable:"))) stable.emplace_back(t);

  std::vector<HnnRelation> relations;
  for (std::size_t li = 2; li < lines.size(); ++li) {
    std::string rest = expect_prefix(lines[li], "rel:");
    auto toks = detail::split_ws(rest);
    if (toks.size() < 2 || toks[1] != ":")
      throw parse_error("presentation: malformed relation line '" + lines[li] + "'");
    std::size_t idx = relations.size();
    if (idx >= stable.size())
      throw parse_error("presentation: more relations than stable letters");
    if (toks[0] != stable[idx])
      throw parse_error("presentation: relation " + std::to_string(idx + 1) +
                        " should name stable letter '" + stable[idx] + "'");
    auto arrow = std::find(toks.begin(), toks.end(), std::string_view("->"));
    if (arrow == toks.end())
      throw parse_error("presentation: missing '->' in relation line '" + lines[li] + "'");
    auto join = [](auto first, auto last) {
      std::string s;
      for (auto it = first; it != last; ++it) {
        if (!s.empty()) s += ' ';
        s += std::string(*it);
      }
      return s;
    };
    Word s = parse_word(base, join(toks.begin() + 2, arrow));
    Word t = parse_word(base, join(arrow + 1, toks.end()));
    if (s.empty() || t.empty())
      throw parse_error("presentation: relation for '" + stable[idx] + "' has a trivial side");
    relations.push_back({std::move(s), std::move(t)});
  }
  if (relations.size() != stable.size())
    throw parse_error("presentation: missing relation lines");
  return MultipleHnnPresentation(std::move(base), std::move(stable), std::move(relations));
}

inline MultipleHnnPresentation MultipleHnnPresentation::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open presentation file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

namespace detail {

// Flat words over the combined alphabet (base generators first, then stable
// letters) drive deterministic enumeration: conjugator candidates and ball
// elements.  Symbol codes: 2*index + (sign < 0), so ascending code order is
// the shortlex letter order.

inline HnnWord combined_word(const MultipleHnnPresentation& p,
                             const std::vector<std::uint32_t>& codes) {
  std::uint32_t nb = static_cast<std::uint32_t>(p.base().size());
  std::vector<Word> bases;
  std::vector<StableLetter> letters;
  std::vector<Letter> cur;
  for (std::uint32_t c : codes) {
    std::uint32_t idx = c >> 1;
    int sign = (c & 1) ? -1 : 1;
    if (idx < nb) {
      cur.push_back({idx, sign});
    } else {
      bases.emplace_back(std::move(cur));
      cur.clear();
      letters.push_back({idx - nb, sign});
    }
  }
  bases.emplace_back(std::move(cur));
  return HnnWord(std::move(bases), std::move(letters));
}

/// Number of freely reduced words of length <= max_len over n symmetric
/// generators, saturating at `cap`.
inline unsigned long long reduced_word_count(std::size_t n, int max_len,
                                             unsigned long long cap) {
  if (n == 0 || max_len <= 0) return 1;
  unsigned long long total = 1, layer = 2 * n;
  for (int k = 1; k <= max_len; ++k) {
    if (total > cap - layer) return cap;
    total += layer;
    if (layer > cap / (2 * n - 1 ? 2 * n - 1 : 1)) return cap;
    layer *= (2 * n - 1);
  }
  return total;
}

/// All syntactically freely reduced words of length <= max_len over the
/// combined alphabet, in shortlex order (the empty word first).
inline std::vector<HnnWord> enumerate_combined_words(const MultipleHnnPresentation& p,
                                                     int max_len) {
  std::size_t nsym = p.base().size() + p.stable_count();
  std::vector<HnnWord> out;
  std::vector<std::uint32_t> cur;
  auto rec = [&](auto&& self, int remaining) -> void {
    if (remaining == 0) {
      out.push_back(combined_word(p, cur));
      return;
    }
    for (std::uint32_t c = 0; c < 2 * nsym; ++c) {
      if (!cur.empty() && (cur.back() ^ 1u) == c) continue;
      cur.push_back(c);
      self(self, remaining - 1);
      cur.pop_back();
    }
  };
  for (int len = 0; len <= max_len; ++len) rec(rec, len);
  return out;
}

}  // namespace detail

}  // namespace britton
