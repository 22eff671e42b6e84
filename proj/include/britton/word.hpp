#pragma once

// word.hpp -- freely reduced words over a finite symmetric alphabet: exact
// algebra of a finitely generated free group F.  Covers free reduction,
// cyclic reduction w = c r c^{-1}, conjugacy by cyclic rotation, translation
// length on the Cayley tree, membership in cyclic subgroups, and the shortlex
// order used for deterministic enumeration.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace britton {

/// Error raised by all text-format readers (words, HNN words, presentation
/// files, certificate JSON).
class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

using gen_index = std::uint32_t;

namespace detail {

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

inline std::vector<std::string_view> split_ws(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

// Factors have the shape `name` or `name^k` with k a nonzero integer.
struct Factor {
  std::string_view name;
  long long exponent;
};

inline constexpr long long max_exponent = 1'000'000;

inline Factor parse_factor(std::string_view token) {
  std::size_t caret = token.find('^');
  std::string_view name = token.substr(0, caret == std::string_view::npos ? token.size() : caret);
  if (!is_identifier(name))
    throw parse_error("bad generator name '" + std::string(name) + "'");
  long long k = 1;
  if (caret != std::string_view::npos) {
    std::string_view exp = token.substr(caret + 1);
    auto [ptr, ec] = std::from_chars(exp.data(), exp.data() + exp.size(), k);
    if (ec != std::errc{} || ptr != exp.data() + exp.size())
      throw parse_error("malformed exponent in '" + std::string(token) + "'");
    if (k == 0)
      throw parse_error("zero exponent in '" + std::string(token) + "'");
    if (k > max_exponent || k < -max_exponent)
      throw parse_error("exponent out of range in '" + std::string(token) + "'");
  }
  return {name, k};
}

}  // namespace detail

/// Ordered list of distinct generator names.  The order is fixed at
/// construction and determines shortlex comparisons everywhere downstream.
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    for (const auto& n : names_)
      if (!detail::is_identifier(n))
        throw std::invalid_argument("Alphabet: '" + n + "' is not an identifier");
    for (std::size_t i = 0; i < names_.size(); ++i)
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j])
          throw std::invalid_argument("Alphabet: duplicate generator '" + names_[i] + "'");
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(gen_index i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<gen_index> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return static_cast<gen_index>(i);
    return std::nullopt;
  }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> names_;
};

/// One signed generator occurrence; sign is +1 or -1.
struct Letter {
  gen_index gen = 0;
  int sign = 1;

  Letter inverse() const { return {gen, -sign}; }
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Letter order underlying shortlex: generator index first, then + before -.
inline bool letter_less(Letter a, Letter b) {
  if (a.gen != b.gen) return a.gen < b.gen;
  return a.sign > b.sign;
}

/// A freely reduced word, i.e. an element of the free group on its alphabet.
/// Construction reduces eagerly, so operator== decides equality in F.
class Word {
 public:
  Word() = default;

  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
    std::size_t top = 0;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (top > 0 && letters_[top - 1] == letters_[i].inverse())
        --top;
      else
        letters_[top++] = letters_[i];
    }
    letters_.resize(top);
  }

  bool empty() const { return letters_.empty(); }
  std::size_t length() const { return letters_.size(); }
  const std::vector<Letter>& letters() const { return letters_; }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

/// Freely reduced product a*b.
inline Word concat(const Word& a, const Word& b) {
  std::vector<Letter> out = a.letters();
  out.reserve(out.size() + b.length());
  for (Letter l : b.letters()) {
    if (!out.empty() && out.back() == l.inverse())
      out.pop_back();
    else
      out.push_back(l);
  }
  return Word(std::move(out));
}

inline Word invert(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.length());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it)
    out.push_back(it->inverse());
  return Word(std::move(out));
}

/// g^h = h^{-1} g h, freely reduced.
inline Word conjugate(const Word& g, const Word& h) {
  return concat(concat(invert(h), g), h);
}

inline Word power(const Word& w, long long k) {
  const Word base = k < 0 ? invert(w) : w;
  long long n = k < 0 ? -k : k;
  Word out;
  for (long long i = 0; i < n; ++i) out = concat(out, base);
  return out;
}

inline bool is_cyclically_reduced(const Word& w) {
  if (w.empty()) return true;
  return w.letters().front() != w.letters().back().inverse();
}

/// The unique form w = conjugator * core * conjugator^{-1} with the core
/// cyclically reduced and the conjugator as short as possible.
struct CyclicDecomposition {
  Word conjugator;
  Word core;
};

inline CyclicDecomposition cyclic_reduce(const Word& w) {
  const auto& ls = w.letters();
  std::size_t i = 0, j = ls.size();
  while (j - i >= 2 && ls[i] == ls[j - 1].inverse()) {
    ++i;
    --j;
  }
  return {Word(std::vector<Letter>(ls.begin(), ls.begin() + i)),
          Word(std::vector<Letter>(ls.begin() + i, ls.begin() + j))};
}

/// Conjugacy in F: cyclically reduced cores agree up to rotation.  The
/// rotation test scans one core against the other doubled.
inline bool is_conjugate(const Word& a, const Word& b) {
  Word ca = cyclic_reduce(a).core;
  Word cb = cyclic_reduce(b).core;
  if (ca.length() != cb.length()) return false;
  if (ca.empty()) return true;
  std::vector<Letter> doubled = cb.letters();
  doubled.insert(doubled.end(), cb.letters().begin(), cb.letters().end());
  return std::search(doubled.begin(), doubled.end(), ca.letters().begin(),
                     ca.letters().end()) != doubled.end();
}

/// Translation length of w acting on the Cayley tree of F: the length of the
/// cyclically reduced core.  Zero exactly for the identity.
inline std::size_t translation_length(const Word& w) {
  return cyclic_reduce(w).core.length();
}

/// If w = s^k for some integer k, returns k (possibly 0 or negative),
/// otherwise nullopt.  s must be nontrivial.  Works on the cyclic
/// decompositions: w = s^k forces equal conjugators and core(w) = core(s)^k,
/// which is settled by length divisibility and one direct comparison per sign.
inline std::optional<long long> cyclic_power_membership(const Word& w, const Word& s) {
  if (s.empty())
    throw std::invalid_argument("cyclic_power_membership: base of the cyclic subgroup is trivial");
  if (w.empty()) return 0;
  CyclicDecomposition dw = cyclic_reduce(w);
  CyclicDecomposition ds = cyclic_reduce(s);
  if (dw.conjugator != ds.conjugator) return std::nullopt;
  if (dw.core.length() % ds.core.length() != 0) return std::nullopt;
  long long k = static_cast<long long>(dw.core.length() / ds.core.length());
  if (dw.core == power(ds.core, k)) return k;
  if (dw.core == power(ds.core, -k)) return -k;
  return std::nullopt;
}

/// Shortlex: shorter first, then letterwise by (generator index, + before -).
inline std::strong_ordering shortlex_compare(const Word& a, const Word& b) {
  if (a.length() != b.length())
    return a.length() < b.length() ? std::strong_ordering::less
                                   : std::strong_ordering::greater;
  for (std::size_t i = 0; i < a.length(); ++i) {
    Letter la = a.letters()[i], lb = b.letters()[i];
    if (la == lb) continue;
    return letter_less(la, lb) ? std::strong_ordering::less
                               : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

inline bool shortlex_less(const Word& a, const Word& b) {
  return shortlex_compare(a, b) == std::strong_ordering::less;
}

/// Reads the whitespace-separated factor syntax: each factor is `name` or
/// `name^k` with k a nonzero integer; `1` denotes the empty word.  The result
/// is freely reduced.
inline Word parse_word(const Alphabet& alphabet, std::string_view text) {
  std::vector<Letter> letters;
  for (std::string_view token : detail::split_ws(text)) {
    if (token == "1") continue;
    detail::Factor f = detail::parse_factor(token);
    auto gi = alphabet.index_of(f.name);
    if (!gi) throw parse_error("unknown generator '" + std::string(f.name) + "'");
    int sign = f.exponent < 0 ? -1 : 1;
    long long n = f.exponent < 0 ? -f.exponent : f.exponent;
    for (long long i = 0; i < n; ++i) letters.push_back({*gi, sign});
  }
  return Word(std::move(letters));
}

/// Inverse of parse_word; runs of a generator print as `name^k`.
inline std::string format_word(const Alphabet& alphabet, const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  const auto& ls = w.letters();
  for (std::size_t i = 0; i < ls.size();) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    long long k = static_cast<long long>(j - i) * ls[i].sign;
    if (!out.empty()) out += ' ';
    out += alphabet.name(ls[i].gen);
    if (k != 1) {
      out += '^';
      out += std::to_string(k);
    }
    i = j;
  }
  return out;
}

}  // namespace britton
