#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <britton/word.hpp>

#include "support/generators.hpp"

using namespace britton;
using testsupport::random_nonempty_word;
using testsupport::random_word;

namespace {

const Alphabet kXyz({"x", "y", "z"});

Word W(const char* text) { return parse_word(kXyz, text); }

// Oracle for cyclic_power_membership: try every exponent small enough for
// s^k to have a chance of matching, by plain repeated multiplication.
std::optional<long long> power_membership_oracle(const Word& w, const Word& s) {
  long long bound = static_cast<long long>(w.length()) + 1;
  for (long long a = 0; a <= bound; ++a)
    for (long long k : {a, -a}) {
      if (power(s, k) == w) return k;
      if (a == 0) break;
    }
  return std::nullopt;
}

// Oracle for cyclic_reduce: the shortest structural prefix c of w such that
// c^{-1} w c is cyclically reduced and conjugating back recovers w.
CyclicDecomposition cyclic_reduce_oracle(const Word& w) {
  const auto& ls = w.letters();
  for (std::size_t m = 0; 2 * m <= ls.size(); ++m) {
    Word c(std::vector<Letter>(ls.begin(), ls.begin() + m));
    Word core = concat(concat(invert(c), w), c);
    if (is_cyclically_reduced(core) && concat(concat(c, core), invert(c)) == w)
      return {c, core};
  }
  FAIL("cyclic_reduce_oracle: no decomposition found");
  return {};
}

}  // namespace

TEST_CASE("free reduction at construction", "[word]") {
  CHECK(W("x x^-1") == Word{});
  CHECK(W("x x^-1 y") == W("y"));
  CHECK(W("x y y^-1 x") == W("x^2"));
  CHECK(W("1") == Word{});
  // already-reduced input is untouched
  Word w = W("x y^-1 z");
  CHECK(Word(w.letters()) == w);
}

TEST_CASE("concat reduces at the seam", "[word]") {
  CHECK(concat(W("x y^-1"), W("y z^-1")) == W("x z^-1"));
  CHECK(concat(W("x"), W("x^-1")) == Word{});
  CHECK(concat(W("x y^-1"), Word{}) == W("x y^-1"));
}

TEST_CASE("invert", "[word]") {
  CHECK(invert(W("x y^-1")) == W("y x^-1"));
  CHECK(invert(Word{}) == Word{});
  CHECK(invert(W("y z^-1")) == W("z y^-1"));
}

TEST_CASE("conjugate is h^-1 g h", "[word]") {
  CHECK(conjugate(W("x y^-1"), Word{}) == W("x y^-1"));
  CHECK(conjugate(W("x y^-1"), W("y")) == W("y^-1 x"));
  CHECK(conjugate(Word{}, W("x z")) == Word{});
}

TEST_CASE("cyclic_reduce", "[word]") {
  auto d1 = cyclic_reduce(W("x y^-1"));
  CHECK(d1.conjugator == Word{});
  CHECK(d1.core == W("x y^-1"));

  auto d2 = cyclic_reduce(W("z x y^-1 z^-1"));
  CHECK(d2.conjugator == W("z"));
  CHECK(d2.core == W("x y^-1"));

  auto d3 = cyclic_reduce(Word{});
  CHECK(d3.conjugator == Word{});
  CHECK(d3.core == Word{});
}

TEST_CASE("cyclic_reduce agrees with the shortest-prefix oracle", "[word]") {
  std::mt19937 rng(20240811);
  for (int iter = 0; iter < 300; ++iter) {
    Word w = random_word(rng, 3, 12);
    auto got = cyclic_reduce(w);
    auto want = cyclic_reduce_oracle(w);
    INFO("w = " << format_word(kXyz, w));
    CHECK(got.conjugator == want.conjugator);
    CHECK(got.core == want.core);
    CHECK(is_cyclically_reduced(got.core));
    CHECK(concat(concat(got.conjugator, got.core), invert(got.conjugator)) == w);
    CHECK((got.core.empty() == w.empty()));
  }
}

TEST_CASE("is_conjugate", "[word]") {
  CHECK_FALSE(is_conjugate(W("x y^-1"), W("y z^-1")));
  CHECK(is_conjugate(W("x y^-1"), W("y^-1 x")));
  CHECK(is_conjugate(Word{}, Word{}));
  CHECK_FALSE(is_conjugate(Word{}, W("x")));
  // an element and its inverse need not be conjugate
  CHECK_FALSE(is_conjugate(W("x y^-1"), W("y x^-1")));
}

TEST_CASE("translation length", "[word]") {
  CHECK(translation_length(W("x y^-1")) == 2);
  CHECK(translation_length(Word{}) == 0);
  CHECK(translation_length(W("z x y^-1 z^-1")) == 2);
}

TEST_CASE("word-core invariants on random samples", "[word]") {
  std::mt19937 rng(987123);
  for (int iter = 0; iter < 300; ++iter) {
    Word u = random_word(rng, 3, 10);
    Word v = random_word(rng, 3, 10);
    Word h = random_word(rng, 3, 8);

    CHECK(concat(u, invert(u)) == Word{});
    CHECK(invert(invert(u)) == u);
    CHECK(invert(concat(u, v)) == concat(invert(v), invert(u)));

    CHECK(is_conjugate(u, conjugate(u, h)));
    CHECK(translation_length(conjugate(u, h)) == translation_length(u));
    for (long long n = 1; n <= 4; ++n)
      CHECK(translation_length(power(u, n)) == static_cast<std::size_t>(n) * translation_length(u));
  }
}

TEST_CASE("is_conjugate is an equivalence on samples", "[word]") {
  std::mt19937 rng(5551);
  for (int iter = 0; iter < 200; ++iter) {
    Word a = random_word(rng, 3, 8);
    Word b = random_word(rng, 3, 8);
    Word c = random_word(rng, 3, 8);
    CHECK(is_conjugate(a, a));
    CHECK(is_conjugate(a, b) == is_conjugate(b, a));
    if (is_conjugate(a, b) && is_conjugate(b, c)) CHECK(is_conjugate(a, c));
  }
}

TEST_CASE("cyclic_power_membership", "[word]") {
  CHECK(cyclic_power_membership(W("x y^-1 x y^-1"), W("x y^-1")) == 2);
  CHECK(cyclic_power_membership(Word{}, W("x y^-1")) == 0);
  CHECK(cyclic_power_membership(W("x"), W("x y^-1")) == std::nullopt);
  CHECK(cyclic_power_membership(W("y x^-1"), W("x y^-1")) == -1);
  CHECK_THROWS_AS(cyclic_power_membership(W("x"), Word{}), std::invalid_argument);
}

TEST_CASE("cyclic_power_membership agrees with the brute-force oracle", "[word]") {
  std::mt19937 rng(424242);
  for (int iter = 0; iter < 300; ++iter) {
    Word s = random_nonempty_word(rng, 3, 5);
    std::uniform_int_distribution<long long> kd(-4, 4);
    long long k = kd(rng);
    Word w = power(s, k);
    auto got = cyclic_power_membership(w, s);
    REQUIRE(got.has_value());
    // distinct powers of a nontrivial element are distinct, so k is unique
    CHECK(*got == k);

    Word r = random_word(rng, 3, 8);
    INFO("w = " << format_word(kXyz, r) << ", s = " << format_word(kXyz, s));
    CHECK(cyclic_power_membership(r, s) == power_membership_oracle(r, s));
  }
}

TEST_CASE("shortlex order", "[word]") {
  CHECK(shortlex_compare(Word{}, W("x")) == std::strong_ordering::less);
  CHECK(shortlex_compare(W("x"), W("x")) == std::strong_ordering::equal);
  CHECK(shortlex_compare(W("x"), W("x^-1")) == std::strong_ordering::less);
  CHECK(shortlex_compare(W("x^-1"), W("y")) == std::strong_ordering::less);
  CHECK(shortlex_compare(W("z^-1"), W("x y")) == std::strong_ordering::less);
}

TEST_CASE("word parsing and printing round-trip", "[word]") {
  CHECK(format_word(kXyz, Word{}) == "1");
  CHECK(format_word(kXyz, W("x y^-1 z^3")) == "x y^-1 z^3");
  CHECK(W("x^2 x") == W("x^3"));

  CHECK_THROWS_AS(parse_word(kXyz, "w"), parse_error);
  CHECK_THROWS_AS(parse_word(kXyz, "x^0"), parse_error);
  CHECK_THROWS_AS(parse_word(kXyz, "x^"), parse_error);
  CHECK_THROWS_AS(parse_word(kXyz, "x^two"), parse_error);
  CHECK_THROWS_AS(parse_word(kXyz, "x^99999999"), parse_error);

  std::mt19937 rng(777);
  for (int iter = 0; iter < 200; ++iter) {
    Word w = random_word(rng, 3, 10);
    CHECK(parse_word(kXyz, format_word(kXyz, w)) == w);
  }
}
