#pragma once

// freeness.hpp -- verifies, for a multiple HNN presentation with cyclic
// edge groups, the hypotheses used to invoke Bass's criterion for freeness
// of the induced action on a Z^2-tree: every associated element is
// hyperbolic (nontrivial in F), both sides of each relation have equal
// translation length, and the distinct associated elements together with
// their inverses lie in pairwise distinct conjugacy classes of F.  The
// checker reports these conditions; it does not restate Bass's criterion
// itself.

#include <string>
#include <utility>
#include <vector>

#include "hnn.hpp"

namespace britton {

struct FreenessReport {
  std::vector<bool> hyperbolic_ok;                             // per relation
  std::vector<std::pair<std::size_t, std::size_t>> length_pairs;  // (l(s_i), l(t_i))
  std::vector<std::vector<Word>> conjugacy_partition;  // blocks of conjugate words
  bool lengths_ok = false;
  bool distinctness_ok = false;
  bool verdict = false;
  std::vector<std::string> failures;
};

inline FreenessReport check_freeness_hypotheses(const MultipleHnnPresentation& p) {
  FreenessReport r;
  r.lengths_ok = true;
  bool all_hyperbolic = true;
  for (std::size_t i = 0; i < p.stable_count(); ++i) {
    const HnnRelation& rel = p.relation(static_cast<std::uint32_t>(i));
    bool hyper = !rel.s.empty() && !rel.t.empty();
    r.hyperbolic_ok.push_back(hyper);
    all_hyperbolic = all_hyperbolic && hyper;
    if (!hyper)
      r.failures.push_back("relation for " + p.stable_name(static_cast<std::uint32_t>(i)) +
                           ": a trivial side is not hyperbolic");
    std::size_t ls = translation_length(rel.s);
    std::size_t lt = translation_length(rel.t);
    r.length_pairs.emplace_back(ls, lt);
    if (ls != lt) {
      r.lengths_ok = false;
      r.failures.push_back("relation for " + p.stable_name(static_cast<std::uint32_t>(i)) +
                           ": translation lengths differ (" + std::to_string(ls) +
                           " vs " + std::to_string(lt) + ")");
    }
  }

  // Distinct words among {s_i^{+-1}} u {t_i^{+-1}}; repeats (the same word
  // used in several relations) count once.
  std::vector<Word> words;
  for (const auto& rel : p.relations()) {
    words.push_back(rel.s);
    words.push_back(invert(rel.s));
    words.push_back(rel.t);
    words.push_back(invert(rel.t));
  }
  std::sort(words.begin(), words.end(), shortlex_less);
  words.erase(std::unique(words.begin(), words.end()), words.end());

  for (const Word& w : words) {
    bool placed = false;
    for (auto& block : r.conjugacy_partition)
      if (is_conjugate(block.front(), w)) {
        block.push_back(w);
        placed = true;
        break;
      }
    if (!placed) r.conjugacy_partition.push_back({w});
  }
  r.distinctness_ok = true;
  for (const auto& block : r.conjugacy_partition)
    if (block.size() > 1) {
      r.distinctness_ok = false;
      std::string msg = "conjugate in F:";
      for (const Word& w : block) msg += ' ' + format_word(p.base(), w) + " ~";
      msg.erase(msg.size() - 2);
      r.failures.push_back(msg);
    }

  r.verdict = all_hyperbolic && r.lengths_ok && r.distinctness_ok;
  return r;
}

}  // namespace britton
