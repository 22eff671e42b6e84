#pragma once

// torsion.hpp -- generalized torsion certificates: a nontrivial g together
// with conjugators h_1..h_n witnessing g^{h_1} g^{h_2} ... g^{h_n} = 1,
// where g^h = h^{-1} g h.  Such an element obstructs bi-orderability.
// verify_certificate replays a given witness; search_certificate runs a
// bounded deterministic search for one.

#include <optional>

#include "hnn.hpp"

namespace britton {

struct TorsionCertificate {
  HnnWord g;
  std::vector<HnnWord> conjugators;  // n >= 1
};

/// True iff g is nontrivial and the product of the conjugates g^{h_j},
/// taken in order, is trivial in the extension.
inline bool verify_certificate(const MultipleHnnPresentation& p, const TorsionCertificate& c) {
  if (c.conjugators.empty()) return false;
  if (is_trivial(p, c.g)) return false;
  HnnWord prod;
  for (const HnnWord& h : c.conjugators)
    prod = pinch_reduce(p, hnn_concat(prod, hnn_conjugate(p, c.g, h))).word;
  return prod.purely_base() && prod.base(0).empty();
}

enum class SearchStatus { found, none_within_bounds, budget_exhausted };

struct CertificateSearchResult {
  SearchStatus status = SearchStatus::none_within_bounds;
  std::optional<TorsionCertificate> certificate;
  unsigned long long nodes = 0;  // product evaluations spent
};

/// Depth-first search over products g^{h_1} ... g^{h_k} with k <= max_factors
/// and each h_j ranging over all freely reduced words of length <= max_conj_len
/// over the combined alphabet, in shortlex order.  Factor counts are tried in
/// increasing order and conjugator tuples lexicographically, so the first hit
/// is deterministic.  Every multiplication into a partial product counts one
/// node against the budget.
inline CertificateSearchResult search_certificate(const MultipleHnnPresentation& p,
                                                  const HnnWord& g, int max_factors,
                                                  int max_conj_len,
                                                  unsigned long long budget = 1'000'000) {
  if (max_factors < 1) throw std::invalid_argument("search_certificate: max_factors must be >= 1");
  if (max_conj_len < 0) throw std::invalid_argument("search_certificate: max_conj_len must be >= 0");
  CertificateSearchResult result;
  if (is_trivial(p, g)) return result;
  std::size_t nsym = p.base().size() + p.stable_count();
  if (detail::reduced_word_count(nsym, max_conj_len, budget) >= budget) {
    result.status = SearchStatus::budget_exhausted;
    return result;
  }
  std::vector<HnnWord> conjugators = detail::enumerate_combined_words(p, max_conj_len);
  std::vector<HnnWord> conjugates;
  conjugates.reserve(conjugators.size());
  for (const HnnWord& h : conjugators) conjugates.push_back(hnn_conjugate(p, g, h));

  std::vector<std::size_t> tuple;
  bool exhausted = false;
  // Partial products along the current tuple; partials[d] has d factors.
  auto rec = [&](auto&& self, const HnnWord& partial, int depth, int target) -> bool {
    for (std::size_t idx = 0; idx < conjugates.size(); ++idx) {
      if (++result.nodes > budget) {
        exhausted = true;
        return false;
      }
      HnnWord next = pinch_reduce(p, hnn_concat(partial, conjugates[idx])).word;
      tuple.push_back(idx);
      if (depth + 1 == target) {
        if (next.purely_base() && next.base(0).empty()) return true;
      } else if (self(self, next, depth + 1, target)) {
        return true;
      }
      tuple.pop_back();
    }
    return false;
  };
  for (int k = 1; k <= max_factors && !exhausted; ++k) {
    tuple.clear();
    if (rec(rec, HnnWord{}, 0, k)) {
      TorsionCertificate cert;
      cert.g = g;
      for (std::size_t idx : tuple) cert.conjugators.push_back(conjugators[idx]);
      result.status = SearchStatus::found;
      result.certificate = std::move(cert);
      return result;
    }
  }
  result.status = exhausted ? SearchStatus::budget_exhausted : SearchStatus::none_within_bounds;
  return result;
}

}  // namespace britton
