#pragma once

// order.hpp -- finite-ball positive-cone search.  A Ball collects the
// distinct group elements representable by words of length <= r over the
// combined alphabet, with partial product and conjugation tables.  search_cone
// backtracks over sign assignments: a completed assignment is a cone witness
// ("no obstruction", inconclusive about the whole group), while exhaustion is
// a sound refutation (no left/bi-order of the group restricts consistently to
// the ball) delivered as a replayable deduction trace.

#include <array>
#include <map>
#include <numeric>
#include <set>

#include <boost/rational.hpp>

#include "hnn.hpp"

namespace britton {

class budget_exhausted_error : public std::runtime_error {
 public:
  explicit budget_exhausted_error(const std::string& what) : std::runtime_error(what) {}
};

enum class OrderMode { left, bi };

namespace detail {

// Integer functionals on base-generator exponent vectors that are invariant
// under the relations: each row of the matrix is ab(s_i) - ab(t_i), and any
// integer vector in the kernel extends to a homomorphism to Z (stable
// letters mapped to 0).  Used purely as a sound separator when matching
// words against ball members.
inline std::vector<std::vector<long long>> invariant_functionals(
    const MultipleHnnPresentation& p) {
  using Q = boost::rational<long long>;
  std::size_t n = p.base().size();
  std::vector<std::vector<Q>> m;
  for (const auto& rel : p.relations()) {
    std::vector<long long> d(n, 0);
    for (Letter l : rel.s.letters()) d[l.gen] += l.sign;
    for (Letter l : rel.t.letters()) d[l.gen] -= l.sign;
    std::vector<Q> row(n);
    bool nonzero = false;
    for (std::size_t c = 0; c < n; ++c) {
      row[c] = Q(d[c]);
      nonzero = nonzero || d[c] != 0;
    }
    if (nonzero) m.push_back(std::move(row));
  }
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m.size(); ++col) {
    std::size_t pr = row;
    while (pr < m.size() && m[pr][col] == Q(0)) ++pr;
    if (pr == m.size()) continue;
    std::swap(m[row], m[pr]);
    Q piv = m[row][col];
    for (auto& x : m[row]) x /= piv;
    for (std::size_t r2 = 0; r2 < m.size(); ++r2) {
      if (r2 == row || m[r2][col] == Q(0)) continue;
      Q f = m[r2][col];
      for (std::size_t c2 = 0; c2 < n; ++c2) m[r2][c2] -= f * m[row][c2];
    }
    pivots.push_back(col);
    ++row;
  }
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<long long>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Q> v(n, Q(0));
    v[free] = Q(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    long long denom = 1;
    for (const Q& x : v) denom = std::lcm(denom, x.denominator());
    std::vector<long long> iv(n);
    for (std::size_t c = 0; c < n; ++c)
      iv[c] = v[c].numerator() * (denom / v[c].denominator());
    basis.push_back(std::move(iv));
  }
  return basis;
}

}  // namespace detail

/// The distinct group elements of word length <= radius, indexed in shortlex
/// order of their least spellings; element 0 is the identity.  product and
/// conjugate are partial (defined whenever the result lies in the ball),
/// inverse is total.
class Ball {
 public:
  std::size_t size() const { return members_.size(); }
  int radius() const { return radius_; }
  const MultipleHnnPresentation& presentation() const { return pres_; }

  /// Shortlex-least spelling of element i.
  const HnnWord& representative(int i) const { return members_.at(i).rep; }
  /// Pinch-reduced form of element i.
  const HnnWord& reduced(int i) const { return members_.at(i).red; }

  int inverse(int i) const { return inverse_.at(i); }

  std::optional<int> product(int i, int j) const {
    std::int32_t k = product_[static_cast<std::size_t>(i) * members_.size() + j];
    if (k < 0) return std::nullopt;
    return k;
  }

  /// h^{-1} e_i h when that element lies in the ball.
  std::optional<int> conjugate(int i, int h) const {
    std::int32_t k = conj_[static_cast<std::size_t>(i) * members_.size() + h];
    if (k < 0) return std::nullopt;
    return k;
  }

  /// Index of the ball element equal to w, if any.
  std::optional<int> identify(const HnnWord& w) const {
    HnnWord red = pinch_reduce(pres_, w).word;
    auto it = buckets_.find(key_of(red));
    if (it == buckets_.end()) return std::nullopt;
    for (int idx : it->second)
      if (are_equal(pres_, red, members_[idx].red)) return idx;
    return std::nullopt;
  }

 private:
  friend Ball enumerate_ball(const MultipleHnnPresentation&, int, unsigned long long);

  struct Member {
    HnnWord rep;
    HnnWord red;
  };

  // Matching key: the stable-letter signature of the reduced form (invariant
  // across pinch-free spellings of one element) plus the invariant
  // functionals of the base exponents.  Equal elements always share a key.
  std::vector<long long> key_of(const HnnWord& red) const {
    std::vector<long long> key;
    key.push_back(static_cast<long long>(red.letter_count()));
    for (StableLetter l : red.letters())
      key.push_back(2LL * l.index + (l.sign < 0 ? 1 : 0));
    std::vector<long long> exps(pres_.base().size(), 0);
    for (const Word& b : red.bases())
      for (Letter l : b.letters()) exps[l.gen] += l.sign;
    for (const auto& f : functionals_) {
      long long v = 0;
      for (std::size_t c = 0; c < exps.size(); ++c) v += f[c] * exps[c];
      key.push_back(v);
    }
    return key;
  }

  MultipleHnnPresentation pres_;
  int radius_ = 0;
  std::vector<Member> members_;
  std::vector<int> inverse_;
  std::vector<std::int32_t> product_, conj_;
  std::vector<std::vector<long long>> functionals_;
  std::map<std::vector<long long>, std::vector<int>> buckets_;
};

/// Builds the ball of the given radius.  Every equality test between group
/// elements counts against the budget; exceeding it raises
/// budget_exhausted_error.
inline Ball enumerate_ball(const MultipleHnnPresentation& p, int radius,
                           unsigned long long budget = 100'000'000ULL) {
  if (radius < 0) throw std::invalid_argument("enumerate_ball: radius must be >= 0");
  Ball ball;
  ball.pres_ = p;
  ball.radius_ = radius;
  ball.functionals_ = detail::invariant_functionals(p);

  std::size_t nsym = p.base().size() + p.stable_count();
  if (detail::reduced_word_count(nsym, radius, budget) >= budget)
    throw budget_exhausted_error("enumerate_ball: candidate words exceed the equality-test budget");

  unsigned long long used = 0;
  auto equal_check = [&](const HnnWord& a, const HnnWord& b) {
    if (++used > budget)
      throw budget_exhausted_error("enumerate_ball: equality-test budget exhausted");
    return are_equal(p, a, b);
  };

  std::vector<HnnWord> candidates = detail::enumerate_combined_words(p, radius);
  for (HnnWord& cand : candidates) {
    HnnWord red = pinch_reduce(p, cand).word;
    auto& bucket = ball.buckets_[ball.key_of(red)];
    bool known = false;
    for (int idx : bucket)
      if (equal_check(red, ball.members_[idx].red)) {
        known = true;
        break;
      }
    if (!known) {
      bucket.push_back(static_cast<int>(ball.members_.size()));
      ball.members_.push_back({std::move(cand), std::move(red)});
    }
  }

  const int n = static_cast<int>(ball.members_.size());
  auto locate = [&](const HnnWord& red) -> std::int32_t {
    auto it = ball.buckets_.find(ball.key_of(red));
    if (it == ball.buckets_.end()) return -1;
    for (int idx : it->second)
      if (equal_check(red, ball.members_[idx].red)) return idx;
    return -1;
  };

  ball.inverse_.resize(n);
  for (int i = 0; i < n; ++i) {
    std::int32_t k = locate(pinch_reduce(p, hnn_invert(ball.members_[i].red)).word);
    if (k < 0) throw std::logic_error("enumerate_ball: an inverse escaped the ball");
    ball.inverse_[i] = k;
  }

  ball.product_.assign(static_cast<std::size_t>(n) * n, -1);
  ball.conj_.assign(static_cast<std::size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::size_t at = static_cast<std::size_t>(i) * n + j;
      if (i == 0) {
        ball.product_[at] = j;
      } else if (j == 0) {
        ball.product_[at] = i;
      } else {
        ball.product_[at] = locate(
            pinch_reduce(p, hnn_concat(ball.members_[i].red, ball.members_[j].red)).word);
      }
    }
  for (int i = 0; i < n; ++i)
    for (int h = 0; h < n; ++h) {
      std::size_t at = static_cast<std::size_t>(i) * n + h;
      if (h == 0) {
        ball.conj_[at] = i;
      } else if (i == 0) {
        ball.conj_[at] = 0;
      } else {
        const HnnWord& hw = ball.members_[h].red;
        ball.conj_[at] = locate(pinch_reduce(
            p, hnn_concat(hnn_concat(hnn_invert(hw), ball.members_[i].red), hw)).word);
      }
    }
  return ball;
}

/// One replayable deduction step.  Axioms: "sign-totality" [e] opens a branch
/// assuming e in C; "product-closure" [i,j,k] forces k from i,j; with
/// "conjugation-invariance" [i,h,k] forcing k = h^{-1} e_i h from i (bi mode
/// only); "antisymmetry" [k,k^{-1}] and "identity-in-cone" [i,j] end a branch
/// in contradiction.
struct TraceStep {
  std::string axiom;
  std::vector<int> elements;
};

struct ConeVerdict {
  enum class Kind { no_obstruction, refuted };
  Kind kind = Kind::no_obstruction;
  std::vector<int> cone;         // ascending element indices (no_obstruction)
  std::vector<TraceStep> trace;  // minimized refutation (refuted)
};

/// Exhaustively checks the cone axioms on the ball: identity excluded, sign
/// totality on inverse pairs, product closure, and (bi mode) conjugation
/// invariance wherever the tables are defined.
inline bool check_cone(const Ball& ball, const std::vector<int>& cone, OrderMode mode) {
  const int n = static_cast<int>(ball.size());
  std::vector<char> in(n, 0);
  for (int i : cone) {
    if (i <= 0 || i >= n) return false;
    in[i] = 1;
  }
  for (int i = 1; i < n; ++i)
    if (in[i] + in[ball.inverse(i)] != 1) return false;
  for (int i = 1; i < n; ++i) {
    if (!in[i]) continue;
    for (int j = 1; j < n; ++j) {
      if (!in[j]) continue;
      if (auto k = ball.product(i, j))
        if (*k == 0 || !in[*k]) return false;
    }
    if (mode == OrderMode::bi)
      for (int h = 0; h < n; ++h)
        if (auto k = ball.conjugate(i, h))
          if (*k == 0 || !in[*k]) return false;
  }
  return true;
}

namespace detail {

// Backtracking sign assignment with conflict-directed backjumping.  Branches
// on the shortlex-least unassigned element, positive first, and propagates
// the closure axioms to a fixpoint.  Each conflict is traced back to the
// branch assumptions it actually used, so exhausted subtrees that never
// depended on an assumption refute their whole ancestry at once and the
// final trace carries only steps on some contradiction path.
class ConeSolver {
 public:
  ConeSolver(const Ball& ball, OrderMode mode)
      : ball_(ball), mode_(mode), n_(static_cast<int>(ball.size())) {
    sign_.assign(n_, 0);
    reason_.assign(n_, -2);
  }

  ConeVerdict run() {
    for (int i = 1; i < n_; ++i)
      if (ball_.inverse(i) == i)
        throw std::logic_error("search_cone: element equal to its own inverse");
    SolveResult res = solve();
    ConeVerdict v;
    if (res.sat) {
      v.kind = ConeVerdict::Kind::no_obstruction;
      for (int i = 1; i < n_; ++i)
        if (sign_[i] > 0) v.cone.push_back(i);
      return v;
    }
    if (!res.support.empty())
      throw std::logic_error("search_cone: refutation support escaped the root");
    v.kind = ConeVerdict::Kind::refuted;
    std::vector<int> ids(res.steps.begin(), res.steps.end());
    std::sort(ids.begin(), ids.end());
    for (int id : ids) v.trace.push_back(render(log_[id]));
    return v;
  }

 private:
  enum StepKind { totality, product, conj, antisym, identity };

  struct Step {
    StepKind kind;
    std::vector<int> elems;
  };

  struct Conflict {
    std::vector<int> seed_steps;
    std::vector<int> seed_elems;  // positive assignments feeding the contradiction
  };

  struct SolveResult {
    bool sat = false;
    std::set<int> support;  // branch assumptions the refutation rests on
    std::set<int> steps;    // log ids on some contradiction path
  };

  TraceStep render(const Step& s) const {
    static const char* names[] = {"sign-totality", "product-closure",
                                  "conjugation-invariance", "antisymmetry",
                                  "identity-in-cone"};
    return {names[s.kind], s.elems};
  }

  int log_step(StepKind k, std::vector<int> elems) {
    log_.push_back({k, std::move(elems)});
    return static_cast<int>(log_.size()) - 1;
  }

  void assign(int e, int reason_step) {
    sign_[e] = 1;
    sign_[ball_.inverse(e)] = -1;
    reason_[e] = reason_step;
    trail_.push_back(e);
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      int e = trail_.back();
      trail_.pop_back();
      sign_[e] = 0;
      sign_[ball_.inverse(e)] = 0;
      reason_[e] = -2;
    }
  }

  // Conclude e_k in C from the given premises; a is always a premise, b is
  // the second factor for products and the conjugator otherwise.
  std::optional<Conflict> force(StepKind kind, int a, int b, int k) {
    if (k == 0) return Conflict{{log_step(identity, {a, b})}, {a, b}};
    if (sign_[k] > 0) return std::nullopt;
    int sid = log_step(kind, {a, b, k});
    std::vector<int> premises =
        kind == product ? std::vector<int>{a, b} : std::vector<int>{a};
    if (sign_[k] < 0) {
      int cid = log_step(antisym, {k, ball_.inverse(k)});
      premises.push_back(ball_.inverse(k));
      return Conflict{{sid, cid}, std::move(premises)};
    }
    assign(k, sid);
    return std::nullopt;
  }

  std::optional<Conflict> propagate(std::size_t qhead) {
    for (; qhead < trail_.size(); ++qhead) {
      int a = trail_[qhead];
      if (mode_ == OrderMode::bi)
        for (int h = 0; h < n_; ++h)
          if (auto k = ball_.conjugate(a, h))
            if (auto c = force(conj, a, h, *k)) return c;
      std::size_t assigned = trail_.size();
      for (std::size_t t = 0; t < assigned; ++t) {
        int b = trail_[t];
        if (auto k = ball_.product(a, b))
          if (auto c = force(product, a, b, *k)) return c;
        if (b != a)
          if (auto k = ball_.product(b, a))
            if (auto c = force(product, b, a, *k)) return c;
      }
    }
    return std::nullopt;
  }

  // Walk a conflict back through reasons to the branch assumptions it used.
  SolveResult close(const Conflict& c) {
    SolveResult res;
    res.steps.insert(c.seed_steps.begin(), c.seed_steps.end());
    std::vector<int> work = c.seed_elems;
    std::set<int> seen;
    while (!work.empty()) {
      int e = work.back();
      work.pop_back();
      if (!seen.insert(e).second) continue;
      int r = reason_[e];
      if (r == -1) {
        res.support.insert(e);
        continue;
      }
      if (r < 0) throw std::logic_error("search_cone: closure hit an unassigned element");
      res.steps.insert(r);
      const Step& st = log_[r];
      work.push_back(st.elems[0]);
      if (st.kind == product) work.push_back(st.elems[1]);
    }
    return res;
  }

  SolveResult solve() {
    int pick = -1;
    for (int i = 1; i < n_; ++i)
      if (sign_[i] == 0) {
        pick = i;
        break;
      }
    if (pick < 0) {
      SolveResult r;
      r.sat = true;
      return r;
    }
    std::array<SolveResult, 2> branch;
    for (int b = 0; b < 2; ++b) {
      int e = b == 0 ? pick : ball_.inverse(pick);
      std::size_t mark = trail_.size();
      int assume_id = log_step(totality, {e});
      assign(e, -1);
      auto conflict = propagate(mark);
      SolveResult res = conflict ? close(*conflict) : solve();
      if (res.sat) return res;
      undo_to(mark);
      if (!res.support.count(e)) return res;  // independent of this assumption
      res.support.erase(e);
      res.steps.insert(assume_id);
      branch[b] = std::move(res);
    }
    SolveResult merged;
    merged.support = std::move(branch[0].support);
    merged.support.insert(branch[1].support.begin(), branch[1].support.end());
    merged.steps = std::move(branch[0].steps);
    merged.steps.insert(branch[1].steps.begin(), branch[1].steps.end());
    return merged;
  }

  const Ball& ball_;
  OrderMode mode_;
  int n_;
  std::vector<int> sign_;
  std::vector<int> reason_;
  std::vector<int> trail_;
  std::vector<Step> log_;
};

}  // namespace detail

inline ConeVerdict search_cone(const Ball& ball, OrderMode mode) {
  detail::ConeSolver solver(ball, mode);
  return solver.run();
}

/// Replays a refutation trace against the ball tables.  A branch is refuted
/// either by reaching a contradiction step or by a nested assumption frame
/// whose two sides are both refuted; the whole trace must be consumed.
inline bool validate_refutation(const Ball& ball, OrderMode mode,
                                const std::vector<TraceStep>& trace) {
  const int n = static_cast<int>(ball.size());
  auto ok_idx = [n](int i) { return i >= 0 && i < n; };
  auto rec = [&](auto&& self, std::size_t pos,
                 std::set<int> positives) -> std::optional<std::size_t> {
    while (pos < trace.size()) {
      const TraceStep& s = trace[pos];
      const auto& e = s.elements;
      if (s.axiom == "sign-totality") {
        if (e.size() != 1 || !ok_idx(e[0]) || e[0] == 0) return std::nullopt;
        if (positives.count(e[0]) || positives.count(ball.inverse(e[0])))
          return std::nullopt;
        std::set<int> pos_branch = positives;
        pos_branch.insert(e[0]);
        auto after = self(self, pos + 1, std::move(pos_branch));
        if (!after || *after >= trace.size()) return std::nullopt;
        const TraceStep& flip = trace[*after];
        if (flip.axiom != "sign-totality" || flip.elements.size() != 1 ||
            flip.elements[0] != ball.inverse(e[0]))
          return std::nullopt;
        std::set<int> neg_branch = positives;
        neg_branch.insert(ball.inverse(e[0]));
        return self(self, *after + 1, std::move(neg_branch));
      }
      if (s.axiom == "product-closure") {
        if (e.size() != 3 || !ok_idx(e[0]) || !ok_idx(e[1]) || !ok_idx(e[2]) || e[2] == 0)
          return std::nullopt;
        if (!positives.count(e[0]) || !positives.count(e[1])) return std::nullopt;
        if (ball.product(e[0], e[1]) != std::optional<int>(e[2])) return std::nullopt;
        positives.insert(e[2]);
        ++pos;
        continue;
      }
      if (s.axiom == "conjugation-invariance") {
        if (mode != OrderMode::bi) return std::nullopt;
        if (e.size() != 3 || !ok_idx(e[0]) || !ok_idx(e[1]) || !ok_idx(e[2]) || e[2] == 0)
          return std::nullopt;
        if (!positives.count(e[0])) return std::nullopt;
        if (ball.conjugate(e[0], e[1]) != std::optional<int>(e[2])) return std::nullopt;
        positives.insert(e[2]);
        ++pos;
        continue;
      }
      if (s.axiom == "antisymmetry") {
        if (e.size() != 2 || !ok_idx(e[0]) || !ok_idx(e[1])) return std::nullopt;
        if (e[1] != ball.inverse(e[0])) return std::nullopt;
        if (!positives.count(e[0]) || !positives.count(e[1])) return std::nullopt;
        return pos + 1;
      }
      if (s.axiom == "identity-in-cone") {
        if (e.size() != 2 || !ok_idx(e[0]) || !ok_idx(e[1])) return std::nullopt;
        if (!positives.count(e[0]) || !positives.count(e[1])) return std::nullopt;
        if (ball.product(e[0], e[1]) != std::optional<int>(0)) return std::nullopt;
        return pos + 1;
      }
      return std::nullopt;
    }
    return std::nullopt;  // no contradiction reached
  };
  auto end = rec(rec, 0, {});
  return end.has_value() && *end == trace.size();
}

}  // namespace britton
