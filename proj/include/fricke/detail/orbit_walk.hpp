#pragma once

// Implementation of walk_exact_depth; included from orbitsearch.hpp.

namespace fricke::orbit {

namespace detail {

struct WalkState {
  std::size_t budget;
  WalkOutcome out;
};

template <typename Visit>
void walk_rec(const FrickeGroup& g, const ProjPoint& point, unsigned remaining, std::vector<Letter>& applied,
              WalkState& st, Visit& visit) {
  if (remaining == 0) {
    if (!visit(point, static_cast<const std::vector<Letter>&>(applied))) st.out.stopped = true;
    return;
  }
  for (Letter l : group::kLetters) {
    if (!applied.empty() && applied.back() == group::inverse(l)) continue;
    if (st.out.nodes >= st.budget) {
      st.out.exhausted = true;
      return;
    }
    ++st.out.nodes;
    const ProjPoint next = g.letter_matrix(l).apply(point);
    applied.push_back(l);
    walk_rec(g, next, remaining - 1, applied, st, visit);
    applied.pop_back();
    if (st.out.stopped || st.out.exhausted) return;
  }
}

}  // namespace detail

template <typename Visit>
WalkOutcome walk_exact_depth(const FrickeGroup& g, const ProjPoint& seed, unsigned depth, std::size_t budget,
                             Visit&& visit) {
  detail::WalkState st{budget, {}};
  std::vector<Letter> applied;
  applied.reserve(depth);
  detail::walk_rec(g, seed, depth, applied, st, visit);
  return st.out;
}

}  // namespace fricke::orbit
