#pragma once

// Implementation of for_each_word; included from group.hpp.

namespace fricke::group {

namespace detail {

// Depth-first right extension over words of exactly `length` letters. Visiting
// letters in order A, a, B, b yields lexicographic order within the length.
template <typename Visit>
bool enumerate_exact_length(const FrickeGroup& g, unsigned length, std::vector<Letter>& prefix,
                            std::vector<ProjMatrix>& products, Visit& visit) {
  if (prefix.size() == length) {
    return visit(Word(prefix), products.back());
  }
  for (Letter l : kLetters) {
    if (!prefix.empty() && prefix.back() == inverse(l)) continue;
    prefix.push_back(l);
    products.push_back(products.back() * g.letter_matrix(l));
    const bool keep_going = enumerate_exact_length(g, length, prefix, products, visit);
    products.pop_back();
    prefix.pop_back();
    if (!keep_going) return false;
  }
  return true;
}

}  // namespace detail

template <typename Visit>
void for_each_word(const FrickeGroup& g, unsigned max_length, Visit&& visit) {
  std::vector<Letter> prefix;
  std::vector<ProjMatrix> products{ProjMatrix::identity()};
  for (unsigned len = 1; len <= max_length; ++len) {
    if (!detail::enumerate_exact_length(g, len, prefix, products, visit)) return;
  }
}

}  // namespace fricke::group
