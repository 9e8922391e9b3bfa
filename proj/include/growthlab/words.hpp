#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "growthlab/group.hpp"

namespace growthlab {

/// x_index^{sign}; indices are 1-based.
struct Letter {
  std::size_t index = 1;
  int sign = 1;
  bool operator==(const Letter&) const = default;
};

/// Unreduced word in the free group on x_1, x_2, ...
using Word = std::vector<Letter>;

class IndexOutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// 3 * 2^{k-1} - 2, the unreduced length of a weight-k simple commutator.
mpz_class lambda(unsigned k);

/// Length of simple_commutator_word(k) from the recursion
/// len(1) = 1, len(k) = 2 len(k-1) + 2, without building the word.
mpz_class simple_commutator_length(unsigned k);

Word inverse_word(const Word& w);
/// [a, b] = a^{-1} b^{-1} a b, unreduced.
Word commutator_word(const Word& a, const Word& b);
/// [x_1, ..., x_k] with [x_1] = x_1 and [w, x_k] = w^{-1} x_k^{-1} w x_k.
Word simple_commutator_word(unsigned k);

Word free_reduce(const Word& w);

/// Left-to-right product; assignment[i - 1] is the value of x_i.
GroupElement evaluate_word(const GroupModel& g, const Word& w,
                           const std::vector<GroupElement>& assignment);

/// Whitespace-separated letters "x3" (x_3) and "X3" (x_3^{-1}).
Word parse_word(const std::string& text);
std::string to_string(const Word& w);

}  // namespace growthlab
