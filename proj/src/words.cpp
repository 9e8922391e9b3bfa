#include "growthlab/words.hpp"

#include <sstream>

namespace growthlab {

mpz_class lambda(unsigned k) {
  if (k == 0) throw std::invalid_argument("commutator weight must be positive");
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, k - 1);
  return 3 * p - 2;
}

mpz_class simple_commutator_length(unsigned k) {
  if (k == 0) throw std::invalid_argument("commutator weight must be positive");
  mpz_class len = 1;
  for (unsigned i = 2; i <= k; ++i) len = 2 * len + 2;
  return len;
}

Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) l.sign = -l.sign;
  return out;
}

Word commutator_word(const Word& a, const Word& b) {
  Word out = inverse_word(a);
  const Word bi = inverse_word(b);
  out.insert(out.end(), bi.begin(), bi.end());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word simple_commutator_word(unsigned k) {
  if (k == 0) throw std::invalid_argument("commutator weight must be positive");
  Word w{{1, 1}};
  for (unsigned i = 2; i <= k; ++i) w = commutator_word(w, Word{{i, 1}});
  return w;
}

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (const auto& l : w) {
    if (!out.empty() && out.back().index == l.index && out.back().sign == -l.sign) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

GroupElement evaluate_word(const GroupModel& g, const Word& w,
                           const std::vector<GroupElement>& assignment) {
  std::vector<GroupElement> inverses;
  inverses.reserve(assignment.size());
  for (const auto& a : assignment) inverses.push_back(g.inverse(a));
  GroupElement result = g.identity();
  for (const auto& l : w) {
    if (l.index == 0 || l.index > assignment.size()) {
      throw IndexOutOfRange("word letter x" + std::to_string(l.index) + " has no assigned element");
    }
    result = g.compose(result, l.sign > 0 ? assignment[l.index - 1] : inverses[l.index - 1]);
  }
  return result;
}

Word parse_word(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  Word w;
  while (in >> tok) {
    if (tok.size() < 2 || (tok[0] != 'x' && tok[0] != 'X')) {
      throw std::invalid_argument("malformed word letter '" + tok + "'");
    }
    std::size_t index = 0;
    for (std::size_t i = 1; i < tok.size(); ++i) {
      if (tok[i] < '0' || tok[i] > '9') throw std::invalid_argument("malformed word letter '" + tok + "'");
      index = index * 10 + static_cast<std::size_t>(tok[i] - '0');
    }
    if (index == 0) throw std::invalid_argument("generator indices start at 1");
    w.push_back({index, tok[0] == 'x' ? 1 : -1});
  }
  return w;
}

std::string to_string(const Word& w) {
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += ' ';
    out += (l.sign > 0 ? 'x' : 'X');
    out += std::to_string(l.index);
  }
  return out;
}

}  // namespace growthlab
