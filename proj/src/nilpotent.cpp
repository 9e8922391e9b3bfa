#include "growthlab/nilpotent.hpp"

#include <sstream>

#include "growthlab/words.hpp"

namespace growthlab {

RankVector parse_rank_vector(const std::string& text) {
  RankVector rv;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(item, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed rank vector '" + text + "'");
    }
    while (pos < item.size() && item[pos] == ' ') ++pos;
    if (pos != item.size() || v < 0) throw std::invalid_argument("malformed rank vector '" + text + "'");
    rv.r.push_back(static_cast<unsigned long>(v));
  }
  if (rv.r.empty()) throw std::invalid_argument("rank vector must not be empty");
  return rv;
}

unsigned long bass_guivarch(const RankVector& rv) {
  unsigned long d = 0;
  for (std::size_t i = 0; i < rv.r.size(); ++i) d += (i + 1) * rv.r[i];
  return d;
}

unsigned long hirsch(const RankVector& rv) {
  unsigned long h = 0;
  for (auto v : rv.r) h += v;
  return h;
}

SandwichCheck hirsch_sandwich(const RankVector& rv) {
  SandwichCheck s;
  s.hirsch = hirsch(rv);
  s.degree = bass_guivarch(rv);
  s.hirsch_times_class = s.hirsch * rv.nilpotency_class();
  s.holds = s.hirsch <= s.degree && s.degree <= s.hirsch_times_class;
  return s;
}

ValidationReport validate_torsion_free(const RankVector& rv, bool noncyclic) {
  ValidationReport rep;
  auto flag = [&rep](std::string msg) {
    rep.valid = false;
    rep.issues.push_back(std::move(msg));
  };
  for (std::size_t i = 0; i < rv.r.size(); ++i) {
    if (rv.r[i] == 0) flag("r(" + std::to_string(i + 1) + ") = 0");
  }
  if (!rv.r.empty()) {
    if (noncyclic && rv.r[0] < 2) flag("noncyclic group with r(1) < 2");
    // r(1) = 1 makes the abelianization virtually cyclic, hence the group cyclic.
    if (rv.r[0] == 1 && rv.r.size() >= 2) flag("r(1) = 1 forces class 1");
  }
  return rep;
}

unsigned long max_class(unsigned long d) {
  if (d < 2) throw DegreeTooSmall("max_class needs degree d >= 2");
  unsigned long c = 1;
  while ((c + 1) * (c + 2) <= 2 * d - 2) ++c;
  return c;
}

bool multilinearity_check(const GroupModel& g, std::size_t c, const std::vector<GroupElement>& x,
                          const std::vector<long>& exponents) {
  if (c == 0) throw ArityMismatch("class must be positive");
  if (x.size() != c || exponents.size() != c) {
    throw ArityMismatch("expected " + std::to_string(c) + " elements and exponents");
  }
  const Word w = simple_commutator_word(static_cast<unsigned>(c));
  std::vector<GroupElement> powered;
  long product = 1;
  for (std::size_t i = 0; i < c; ++i) {
    powered.push_back(power(x[i], exponents[i]));
    product *= exponents[i];
  }
  const GroupElement lhs = evaluate_word(g, w, powered);
  const GroupElement rhs = power(evaluate_word(g, w, x), product);
  return lhs.key() == rhs.key();
}

}  // namespace growthlab
