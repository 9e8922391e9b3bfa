#include "growthlab/group.hpp"

#include <algorithm>
#include <unordered_set>

namespace growthlab {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m{n, std::vector<mpz_class>(n * n, 0)};
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::elementary(std::size_t n, std::size_t row, std::size_t col) {
  IntMatrix m = identity(n);
  m.at(row - 1, col - 1) += 1;
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.n != b.n) throw std::invalid_argument("matrix dimension mismatch");
  const std::size_t n = a.n;
  IntMatrix c{n, std::vector<mpz_class>(n * n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const mpz_class& aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (b.at(k, j) != 0) mpz_addmul(c.at(i, j).get_mpz_t(), aik.get_mpz_t(), b.at(k, j).get_mpz_t());
      }
    }
  }
  return c;
}

mpz_class determinant(const IntMatrix& m) {
  // Bareiss fraction-free elimination.
  const std::size_t n = m.n;
  if (n == 0) return 1;
  std::vector<mpz_class> a = m.entries;
  auto at = [&](std::size_t i, std::size_t j) -> mpz_class& { return a[i * n + j]; };
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      }
    }
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

IntMatrix inverse_unimodular(const IntMatrix& m) {
  const std::size_t n = m.n;
  const mpz_class det = determinant(m);
  if (det != 1 && det != -1) throw std::invalid_argument("matrix is not invertible over the integers");
  // Gauss-Jordan over the rationals on [m | I].
  std::vector<mpq_class> a(n * 2 * n, 0);
  const std::size_t w = 2 * n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * w + j] = m.at(i, j);
    a[i * w + n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (a[p * w + col] == 0) ++p;
    if (p != col) {
      for (std::size_t j = 0; j < w; ++j) std::swap(a[p * w + j], a[col * w + j]);
    }
    const mpq_class pivot = a[col * w + col];
    for (std::size_t j = 0; j < w; ++j) a[col * w + j] /= pivot;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i * w + col] == 0) continue;
      const mpq_class f = a[i * w + col];
      for (std::size_t j = 0; j < w; ++j) a[i * w + j] -= f * a[col * w + j];
    }
  }
  IntMatrix inv{n, std::vector<mpz_class>(n * n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = a[i * w + n + j].get_num();
  }
  return inv;
}

namespace {

void append_length(std::string& out, std::size_t len) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<char>((len >> shift) & 0xff));
}

// Big-endian two's complement with the fewest bytes that keep the sign bit.
void append_integer(std::string& out, const mpz_class& v) {
  const int s = sgn(v);
  mpz_class magnitude_bits_of = s >= 0 ? mpz_class(v) : mpz_class(-v - 1);
  const std::size_t bits = magnitude_bits_of == 0 ? 0 : mpz_sizeinbase(magnitude_bits_of.get_mpz_t(), 2);
  const std::size_t nbytes = bits / 8 + 1;
  mpz_class u = v;
  if (s < 0) {
    mpz_class modulus;
    mpz_ui_pow_ui(modulus.get_mpz_t(), 2, 8 * nbytes);
    u += modulus;
  }
  std::string bytes(nbytes, '\0');
  std::size_t count = 0;
  std::vector<unsigned char> buf(nbytes + 1);
  mpz_export(buf.data(), &count, 1, 1, 1, 0, u.get_mpz_t());
  std::copy(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(count),
            bytes.begin() + static_cast<std::ptrdiff_t>(nbytes - count));
  append_length(out, nbytes);
  out += bytes;
}

struct KeyVisitor {
  std::string& out;
  void operator()(const IntMatrix& m) const {
    for (const auto& e : m.entries) append_integer(out, e);
  }
  void operator()(const Coords& c) const {
    for (const auto& e : c.values) append_integer(out, e);
  }
  void operator()(const Residue& r) const { append_integer(out, mpz_class(r.value)); }
  void operator()(const GroupElement::Tuple& t) const {
    for (const auto& part : t) {
      const std::string k = part.key();
      append_length(out, k.size());
      out += k;
    }
  }
};

[[noreturn]] void mismatch() { throw std::invalid_argument("group elements of different kinds"); }

}  // namespace

std::string GroupElement::key() const {
  std::string out;
  std::visit(KeyVisitor{out}, data_);
  return out;
}

GroupElement compose(const GroupElement& a, const GroupElement& b) {
  const auto& x = a.data();
  const auto& y = b.data();
  if (x.index() != y.index()) mismatch();
  if (const auto* m = std::get_if<IntMatrix>(&x)) return GroupElement(*m * std::get<IntMatrix>(y));
  if (const auto* c = std::get_if<Coords>(&x)) {
    const auto& d = std::get<Coords>(y);
    if (c->values.size() != d.values.size()) mismatch();
    Coords out = *c;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += d.values[i];
    return GroupElement(std::move(out));
  }
  if (const auto* r = std::get_if<Residue>(&x)) {
    const auto& s = std::get<Residue>(y);
    if (r->order != s.order) mismatch();
    return GroupElement(Residue{(r->value + s.value) % r->order, r->order});
  }
  const auto& t = std::get<GroupElement::Tuple>(x);
  const auto& u = std::get<GroupElement::Tuple>(y);
  if (t.size() != u.size()) mismatch();
  GroupElement::Tuple out;
  out.reserve(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out.push_back(compose(t[i], u[i]));
  return GroupElement(std::move(out));
}

GroupElement inverse(const GroupElement& a) {
  const auto& x = a.data();
  if (const auto* m = std::get_if<IntMatrix>(&x)) return GroupElement(inverse_unimodular(*m));
  if (const auto* c = std::get_if<Coords>(&x)) {
    Coords out = *c;
    for (auto& v : out.values) v = -v;
    return GroupElement(std::move(out));
  }
  if (const auto* r = std::get_if<Residue>(&x)) {
    return GroupElement(Residue{(r->order - r->value) % r->order, r->order});
  }
  GroupElement::Tuple out;
  for (const auto& part : std::get<GroupElement::Tuple>(x)) out.push_back(inverse(part));
  return GroupElement(std::move(out));
}

namespace {

GroupElement identity_like(const GroupElement& a) {
  const auto& x = a.data();
  if (const auto* m = std::get_if<IntMatrix>(&x)) return GroupElement(IntMatrix::identity(m->n));
  if (const auto* c = std::get_if<Coords>(&x)) {
    return GroupElement(Coords{std::vector<mpz_class>(c->values.size(), 0)});
  }
  if (const auto* r = std::get_if<Residue>(&x)) return GroupElement(Residue{0, r->order});
  GroupElement::Tuple out;
  for (const auto& part : std::get<GroupElement::Tuple>(x)) out.push_back(identity_like(part));
  return GroupElement(std::move(out));
}

}  // namespace

GroupElement power(const GroupElement& a, long exponent) {
  GroupElement base = exponent < 0 ? inverse(a) : a;
  unsigned long e = exponent < 0 ? static_cast<unsigned long>(-(exponent + 1)) + 1
                                 : static_cast<unsigned long>(exponent);
  GroupElement result = identity_like(a);
  while (e > 0) {
    if (e & 1) result = compose(result, base);
    e >>= 1;
    if (e > 0) base = compose(base, base);
  }
  return result;
}

GroupSpec GroupSpec::free_abelian(std::size_t rank) {
  GroupSpec s;
  s.kind = Kind::FreeAbelian;
  s.rank = rank;
  return s;
}

GroupSpec GroupSpec::cyclic(unsigned long order) {
  GroupSpec s;
  s.kind = Kind::FiniteCyclic;
  s.order = order;
  return s;
}

GroupSpec GroupSpec::matrices(std::size_t dimension, std::vector<IntMatrix> generators) {
  GroupSpec s;
  s.kind = Kind::IntegerMatrixGroup;
  s.dimension = dimension;
  s.generators = std::move(generators);
  return s;
}

GroupSpec GroupSpec::product(std::vector<GroupSpec> factors) {
  GroupSpec s;
  s.kind = Kind::DirectProduct;
  s.factors = std::move(factors);
  return s;
}

GroupSpec GroupSpec::unitriangular(std::size_t n) {
  if (n < 2) throw GroupSpecError("unitriangular groups need n >= 2");
  std::vector<IntMatrix> gens;
  for (std::size_t i = 1; i < n; ++i) gens.push_back(IntMatrix::elementary(n, i, i + 1));
  return matrices(n, std::move(gens));
}

GroupSpec GroupSpec::infinite_dihedral() {
  IntMatrix s{2, {-1, 0, 0, 1}};
  IntMatrix t{2, {-1, 1, 0, 1}};
  return matrices(2, {s, t});
}

namespace {

unsigned long parse_count(const std::string& name, const std::string& text) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw GroupSpecError("malformed builtin group '" + name + "'");
  }
  return std::stoul(text);
}

}  // namespace

GroupSpec builtin_spec(const std::string& name) {
  const std::string prefix = "builtin:";
  if (name.rfind(prefix, 0) != 0) throw GroupSpecError("unknown group '" + name + "'");
  const std::string rest = name.substr(prefix.size());
  if (rest == "heisenberg") return GroupSpec::heisenberg();
  if (rest == "dinf") return GroupSpec::infinite_dihedral();
  const auto colon = rest.find(':');
  if (colon != std::string::npos) {
    const std::string family = rest.substr(0, colon);
    const unsigned long arg = parse_count(name, rest.substr(colon + 1));
    if (family == "zd") return GroupSpec::free_abelian(arg);
    if (family == "ut") return GroupSpec::unitriangular(arg);
    if (family == "cyclic") return GroupSpec::cyclic(arg);
  }
  throw GroupSpecError("unknown builtin group '" + name + "'");
}

namespace {

struct Built {
  GroupElement identity;
  std::vector<GroupElement> supplied;
};

Built build_parts(const GroupSpec& spec) {
  Built b;
  switch (spec.kind) {
    case GroupSpec::Kind::IntegerMatrixGroup: {
      if (spec.dimension == 0) throw GroupSpecError("matrix dimension must be positive");
      if (spec.generators.empty()) throw EmptyGeneratorSet("no generators supplied");
      const IntMatrix id = IntMatrix::identity(spec.dimension);
      for (const auto& g : spec.generators) {
        if (g.n != spec.dimension || g.entries.size() != g.n * g.n) {
          throw GroupSpecError("generator has the wrong dimension");
        }
        const mpz_class det = determinant(g);
        if (det != 1 && det != -1) {
          throw NonInvertibleGenerator("generator has determinant " + det.get_str());
        }
        if (g == id) throw IdentityGenerator("generator equals the identity");
        b.supplied.emplace_back(g);
      }
      b.identity = GroupElement(id);
      break;
    }
    case GroupSpec::Kind::FreeAbelian: {
      if (spec.rank == 0) throw EmptyGeneratorSet("free abelian rank must be positive");
      for (std::size_t i = 0; i < spec.rank; ++i) {
        Coords c{std::vector<mpz_class>(spec.rank, 0)};
        c.values[i] = 1;
        b.supplied.emplace_back(std::move(c));
      }
      b.identity = GroupElement(Coords{std::vector<mpz_class>(spec.rank, 0)});
      break;
    }
    case GroupSpec::Kind::FiniteCyclic: {
      if (spec.order == 0) throw GroupSpecError("cyclic order must be positive");
      if (spec.order == 1) throw IdentityGenerator("the generator of the trivial group is the identity");
      b.supplied.emplace_back(Residue{1, spec.order});
      b.identity = GroupElement(Residue{0, spec.order});
      break;
    }
    case GroupSpec::Kind::DirectProduct: {
      if (spec.factors.empty()) throw EmptyGeneratorSet("direct product without factors");
      std::vector<Built> parts;
      GroupElement::Tuple id;
      for (const auto& f : spec.factors) {
        parts.push_back(build_parts(f));
        id.push_back(parts.back().identity);
      }
      for (std::size_t i = 0; i < parts.size(); ++i) {
        for (const auto& g : parts[i].supplied) {
          GroupElement::Tuple t = id;
          t[i] = g;
          b.supplied.emplace_back(std::move(t));
        }
      }
      b.identity = GroupElement(std::move(id));
      break;
    }
  }
  return b;
}

}  // namespace

GroupModel build_group(const GroupSpec& spec) {
  Built b = build_parts(spec);
  GroupModel g;
  g.spec_ = spec;
  g.identity_ = b.identity;
  g.identity_key_ = b.identity.key();
  g.supplied_ = b.supplied;
  std::unordered_set<std::string> seen;
  for (const auto& x : b.supplied) {
    for (const GroupElement& y : {x, inverse(x)}) {
      if (seen.insert(y.key()).second) g.symmetric_.push_back(y);
    }
  }
  return g;
}

BudgetExceeded::BudgetExceeded(std::size_t completed_radius, BallProfile partial)
    : std::runtime_error("element budget exceeded after radius " + std::to_string(completed_radius)),
      completed_radius_(completed_radius),
      partial_(std::move(partial)) {}

Ball enumerate_ball(const GroupModel& g, std::size_t radius, std::size_t budget) {
  if (budget == 0) throw std::invalid_argument("budget must be at least 1");
  Ball ball;
  ball.elements.push_back(g.identity());
  ball.length.push_back(0);
  ball.index.emplace(g.identity().key(), 0);
  ball.profile.cumulative.push_back(1);
  std::size_t level_begin = 0;
  for (std::size_t r = 1; r <= radius; ++r) {
    const std::size_t level_end = ball.elements.size();
    if (!ball.profile.exhausted) {
      for (std::size_t i = level_begin; i < level_end; ++i) {
        for (const auto& s : g.symmetric_generators()) {
          GroupElement next = compose(ball.elements[i], s);
          if (ball.index.emplace(next.key(), ball.elements.size()).second) {
            ball.elements.push_back(std::move(next));
            ball.length.push_back(r);
          }
        }
      }
      if (ball.elements.size() > budget) {
        BallProfile partial = ball.profile;
        partial.radius = r - 1;
        throw BudgetExceeded(r - 1, std::move(partial));
      }
    }
    const std::size_t added = ball.elements.size() - level_end;
    if (added == 0) ball.profile.exhausted = true;
    ball.profile.spheres.push_back(added);
    ball.profile.cumulative.push_back(ball.elements.size());
    level_begin = level_end;
  }
  ball.profile.radius = radius;
  return ball;
}

BallProfile ball_profile(const GroupModel& g, std::size_t radius, std::size_t budget) {
  return enumerate_ball(g, radius, budget).profile;
}

std::size_t subgroup_ball_count(const GroupModel& g, std::size_t n,
                                const std::function<bool(const GroupElement&)>& member,
                                std::size_t budget) {
  const Ball ball = enumerate_ball(g, n, budget);
  return static_cast<std::size_t>(std::count_if(ball.elements.begin(), ball.elements.end(), member));
}

std::size_t vertex_boundary_size(const GroupModel& g, const std::vector<GroupElement>& a) {
  std::unordered_set<std::string> inside;
  for (const auto& x : a) inside.insert(x.key());
  std::unordered_set<std::string> boundary;
  for (const auto& x : a) {
    for (const auto& s : g.symmetric_generators()) {
      std::string k = compose(x, s).key();
      if (!inside.count(k)) boundary.insert(std::move(k));
    }
  }
  return boundary.size();
}

}  // namespace growthlab
