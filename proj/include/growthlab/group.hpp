#pragma once

// Concrete finitely generated groups with exact element arithmetic, and
// breadth-first enumeration of Cayley balls.

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace growthlab {

/// Square integer matrix, row-major.
struct IntMatrix {
  std::size_t n = 0;
  std::vector<mpz_class> entries;

  static IntMatrix identity(std::size_t n);
  /// Identity plus a single 1 at (row, col), 1-based.
  static IntMatrix elementary(std::size_t n, std::size_t row, std::size_t col);

  const mpz_class& at(std::size_t row, std::size_t col) const { return entries[row * n + col]; }
  mpz_class& at(std::size_t row, std::size_t col) { return entries[row * n + col]; }
  bool operator==(const IntMatrix& other) const = default;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
mpz_class determinant(const IntMatrix& m);
/// Inverse of a unimodular matrix; throws std::invalid_argument otherwise.
IntMatrix inverse_unimodular(const IntMatrix& m);

struct Coords {
  std::vector<mpz_class> values;
  bool operator==(const Coords& other) const = default;
};

struct Residue {
  unsigned long value = 0;
  unsigned long order = 1;
  bool operator==(const Residue& other) const = default;
};

class GroupElement {
 public:
  using Tuple = std::vector<GroupElement>;
  using Storage = std::variant<IntMatrix, Coords, Residue, Tuple>;

  GroupElement() = default;
  GroupElement(IntMatrix m) : data_(std::move(m)) {}
  GroupElement(Coords c) : data_(std::move(c)) {}
  GroupElement(Residue r) : data_(r) {}
  GroupElement(Tuple t) : data_(std::move(t)) {}

  const Storage& data() const { return data_; }
  bool operator==(const GroupElement& other) const { return data_ == other.data_; }

  /// Injective byte serialization: per component a 4-byte big-endian length
  /// followed by the big-endian two's-complement bytes, row-major. Tuples
  /// concatenate the keys of their parts, each itself length-prefixed.
  std::string key() const;

 private:
  Storage data_;
};

GroupElement compose(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& a);
GroupElement power(const GroupElement& a, long exponent);

struct GroupSpec {
  enum class Kind { IntegerMatrixGroup, FreeAbelian, DirectProduct, FiniteCyclic };

  Kind kind = Kind::FreeAbelian;
  std::size_t dimension = 0;        // IntegerMatrixGroup
  std::vector<IntMatrix> generators;  // IntegerMatrixGroup
  std::size_t rank = 0;             // FreeAbelian
  unsigned long order = 0;          // FiniteCyclic
  std::vector<GroupSpec> factors;   // DirectProduct

  static GroupSpec free_abelian(std::size_t rank);
  static GroupSpec cyclic(unsigned long order);
  static GroupSpec matrices(std::size_t dimension, std::vector<IntMatrix> generators);
  static GroupSpec product(std::vector<GroupSpec> factors);
  /// Standard generators E_{i,i+1} of the upper unitriangular n x n matrices.
  static GroupSpec unitriangular(std::size_t n);
  static GroupSpec heisenberg() { return unitriangular(3); }
  /// Infinite dihedral group as 2x2 integer matrices, generated by two
  /// reflections.
  static GroupSpec infinite_dihedral();
};

/// Resolves "builtin:zd:<d>", "builtin:heisenberg", "builtin:ut:<n>",
/// "builtin:cyclic:<k>" and "builtin:dinf".
GroupSpec builtin_spec(const std::string& name);

class GroupSpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class NonInvertibleGenerator : public GroupSpecError {
 public:
  using GroupSpecError::GroupSpecError;
};
class EmptyGeneratorSet : public GroupSpecError {
 public:
  using GroupSpecError::GroupSpecError;
};
class IdentityGenerator : public GroupSpecError {
 public:
  using GroupSpecError::GroupSpecError;
};

class GroupModel {
 public:
  const GroupSpec& spec() const { return spec_; }
  const GroupElement& identity() const { return identity_; }
  /// The generators as supplied (x_1, ..., x_k); used for word evaluation.
  const std::vector<GroupElement>& supplied() const { return supplied_; }
  /// X union X^{-1} without duplicates; an involution appears once.
  const std::vector<GroupElement>& symmetric_generators() const { return symmetric_; }
  /// Cayley-graph valency: number of distinct elements of X union X^{-1}.
  std::size_t valency() const { return symmetric_.size(); }

  GroupElement compose(const GroupElement& a, const GroupElement& b) const {
    return growthlab::compose(a, b);
  }
  GroupElement inverse(const GroupElement& a) const { return growthlab::inverse(a); }
  bool is_identity(const GroupElement& a) const { return a.key() == identity_key_; }

 private:
  friend GroupModel build_group(const GroupSpec& spec);
  GroupSpec spec_;
  GroupElement identity_;
  std::string identity_key_;
  std::vector<GroupElement> supplied_;
  std::vector<GroupElement> symmetric_;
};

GroupModel build_group(const GroupSpec& spec);

struct BallProfile {
  std::size_t radius = 0;
  std::vector<mpz_class> cumulative;  // s_0 .. s_R
  std::vector<mpz_class> spheres;     // a_1 .. a_R
  bool exhausted = false;
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::size_t completed_radius, BallProfile partial);
  std::size_t completed_radius() const { return completed_radius_; }
  const BallProfile& partial() const { return partial_; }

 private:
  std::size_t completed_radius_;
  BallProfile partial_;
};

/// Enumerated ball B_R with the word length of every element.
struct Ball {
  std::vector<GroupElement> elements;  // in BFS order
  std::vector<std::size_t> length;
  std::unordered_map<std::string, std::size_t> index;
  BallProfile profile;
};

/// Level-synchronous BFS from the identity. The budget caps the number of
/// stored elements and is checked after each completed level.
Ball enumerate_ball(const GroupModel& g, std::size_t radius, std::size_t budget);
BallProfile ball_profile(const GroupModel& g, std::size_t radius, std::size_t budget);

/// |B_n intersect H| for H given by a membership predicate.
std::size_t subgroup_ball_count(const GroupModel& g, std::size_t n,
                                const std::function<bool(const GroupElement&)>& member,
                                std::size_t budget);

/// |A X^{+-1} \ A|.
std::size_t vertex_boundary_size(const GroupModel& g, const std::vector<GroupElement>& a);

}  // namespace growthlab
