#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eawg/exact.hpp"
#include "eawg/semilattice.hpp"

namespace eawg {

enum class TypeTag { B, C, F4, G2 };

/// Non-simply-laced finite type: B_l (l >= 2), C_l (l >= 3), F4 or G2.
struct FiniteType {
  TypeTag tag = TypeTag::B;
  int rank = 2;

  /// Throws RankOutOfRange when the rank violates the type bounds.
  static FiniteType make(TypeTag tag, int rank);
  /// Accepts "B", "C", "F4", "G2"; throws UnsupportedType otherwise.
  static TypeTag parse_tag(const std::string &name);

  std::string tag_name() const;  // "B", "C", "F4", "G2"
  std::string name() const;      // "B3", "C4", "F4", "G2"
  bool operator==(const FiniteType &) const = default;
};

enum class Realization {
  Standard,         // orthonormal-style coordinates for B/C/F4, simple-root basis for G2
  SimpleRootBasis,  // coordinates in the basis of simple roots
};

enum class RootLength { Short, Long };

/// A finite root system with exact coordinates and Gram matrix. Short roots
/// have squared length 2 and long roots 2k (before any rescaling).
/// Simple roots are ordered so that alpha_1 is short, alpha_2 long and
/// (alpha_1, alpha_2) != 0.
class FiniteRoots {
 public:
  FiniteRoots(FiniteType type, QDense gram, std::vector<QVector> short_roots,
              std::vector<QVector> long_roots, std::vector<QVector> simple);

  const FiniteType &type() const { return type_; }
  int rank() const { return type_.rank; }
  /// Squared-length ratio long/short: 3 for G2, else 2.
  int k() const { return type_.tag == TypeTag::G2 ? 3 : 2; }

  const QDense &gram() const { return gram_; }
  const std::vector<QVector> &short_roots() const { return short_; }
  const std::vector<QVector> &long_roots() const { return long_; }
  /// short roots followed by long roots
  std::vector<QVector> all_roots() const;
  /// alpha_1..alpha_l, index 0 is alpha_1.
  const std::vector<QVector> &simple() const { return simple_; }
  const QVector &simple_root(int i) const { return simple_.at(i - 1); }
  RootLength simple_length(int i) const;

  Rational form(const QVector &a, const QVector &b) const { return bilinear(gram_, a, b); }
  /// (a, b^vee) = 2 (a,b) / (b,b)
  Rational pairing(const QVector &a, const QVector &b) const;
  /// (a^vee, b^vee) measured in units where short roots have squared length 2.
  Rational coroot_form(const QVector &a, const QVector &b) const;

  std::optional<RootLength> classify(const QVector &v) const;

  /// Same coordinates, form multiplied by `factor` (> 0).
  FiniteRoots rescaled(Rational factor) const;

 private:
  FiniteType type_;
  QDense gram_;
  std::vector<QVector> short_, long_, simple_;
  std::vector<QVector> sorted_short_, sorted_long_;
};

FiniteRoots build_finite(FiniteType type, Realization realization = Realization::Standard);

/// Validated datum of R(X, S1, S2). S1 lives on coordinates 1..t, S2 on
/// t+1..nu (stored with its own indexing 1..nu-t).
class EarsSpec {
 public:
  static EarsSpec make(FiniteType type, int nullity, int twist, Semilattice s1, Semilattice s2,
                       Realization realization = Realization::Standard);
  static EarsSpec make(FiniteRoots roots, int nullity, int twist, Semilattice s1, Semilattice s2);

  const FiniteRoots &finite() const { return roots_; }
  const FiniteType &type() const { return roots_.type(); }
  TypeTag tag() const { return roots_.type().tag; }
  int rank() const { return roots_.rank(); }
  int nullity() const { return nullity_; }
  int twist() const { return twist_; }
  int k() const { return roots_.k(); }
  const Semilattice &s1() const { return s1_; }
  const Semilattice &s2() const { return s2_; }
  /// supp(S2) shifted onto t+1..nu.
  std::vector<SubsetJ> supp2_global() const;

  const std::string &label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  /// Same root system over a different finite realization.
  EarsSpec with_finite(FiniteRoots roots) const;

 private:
  EarsSpec(FiniteRoots roots, int nullity, int twist, Semilattice s1, Semilattice s2);

  FiniteRoots roots_;
  int nullity_;
  int twist_;
  Semilattice s1_;
  Semilattice s2_;
  std::string label_;
};

/// Unvalidated spec as it appears in a JSON document.
struct RawSpec {
  std::string type;
  int rank = 0;
  int nullity = 0;
  int twist = 0;
  std::vector<std::vector<int>> supp1;
  std::vector<std::vector<int>> supp2;  // indices 1..nu-t
  std::string label;
};

EarsSpec validate_spec(const RawSpec &raw);
RawSpec to_raw(const EarsSpec &spec);

/// Element alpha_dot + sum n_r sigma_r of V.
struct Root {
  QVector finite;
  std::vector<std::int64_t> iso;
  auto operator<=>(const Root &) const = default;
};

enum class RootClass { ShortRoot, LongRoot, Isotropic, NotARoot };
std::string to_string(RootClass c);

RootClass root_member(const EarsSpec &spec, const Root &v);
inline bool is_real_root(RootClass c) { return c == RootClass::ShortRoot || c == RootClass::LongRoot; }

/// k_r = k for r <= t, 1 otherwise.
int k_r(const EarsSpec &spec, int r);
/// 1 if alpha_i short, k_r if long.
int k_ir(const EarsSpec &spec, int i, int r);
/// a_{i,j}(r) = k_{j,r} k_{i,r}^{-1} (alpha_i, alpha_j^vee); throws IntegralityViolation if not in Z.
std::int64_t a_pair(const EarsSpec &spec, int i, int j, int r);
/// a_{i,j}(r,s) = k k_r^{-1} k_{i,r} k_{j,s} (alpha_i^vee, alpha_j^vee), r <= s.
Rational a_quad(const EarsSpec &spec, int i, int j, int r, int s);

/// Generating roots Pi = simple roots plus the type-dependent affine part.
struct GeneratorSet {
  std::vector<Root> roots;          // deduplicated, simple roots first
  std::vector<int> multiplicity;    // how often each root arises in the raw union
  std::vector<std::string> origin;  // e.g. "alpha_2", "theta_1+tau{1,2}"
};
GeneratorSet generators_Pi(const EarsSpec &spec);

Root make_root(const QVector &finite, int nullity);
Root add_iso(Root root, const std::vector<std::int64_t> &shift);
std::string to_string(const Root &root);

}  // namespace eawg
