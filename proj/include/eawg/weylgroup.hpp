#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "eawg/exact.hpp"
#include "eawg/rootsystem.hpp"
#include "eawg/semilattice.hpp"

namespace eawg {

/// V~ = V_dot + V0 + (V0)^*: coordinates [finite | sigma_1..sigma_nu | lambda_1..lambda_nu].
class AmbientSpace {
 public:
  explicit AmbientSpace(const EarsSpec &spec);

  int dim() const { return finite_dim_ + 2 * nullity_; }
  int finite_dim() const { return finite_dim_; }
  int nullity() const { return nullity_; }
  const QDense &gram() const { return gram_; }
  const QDense &gram_inverse() const { return gram_inv_; }

  QVector embed(const Root &root) const;
  QVector sigma(int r) const;
  QVector lambda(int r) const;
  Rational form(const QVector &x, const QVector &y) const { return bilinear(gram_, x, y); }

 private:
  int finite_dim_;
  int nullity_;
  QDense gram_, gram_inv_;
};

/// Rational square matrix stored as an integer matrix over a positive common
/// denominator, kept in lowest terms. Products use checked arithmetic.
class WeylElement {
 public:
  static constexpr int kMaxDim = 12;

  WeylElement() = default;
  /// `split` is the finite dimension of an ambient space [finite | sigma | lambda];
  /// elements fixing every sigma and every lambda-coordinate then multiply blockwise.
  static WeylElement identity(int n, int split = -1);
  static WeylElement from_rational(const QDense &m, int split = -1);

  int size() const { return n_; }
  Rational entry(int i, int j) const;
  QDense to_rational() const;
  bool is_identity() const;

  WeylElement operator*(const WeylElement &other) const;
  bool operator==(const WeylElement &other) const;
  bool blockwise() const { return affine_; }

  QVector apply(const QVector &v) const;
  WeylElement transpose() const;

 private:
  void normalize();
  void refresh_bound();
  void refresh_max();

  int n_ = 0;
  int split_ = -1;
  bool affine_ = false;
  std::int64_t den_ = 1;
  std::int64_t max_abs_ = 0;
  std::array<std::int64_t, kMaxDim * kMaxDim> num_{};
};

struct ZChoice {
  QVector short_root;  // alpha for pairs inside 1..t, alpha' for mixed pairs
  QVector long_root;   // beta for pairs inside t+1..nu, beta' for mixed pairs
};

/// Reflection representation of W for a fixed spec, with a reflection cache.
class WeylEngine {
 public:
  explicit WeylEngine(const EarsSpec &spec);

  const EarsSpec &spec() const { return spec_; }
  const AmbientSpace &space() const { return space_; }
  WeylElement identity() const { return WeylElement::identity(space_.dim(), space_.finite_dim()); }

  /// u -> u - (u, alpha^vee) alpha; throws NotARoot unless alpha is a real root.
  const WeylElement &reflection(const Root &alpha) const;
  WeylElement inverse(const WeylElement &w) const;
  WeylElement power(const WeylElement &w, std::int64_t n) const;
  /// x^{-1} y^{-1} x y
  WeylElement commutator(const WeylElement &x, const WeylElement &y) const;
  bool preserves_form(const WeylElement &w) const;

  /// t_alpha^sigma = w_{alpha+sigma} w_alpha.
  WeylElement t(const Root &alpha, const std::vector<std::int64_t> &sigma) const;
  /// t_{i,r} = t^{k_{i,r} sigma_r}_{alpha_i}
  WeylElement translation(int i, int r) const;
  /// Image of z_{r,s}, r < s; the choice defaults to (theta_1, theta_2).
  WeylElement z_image(int r, int s, const std::optional<ZChoice> &choice = std::nullopt) const;
  /// Image of z_J for J (global indices) in supp(S1) or shifted supp(S2).
  WeylElement z_J(SubsetJ J, const std::optional<QVector> &theta = std::nullopt) const;

  /// Reflections w_alpha for alpha in Pi.
  const std::vector<WeylElement> &pi_reflections() const;
  bool is_central(const WeylElement &w) const;

  Root root(const QVector &finite, const std::vector<std::int64_t> &iso = {}) const;
  std::vector<std::int64_t> sigma_vec(int r, std::int64_t c = 1) const;
  std::vector<std::int64_t> tau(SubsetJ J) const;

 private:
  EarsSpec spec_;
  AmbientSpace space_;
  WeylElement gram_, gram_inv_;
  using Key = std::array<std::int64_t, 32>;
  struct KeyHash {
    std::size_t operator()(const Key &k) const;
  };
  Key key_of(const Root &alpha, const std::vector<std::int64_t> *shift) const;
  const WeylElement &reflection_keyed(const Key &key, const Root &alpha,
                                      const std::vector<std::int64_t> *shift) const;

  mutable std::unordered_map<Key, WeylElement, KeyHash> cache_;
  mutable std::vector<WeylElement> pi_refl_;
};

WeylElement reflection(const EarsSpec &spec, const Root &alpha);
WeylElement translation(const EarsSpec &spec, int i, int r);
WeylElement z_image(const EarsSpec &spec, int r, int s);

struct CheckRecord {
  std::string identity;
  std::vector<int> indices;
  bool pass = true;
  std::string detail;
};

struct VerificationReport {
  std::string name;
  std::vector<CheckRecord> checks;

  std::size_t failures() const;
  bool passed() const { return failures() == 0; }
  void add(std::string identity, std::vector<int> indices, bool pass, std::string detail = {});
  /// Throws IdentityFailure naming the first failing check.
  void require_pass() const;
};

/// Relations (ii)-(iv), centrality of the z images, choice independence
/// and form preservation. Requires rank <= 4 and nu <= 4.
VerificationReport verify_pox_images(const EarsSpec &spec);

struct LemmaSampling {
  int box = 2;             // isotropic coordinates in [-box, box]
  int max_power = 3;       // n in [-max_power, max_power]
};
VerificationReport verify_lemma_images(const EarsSpec &spec, const LemmaSampling &sampling = {});

struct OrbitCoverReport {
  int height_bound = 0;
  std::size_t target_count = 0;
  std::size_t reached_count = 0;
  std::vector<Root> unreached;
  bool complete() const { return unreached.empty(); }
};
OrbitCoverReport orbit_cover(const EarsSpec &spec, int height_bound);

struct FreeCenterReport {
  std::size_t generators = 0;
  std::size_t rank = 0;
  std::size_t products_checked = 0;
  std::vector<std::vector<std::int64_t>> trivial_products;  // nonzero exponents giving identity
  bool passed() const { return rank == generators && trivial_products.empty(); }
};
FreeCenterReport free_center_check(const EarsSpec &spec, int exponent_bound);

/// w_alpha applied to a root without forming matrices.
Root reflect_root(const EarsSpec &spec, const Root &alpha, const Root &v);

}  // namespace eawg
