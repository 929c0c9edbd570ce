#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eawg/rootsystem.hpp"
#include "eawg/semilattice.hpp"

namespace eawg {

/// Index family of the essential central generators: Esupp(S1) and/or the
/// shifted Esupp(S2) depending on type, ascending by mask. Empty for F4/G2.
std::vector<SubsetJ> jset(const EarsSpec &spec);

/// Divisor Delta(r,s) in {1,2} for 1 <= r < s <= nu.
int delta(const EarsSpec &spec, int r, int s);

/// chi_J(r,s): 1 iff {r,s} is properly contained in J.
inline int chi(SubsetJ J, int r, int s) {
  return (J.contains(r) && J.contains(s) && J.size() > 2) ? 1 : 0;
}

/// Pairs (r,s), 1 <= r < s <= n, in lexicographic order.
std::vector<std::pair<int, int>> pairs_upto(int n);

/// An assignment J -> eps_J in {0,1} over a J-family; bit b belongs to family[b].
struct IntegralCollection {
  std::vector<SubsetJ> family;
  std::uint32_t eps = 0;

  bool value(std::size_t b) const { return (eps >> b) & 1u; }
  /// Members J with eps_J = 1.
  std::vector<SubsetJ> support() const;
};

bool is_integral(const EarsSpec &spec, const IntegralCollection &eps);

/// eps_bar(r,s) = Delta(r,s)^{-1} sum_J chi_J(r,s) eps_J for every pair in
/// pairs_upto(nu) order; throws NotIntegral when eps is not integral.
std::vector<std::int64_t> eps_bar(const EarsSpec &spec, const IntegralCollection &eps);

/// Parity constraints of integrality: one mask over jset bits per pair with
/// Delta = 2; eps is integral iff popcount(eps & mask) is even for each.
struct IntegralityConstraints {
  std::vector<SubsetJ> family;
  std::vector<std::uint32_t> masks;

  bool accepts(std::uint32_t eps) const;
};
IntegralityConstraints integrality_constraints(const EarsSpec &spec);

struct CorollaryNote {
  std::string name;     // e.g. "B-ell(b)"
  std::string verdict;  // "Minimal", "NotMinimal", "n0=5", ...
  std::string detail;
};

struct DecisionReport {
  std::uint64_t inc = 1;
  int n0 = 0;
  bool has_pbc = true;
  std::size_t jset_size = 0;
  std::vector<IntegralCollection> witnesses;  // nontrivial, capped
  std::vector<CorollaryNote> corollary_notes;
};

inline constexpr std::size_t kMaxJSet = 24;
inline constexpr std::size_t kDefaultMaxWitnesses = 16;

/// Brute-force count over {0,1}^|J|. Throws JSetTooLarge above kMaxJSet and
/// NotPowerOfTwo if the count is not a power of two.
DecisionReport count_collections(const EarsSpec &spec,
                                 std::size_t max_witnesses = kDefaultMaxWitnesses);

/// Closed formula for n0 when a counting corollary applies.
std::optional<int> closed_form_n0(const EarsSpec &spec);

/// Integral collections of one semilattice over its own Esupp with divisor
/// delta_j. `side` is 1 or 2; `offset` only shifts indices in witnesses.
std::uint64_t single_semilattice_collections(const Semilattice &s, int side, int offset = 0);

bool decide_pbc_via_FG(const EarsSpec &spec);

enum class Minimality { Minimal, NotMinimal, Unknown };
std::string to_string(Minimality m);

struct ScreenResult {
  Minimality verdict = Minimality::Unknown;
  std::vector<CorollaryNote> fired;
};

/// Applies the sufficient conditions for minimality and non-minimality.
/// Throws IntegralityViolation if conditions of both kinds fire.
ScreenResult minimality_screen(const EarsSpec &spec);

/// Searches for S1 (type B) or S2 (type C) of the requested index admitting a
/// nontrivial integral collection; the other side is a lattice.
EarsSpec construct_nonminimal(TypeTag type, int nullity, int twist, int m1, int m2, int rank = 3);

}  // namespace eawg
