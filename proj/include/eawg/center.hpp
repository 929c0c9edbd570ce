#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eawg/collections.hpp"
#include "eawg/rootsystem.hpp"
#include "eawg/smith.hpp"

namespace eawg {

/// Abelian presentation of the center: generators z_{r,s} (pairs in
/// lexicographic order) followed by z_J for J in jset(spec); one relation
/// row per J.
struct CenterPresentation {
  std::vector<std::pair<int, int>> pairs;
  std::vector<SubsetJ> family;
  IntMatrix relations;

  std::size_t generator_count() const { return pairs.size() + family.size(); }
  std::size_t pair_column(int r, int s) const;
  std::size_t family_column(std::size_t b) const { return pairs.size() + b; }
  std::vector<std::string> generator_names() const;
};

CenterPresentation presentation(const EarsSpec &spec);

struct CenterStructure {
  std::size_t free_rank = 0;
  std::vector<std::int64_t> torsion;

  /// Product of the torsion factors.
  std::uint64_t torsion_order() const;
  bool operator==(const CenterStructure &) const = default;
};

CenterStructure center_structure(const CenterPresentation &p);
CenterStructure center_structure(const EarsSpec &spec);

/// Exponent vector of u(eps) over the generators of presentation(spec): minus
/// eps_bar on the pairs and eps_J on the z_J. Twice it equals the sum of the
/// relation rows selected by eps. Throws NotIntegral.
std::vector<std::int64_t> kernel_element(const EarsSpec &spec, const IntegralCollection &eps);

/// Row-space membership and canonical coset keys for a fixed relation matrix.
class QuotientMap {
 public:
  explicit QuotientMap(const IntMatrix &relations);

  /// Canonical representative of x modulo the row space.
  std::vector<std::int64_t> residue(const std::vector<std::int64_t> &x) const;
  bool in_row_space(const std::vector<std::int64_t> &x) const;
  const SmithDecomposition &smith() const { return snf_; }

 private:
  SmithDecomposition snf_;
};

}  // namespace eawg
