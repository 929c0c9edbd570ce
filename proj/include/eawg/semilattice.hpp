#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace eawg {

/// A subset of {1,...,n} stored as a bitmask, coordinate 1 in the lowest bit.
class SubsetJ {
 public:
  static constexpr int kMaxElement = 30;

  constexpr SubsetJ() = default;
  constexpr explicit SubsetJ(std::uint32_t mask) : mask_(mask) {}

  /// Throws OutOfRangeIndex for elements outside 1..kMaxElement.
  static SubsetJ from_elements(std::span<const int> elements);
  static SubsetJ pair(int r, int s);

  constexpr std::uint32_t mask() const { return mask_; }
  int size() const;
  bool empty() const { return mask_ == 0; }
  bool contains(int r) const { return r >= 1 && r <= kMaxElement && ((mask_ >> (r - 1)) & 1u); }
  bool subset_of(SubsetJ other) const { return (mask_ & ~other.mask_) == 0; }
  /// Largest element, 0 for the empty set.
  int max_element() const;

  /// Ascending list of elements.
  std::vector<int> elements() const;
  SubsetJ shifted(int offset) const;
  std::string to_string() const;

  constexpr auto operator<=>(const SubsetJ &) const = default;

 private:
  std::uint32_t mask_ = 0;
};

/// A semilattice in Z^dim given by its supporting class with respect to the
/// fixed basis. Immutable once validated.
class Semilattice {
 public:
  static constexpr int kMaxDim = 20;

  /// Zero semilattice (dim 0, supp = {{}}).
  Semilattice();

  /// Checks that the class contains {} and every singleton; deduplicates.
  static Semilattice validate(int dim, const std::vector<std::vector<int>> &supp_list);
  static Semilattice from_subsets(int dim, std::vector<SubsetJ> supp);
  static Semilattice lattice(int dim);
  static Semilattice minimal(int dim);

  int dim() const { return dim_; }
  /// Members in ascending mask order.
  const std::vector<SubsetJ> &supp() const { return supp_; }
  bool in_supp(SubsetJ J) const;

  /// True iff the odd-support of coords is a member of supp.
  bool contains(std::span<const std::int64_t> coords) const;
  /// Membership in S + S, whose mod-2 classes are {J xor J'}.
  bool sum_contains(std::span<const std::int64_t> coords) const;

  int index() const { return static_cast<int>(supp_.size()) - 1; }
  std::vector<SubsetJ> esupp() const;
  /// 1 if {r,s} is in supp, else 2. Requires 1 <= r < s <= dim.
  int delta_j(int r, int s) const;
  bool is_lattice() const { return supp_.size() == (std::size_t{1} << dim_); }

  /// Sorted list of sorted integer lists, e.g. [[],[1],[2],[1,2]].
  std::vector<std::vector<int>> to_lists() const;

  bool operator==(const Semilattice &other) const {
    return dim_ == other.dim_ && supp_ == other.supp_;
  }

 private:
  Semilattice(int dim, std::vector<SubsetJ> supp);

  int dim_ = 0;
  std::vector<SubsetJ> supp_;
  std::vector<bool> member_;
  std::vector<bool> sum_member_;
};

/// Lazily enumerates every supporting class of a given dimension. Each class
/// is determined by a choice of the subsets of size >= 2; with
/// up_to_permutation only the lexicographically least member of each orbit
/// under coordinate permutations is yielded.
class SemilatticeEnumerator {
 public:
  static constexpr int kMaxDim = 5;

  SemilatticeEnumerator(int dim, bool up_to_permutation);

  std::optional<Semilattice> next();
  void restart() { code_ = 0; }
  /// Total number of classes ignoring permutations: 2^(2^dim - dim - 1).
  std::uint64_t raw_count() const { return std::uint64_t{1} << free_.size(); }

 private:
  bool is_orbit_minimum(std::uint64_t code) const;
  Semilattice decode(std::uint64_t code) const;

  int dim_;
  bool up_to_permutation_;
  std::vector<std::uint32_t> free_;                  // subsets of size >= 2, ascending
  std::vector<std::vector<int>> permuted_bit_;       // per permutation: free index -> free index
  std::uint64_t code_ = 0;
};

std::vector<Semilattice> enumerate_semilattices(int dim, bool up_to_permutation);

}  // namespace eawg
