#include "eawg/semilattice.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include "eawg/error.hpp"

namespace eawg {

SubsetJ SubsetJ::from_elements(std::span<const int> elements) {
  std::uint32_t mask = 0;
  for (int r : elements) {
    if (r < 1 || r > kMaxElement)
      throw Error(Errc::OutOfRangeIndex, "subset element " + std::to_string(r) + " out of range");
    mask |= 1u << (r - 1);
  }
  return SubsetJ(mask);
}

SubsetJ SubsetJ::pair(int r, int s) {
  const int elems[] = {r, s};
  return from_elements(elems);
}

int SubsetJ::size() const { return std::popcount(mask_); }

int SubsetJ::max_element() const { return 32 - std::countl_zero(mask_); }

std::vector<int> SubsetJ::elements() const {
  std::vector<int> out;
  for (int r = 1; r <= kMaxElement; ++r)
    if (contains(r)) out.push_back(r);
  return out;
}

SubsetJ SubsetJ::shifted(int offset) const {
  if (mask_ == 0) return *this;
  if (offset < 0 || max_element() + offset > kMaxElement)
    throw Error(Errc::OutOfRangeIndex, "subset shift out of range");
  return SubsetJ(mask_ << offset);
}

std::string SubsetJ::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int r : elements()) {
    if (!first) os << ',';
    os << r;
    first = false;
  }
  os << '}';
  return os.str();
}

// ---------------------------------------------------------------------------

Semilattice::Semilattice() : Semilattice(0, {SubsetJ{}}) {}

Semilattice::Semilattice(int dim, std::vector<SubsetJ> supp)
    : dim_(dim), supp_(std::move(supp)), member_(std::size_t{1} << dim, false),
      sum_member_(std::size_t{1} << dim, false) {
  for (SubsetJ J : supp_) member_[J.mask()] = true;
  for (SubsetJ a : supp_)
    for (SubsetJ b : supp_) sum_member_[a.mask() ^ b.mask()] = true;
}

Semilattice Semilattice::from_subsets(int dim, std::vector<SubsetJ> supp) {
  if (dim < 0) throw Error(Errc::OutOfRangeIndex, "negative dimension");
  if (dim > kMaxDim) throw Error(Errc::DimTooLarge, "semilattice dimension " + std::to_string(dim));
  const std::uint32_t universe = (std::uint32_t{1} << dim) - 1;
  for (SubsetJ J : supp)
    if ((J.mask() & ~universe) != 0)
      throw Error(Errc::OutOfRangeIndex,
                  "subset " + J.to_string() + " not contained in 1.." + std::to_string(dim));
  std::sort(supp.begin(), supp.end());
  supp.erase(std::unique(supp.begin(), supp.end()), supp.end());
  auto has = [&](SubsetJ J) { return std::binary_search(supp.begin(), supp.end(), J); };
  if (!has(SubsetJ{})) throw Error(Errc::MissingZeroClass, "supporting class lacks the empty set");
  for (int r = 1; r <= dim; ++r)
    if (!has(SubsetJ(1u << (r - 1))))
      throw Error(Errc::MissingSingleton, "supporting class lacks {" + std::to_string(r) + "}");
  return Semilattice(dim, std::move(supp));
}

Semilattice Semilattice::validate(int dim, const std::vector<std::vector<int>> &supp_list) {
  std::vector<SubsetJ> supp;
  supp.reserve(supp_list.size());
  for (const auto &elems : supp_list) {
    for (int r : elems)
      if (r < 1 || r > dim)
        throw Error(Errc::OutOfRangeIndex,
                    "index " + std::to_string(r) + " outside 1.." + std::to_string(dim));
    supp.push_back(SubsetJ::from_elements(elems));
  }
  return from_subsets(dim, std::move(supp));
}

Semilattice Semilattice::lattice(int dim) {
  if (dim > kMaxDim) throw Error(Errc::DimTooLarge, "semilattice dimension " + std::to_string(dim));
  std::vector<SubsetJ> supp;
  for (std::uint32_t m = 0; m < (std::uint32_t{1} << dim); ++m) supp.emplace_back(m);
  return from_subsets(dim, std::move(supp));
}

Semilattice Semilattice::minimal(int dim) {
  std::vector<SubsetJ> supp{SubsetJ{}};
  for (int r = 1; r <= dim; ++r) supp.emplace_back(1u << (r - 1));
  return from_subsets(dim, std::move(supp));
}

bool Semilattice::in_supp(SubsetJ J) const {
  return J.mask() < member_.size() && member_[J.mask()];
}

namespace {

std::uint32_t odd_support(std::span<const std::int64_t> coords, int dim) {
  if (static_cast<int>(coords.size()) != dim)
    throw Error(Errc::DimensionMismatch, "expected " + std::to_string(dim) + " coordinates, got " +
                                             std::to_string(coords.size()));
  std::uint32_t mask = 0;
  for (int r = 0; r < dim; ++r)
    if (coords[r] % 2 != 0) mask |= 1u << r;
  return mask;
}

}  // namespace

bool Semilattice::contains(std::span<const std::int64_t> coords) const {
  return member_[odd_support(coords, dim_)];
}

bool Semilattice::sum_contains(std::span<const std::int64_t> coords) const {
  return sum_member_[odd_support(coords, dim_)];
}

std::vector<SubsetJ> Semilattice::esupp() const {
  std::vector<SubsetJ> out;
  for (SubsetJ J : supp_)
    if (J.size() >= 3) out.push_back(J);
  return out;
}

int Semilattice::delta_j(int r, int s) const {
  if (!(1 <= r && r < s && s <= dim_))
    throw Error(Errc::IndexOrder, "delta_j needs 1 <= r < s <= " + std::to_string(dim_) +
                                      ", got (" + std::to_string(r) + "," + std::to_string(s) + ")");
  return in_supp(SubsetJ::pair(r, s)) ? 1 : 2;
}

std::vector<std::vector<int>> Semilattice::to_lists() const {
  std::vector<std::vector<int>> out;
  out.reserve(supp_.size());
  for (SubsetJ J : supp_) out.push_back(J.elements());
  return out;
}

// ---------------------------------------------------------------------------

SemilatticeEnumerator::SemilatticeEnumerator(int dim, bool up_to_permutation)
    : dim_(dim), up_to_permutation_(up_to_permutation) {
  if (dim < 0) throw Error(Errc::OutOfRangeIndex, "negative dimension");
  if (dim > kMaxDim)
    throw Error(Errc::DimTooLarge, "enumeration limited to dim <= " + std::to_string(kMaxDim));
  for (std::uint32_t m = 0; m < (std::uint32_t{1} << dim); ++m)
    if (std::popcount(m) >= 2) free_.push_back(m);

  if (up_to_permutation_) {
    std::vector<int> perm(dim);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> position(std::size_t{1} << dim, -1);
    for (std::size_t b = 0; b < free_.size(); ++b) position[free_[b]] = static_cast<int>(b);
    do {
      std::vector<int> table(free_.size());
      for (std::size_t b = 0; b < free_.size(); ++b) {
        std::uint32_t image = 0;
        for (int r = 0; r < dim; ++r)
          if ((free_[b] >> r) & 1u) image |= 1u << perm[r];
        table[b] = position[image];
      }
      permuted_bit_.push_back(std::move(table));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

bool SemilatticeEnumerator::is_orbit_minimum(std::uint64_t code) const {
  for (const auto &table : permuted_bit_) {
    std::uint64_t image = 0;
    for (std::size_t b = 0; b < free_.size(); ++b)
      if ((code >> b) & 1u) image |= std::uint64_t{1} << table[b];
    if (image < code) return false;
  }
  return true;
}

Semilattice SemilatticeEnumerator::decode(std::uint64_t code) const {
  std::vector<SubsetJ> supp{SubsetJ{}};
  for (int r = 0; r < dim_; ++r) supp.emplace_back(1u << r);
  for (std::size_t b = 0; b < free_.size(); ++b)
    if ((code >> b) & 1u) supp.emplace_back(free_[b]);
  return Semilattice::from_subsets(dim_, std::move(supp));
}

std::optional<Semilattice> SemilatticeEnumerator::next() {
  while (code_ < raw_count()) {
    const std::uint64_t code = code_++;
    if (!up_to_permutation_ || is_orbit_minimum(code)) return decode(code);
  }
  return std::nullopt;
}

std::vector<Semilattice> enumerate_semilattices(int dim, bool up_to_permutation) {
  SemilatticeEnumerator en(dim, up_to_permutation);
  std::vector<Semilattice> out;
  while (auto s = en.next()) out.push_back(std::move(*s));
  return out;
}

}  // namespace eawg
