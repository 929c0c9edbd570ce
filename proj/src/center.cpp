#include "eawg/center.hpp"

#include <algorithm>

#include "eawg/error.hpp"
#include "eawg/exact.hpp"

namespace eawg {

std::size_t CenterPresentation::pair_column(int r, int s) const {
  auto it = std::find(pairs.begin(), pairs.end(), std::make_pair(r, s));
  if (it == pairs.end()) throw Error(Errc::IndexRange, "no pair generator");
  return static_cast<std::size_t>(it - pairs.begin());
}

std::vector<std::string> CenterPresentation::generator_names() const {
  std::vector<std::string> out;
  for (auto [r, s] : pairs) out.push_back("z_{" + std::to_string(r) + "," + std::to_string(s) + "}");
  for (const auto &J : family) out.push_back("z_" + J.to_string());
  return out;
}

CenterPresentation presentation(const EarsSpec &spec) {
  CenterPresentation p;
  p.pairs = pairs_upto(spec.nullity());
  p.family = jset(spec);
  p.relations = IntMatrix(p.family.size(), p.generator_count());
  for (std::size_t b = 0; b < p.family.size(); ++b) {
    const SubsetJ J = p.family[b];
    p.relations(b, p.family_column(b)) = 2;
    for (std::size_t c = 0; c < p.pairs.size(); ++c) {
      auto [r, s] = p.pairs[c];
      if (chi(J, r, s)) p.relations(b, c) = -2 / delta(spec, r, s);
    }
  }
  return p;
}

std::uint64_t CenterStructure::torsion_order() const {
  std::uint64_t order = 1;
  for (std::int64_t d : torsion) order = static_cast<std::uint64_t>(checked_mul(static_cast<std::int64_t>(order), d));
  return order;
}

CenterStructure center_structure(const CenterPresentation &p) {
  const SmithDecomposition snf = smith_normal_form(p.relations);
  CenterStructure out;
  out.free_rank = p.generator_count() - snf.rank;
  out.torsion = snf.torsion_factors();
  return out;
}

CenterStructure center_structure(const EarsSpec &spec) { return center_structure(presentation(spec)); }

std::vector<std::int64_t> kernel_element(const EarsSpec &spec, const IntegralCollection &eps) {
  const CenterPresentation p = presentation(spec);
  const std::vector<std::int64_t> bar = eps_bar(spec, eps);
  std::vector<std::int64_t> x(p.generator_count(), 0);
  for (std::size_t c = 0; c < p.pairs.size(); ++c) x[c] = -bar[c];
  for (std::size_t b = 0; b < p.family.size(); ++b) x[p.family_column(b)] = eps.value(b) ? 1 : 0;
  return x;
}

QuotientMap::QuotientMap(const IntMatrix &relations) : snf_(smith_normal_form(relations)) {}

std::vector<std::int64_t> QuotientMap::residue(const std::vector<std::int64_t> &x) const {
  const IntMatrix &V = snf_.V;
  if (x.size() != V.rows()) throw Error(Errc::DimensionMismatch, "vector length differs from generator count");
  std::vector<std::int64_t> y(V.cols(), 0);
  for (std::size_t j = 0; j < V.cols(); ++j) {
    __int128 acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += static_cast<__int128>(x[i]) * V(i, j);
    y[j] = narrow(acc);
  }
  for (std::size_t i = 0; i < snf_.rank; ++i) {
    const std::int64_t d = snf_.diagonal[i];
    y[i] = ((y[i] % d) + d) % d;
  }
  return y;
}

bool QuotientMap::in_row_space(const std::vector<std::int64_t> &x) const {
  const auto y = residue(x);
  return std::all_of(y.begin(), y.end(), [](std::int64_t v) { return v == 0; });
}

}  // namespace eawg
