#include <set>

#include "doctest.h"
#include "eawg/center.hpp"
#include "eawg/collections.hpp"
#include "eawg/error.hpp"
#include "support.hpp"

using namespace eawg;

namespace {

std::vector<std::int64_t> row(const IntMatrix &m, std::size_t i) {
  std::vector<std::int64_t> out(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) out[j] = m(i, j);
  return out;
}

const EarsSpec &lattice_b3() {
  static const EarsSpec s = test::lattice_spec("B", 3, 3, 3);
  return s;
}

const EarsSpec &thin_b3() {
  static const EarsSpec s = test::make("B", 3, 3, 3, {{}, {1}, {2}, {3}, {1, 2, 3}}, {{}});
  return s;
}

}  // namespace

TEST_CASE("presentation examples") {
  const auto empty = presentation(test::lattice_spec("F4", 4, 3, 1));
  CHECK(empty.relations.rows() == 0);
  CHECK(empty.generator_count() == 3);
  const auto lat = presentation(lattice_b3());
  REQUIRE(lat.relations.rows() == 1);
  CHECK(row(lat.relations, 0) == std::vector<std::int64_t>{-2, -2, -2, 2});
  CHECK(lat.generator_names() == std::vector<std::string>{"z_{1,2}", "z_{1,3}", "z_{2,3}", "z_{1,2,3}"});
  const auto thin = presentation(thin_b3());
  CHECK(row(thin.relations, 0) == std::vector<std::int64_t>{-1, -1, -1, 2});
  CHECK(lat.pair_column(2, 3) == 2);
  CHECK_THROWS_AS(lat.pair_column(3, 4), Error);
}

TEST_CASE("center structure examples") {
  const auto lat = center_structure(lattice_b3());
  CHECK(lat.free_rank == 3);
  CHECK(lat.torsion == std::vector<std::int64_t>{2});
  CHECK(lat.torsion_order() == 2);
  const auto thin = center_structure(thin_b3());
  CHECK(thin.free_rank == 3);
  CHECK(thin.torsion.empty());
  CHECK(thin.torsion_order() == 1);
  const auto wide = center_structure(test::lattice_spec("B", 3, 4, 4));
  CHECK(wide.free_rank == 6);
  CHECK(wide.torsion == std::vector<std::int64_t>(5, 2));
}

TEST_CASE("kernel element examples") {
  const auto fam = jset(lattice_b3());
  CHECK(kernel_element(lattice_b3(), {fam, 0}) == std::vector<std::int64_t>(4, 0));
  // The sign on the pairs makes twice the element equal to the relation row itself.
  const auto u = kernel_element(lattice_b3(), {fam, 1});
  CHECK(u == std::vector<std::int64_t>{-1, -1, -1, 1});
  const auto p = presentation(lattice_b3());
  std::vector<std::int64_t> twice(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) twice[i] = 2 * u[i];
  CHECK(twice == row(p.relations, 0));
  CHECK(QuotientMap(p.relations).in_row_space(twice));
  CHECK_FALSE(QuotientMap(p.relations).in_row_space(u));
  CHECK_THROWS_AS(kernel_element(thin_b3(), {jset(thin_b3()), 1}), Error);
}

TEST_CASE("property: center invariants against the enumeration") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 250; ++trial) {
    const EarsSpec spec = test::random_spec(rng, 5);
    const CenterPresentation p = presentation(spec);
    const CenterStructure c = center_structure(p);
    const DecisionReport d = count_collections(spec);
    CHECK(c.free_rank == static_cast<std::size_t>(spec.nullity() * (spec.nullity() - 1) / 2));
    CHECK(c.torsion_order() == d.inc);
    for (auto f : c.torsion) CHECK(f == 2);
    const QuotientMap quotient(p.relations);
    const auto &s = quotient.smith();
    CHECK(s.U * p.relations * s.V == s.D);
    for (std::size_t i = 0; i < p.relations.rows(); ++i) {
      int pivots = 0;
      for (std::size_t b = 0; b < p.family.size(); ++b) {
        const auto v = p.relations(i, p.family_column(b));
        if (v != 0) {
          CHECK(v == 2);
          CHECK(b == i);
          ++pivots;
        }
      }
      CHECK(pivots == 1);
    }
  }
}

TEST_CASE("property: kernel elements are injective into torsion cosets") {
  std::mt19937 rng(31);
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 60; ++trial) {
    const EarsSpec spec = test::random_spec(rng, 5);
    const auto family = jset(spec);
    if (family.empty() || family.size() > 4) continue;
    ++checked;
    const CenterPresentation p = presentation(spec);
    const QuotientMap q(p.relations);
    std::set<std::vector<std::int64_t>> residues;
    std::size_t integral = 0;
    for (std::uint32_t e = 0; e < (1u << family.size()); ++e) {
      const IntegralCollection eps{family, e};
      if (!is_integral(spec, eps)) continue;
      ++integral;
      const auto u = kernel_element(spec, eps);
      std::vector<std::int64_t> twice(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) twice[i] = 2 * u[i];
      CHECK(q.in_row_space(twice));
      if (e != 0) CHECK_FALSE(q.in_row_space(u));
      residues.insert(q.residue(u));
    }
    CHECK(residues.size() == integral);
    CHECK(residues.size() == center_structure(p).torsion_order());
  }
  CHECK(checked >= 20);
}
