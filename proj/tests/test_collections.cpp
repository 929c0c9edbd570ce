#include <bit>
#include <set>

#include "doctest.h"
#include "eawg/collections.hpp"
#include "eawg/error.hpp"
#include "support.hpp"

using namespace eawg;
using test::Lists;

namespace {

Errc code_of(auto &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::Overflow;
}

// Divisor read straight off the supporting classes.
int oracle_delta(const EarsSpec &spec, int r, int s) {
  const int t = spec.twist();
  if (r <= t && s > t) return 1;
  if (s <= t) return spec.s1().in_supp(SubsetJ::pair(r, s)) ? 1 : 2;
  return spec.s2().in_supp(SubsetJ::pair(r - t, s - t)) ? 1 : 2;
}

// Integral collections counted from the defining condition with rational sums.
std::vector<std::uint32_t> oracle_collections(const EarsSpec &spec) {
  const auto family = jset(spec);
  std::vector<std::uint32_t> out;
  for (std::uint32_t e = 0; e < (1u << family.size()); ++e) {
    bool ok = true;
    for (int r = 1; r <= spec.nullity() && ok; ++r)
      for (int s = r + 1; s <= spec.nullity() && ok; ++s) {
        int sum = 0;
        for (std::size_t b = 0; b < family.size(); ++b)
          if ((e >> b & 1) && family[b].contains(r) && family[b].contains(s) && family[b].size() > 2)
            ++sum;
        ok = is_integer(Rational(sum, oracle_delta(spec, r, s)));
      }
    if (ok) out.push_back(e);
  }
  return out;
}

std::vector<SubsetJ> oracle_jset(const EarsSpec &spec) {
  std::vector<SubsetJ> out;
  const bool b2 = spec.tag() == TypeTag::B && spec.rank() == 2;
  if (spec.tag() == TypeTag::B)
    for (SubsetJ J : spec.s1().supp())
      if (J.size() >= 3) out.push_back(J);
  if (spec.tag() == TypeTag::C || b2)
    for (SubsetJ J : spec.s2().supp())
      if (J.size() >= 3) out.push_back(J.shifted(spec.twist()));
  std::sort(out.begin(), out.end());
  return out;
}

IntegralCollection single(const EarsSpec &spec, std::uint32_t eps) { return {jset(spec), eps}; }

}  // namespace

TEST_CASE("jset examples") {
  for (int nu = 0; nu <= 4; ++nu) CHECK(jset(test::lattice_spec("F4", 4, nu, nu / 2)).empty());
  CHECK(jset(test::lattice_spec("G2", 2, 4, 4)).empty());
  CHECK(jset(test::lattice_spec("B", 3, 3, 3)) == std::vector<SubsetJ>{SubsetJ(0b111)});
  const auto b2 = jset(test::lattice_spec("B", 2, 6, 3));
  REQUIRE(b2.size() == 2);
  CHECK(b2[0] == SubsetJ(0b000111));
  CHECK(b2[1] == SubsetJ(0b111000));
  CHECK(jset(test::lattice_spec("C", 3, 4, 1)) == std::vector<SubsetJ>{SubsetJ(0b1110)});
}

TEST_CASE("delta examples") {
  const EarsSpec spec = test::make("B", 2, 4, 2, {{}, {1}, {2}}, test::lattice_lists(2));
  CHECK(delta(spec, 1, 3) == 1);
  CHECK(delta(spec, 2, 4) == 1);
  CHECK(delta(spec, 1, 2) == 2);
  CHECK(delta(spec, 3, 4) == 1);
  CHECK(delta(test::lattice_spec("B", 3, 3, 3), 1, 2) == 1);
}

TEST_CASE("is_integral examples") {
  const EarsSpec lat = test::lattice_spec("B", 3, 3, 3);
  CHECK(is_integral(lat, single(lat, 0)));
  CHECK(is_integral(lat, single(lat, 1)));
  const EarsSpec thin = test::make("B", 3, 3, 3, {{}, {1}, {2}, {3}, {1, 2, 3}}, {{}});
  CHECK(is_integral(thin, single(thin, 0)));
  CHECK_FALSE(is_integral(thin, single(thin, 1)));
  CHECK(code_of([&] { eps_bar(thin, single(thin, 1)); }) == Errc::NotIntegral);
  CHECK(eps_bar(lat, single(lat, 1)) == std::vector<std::int64_t>{1, 1, 1});
}

TEST_CASE("count_collections examples") {
  const auto f4 = count_collections(test::lattice_spec("F4", 4, 3, 1));
  CHECK(f4.inc == 1);
  CHECK(f4.has_pbc);
  const auto lat = count_collections(test::lattice_spec("B", 3, 3, 3));
  CHECK(lat.inc == 2);
  CHECK(lat.n0 == 1);
  CHECK_FALSE(lat.has_pbc);
  REQUIRE(lat.witnesses.size() == 1);
  CHECK(lat.witnesses[0].support() == std::vector<SubsetJ>{SubsetJ(0b111)});
  const auto b2 = count_collections(test::lattice_spec("B", 2, 4, 2));
  CHECK(b2.inc == 1);
  CHECK(b2.has_pbc);
}

TEST_CASE("witness cap keeps the exact count") {
  const auto rep = count_collections(test::lattice_spec("B", 3, 5, 5), 3);
  CHECK(rep.inc == (1u << 16));
  CHECK(rep.witnesses.size() == 3);
  CHECK(count_collections(test::lattice_spec("B", 3, 5, 5), 0).witnesses.empty());
}

TEST_CASE("closed_form_n0 examples") {
  CHECK(closed_form_n0(test::lattice_spec("B", 3, 4, 2)) == 0);
  CHECK(closed_form_n0(test::lattice_spec("B", 3, 4, 3)) == 1);
  CHECK(closed_form_n0(test::lattice_spec("B", 4, 4, 4)) == 5);
  CHECK(closed_form_n0(test::lattice_spec("C", 3, 3, 0)) == 1);
  CHECK(closed_form_n0(test::lattice_spec("C", 4, 4, 1)) == 1);
  CHECK(closed_form_n0(test::lattice_spec("B", 2, 4, 2)) == 0);
  CHECK(closed_form_n0(test::lattice_spec("B", 2, 6, 3)) == 2);
  CHECK_FALSE(closed_form_n0(test::make("B", 3, 3, 3, {{}, {1}, {2}, {3}, {1, 2, 3}}, {{}})).has_value());
}

TEST_CASE("corollary formula: lattice counts") {
  for (int t = 0; t <= 5; ++t) {
    const int expected = (1 << t) - 1 - t - t * (t - 1) / 2;
    CHECK(count_collections(test::lattice_spec("B", 3, t, t)).n0 == expected);
    CHECK(count_collections(test::lattice_spec("C", 3, t, 0)).n0 == expected);
  }
}

TEST_CASE("single_semilattice_collections examples") {
  CHECK(single_semilattice_collections(Semilattice::lattice(3), 1) == 2);
  CHECK(single_semilattice_collections(Semilattice::validate(3, {{}, {1}, {2}, {3}, {1, 2, 3}}), 1) == 1);
  CHECK(single_semilattice_collections(Semilattice::minimal(4), 2) == 1);
  CHECK(code_of([] { single_semilattice_collections(Semilattice::lattice(3), 3); }) == Errc::IndexRange);
}

TEST_CASE("decide_pbc_via_FG examples") {
  CHECK_FALSE(decide_pbc_via_FG(test::lattice_spec("B", 3, 3, 3)));
  CHECK(decide_pbc_via_FG(test::make("C", 4, 3, 1, {{}, {1}}, {{}, {1}, {2}})));
  CHECK(decide_pbc_via_FG(test::lattice_spec("G2", 2, 4, 2)));
}

TEST_CASE("minimality_screen examples") {
  const auto lat = minimality_screen(test::lattice_spec("B", 3, 3, 3));
  CHECK(lat.verdict == Minimality::NotMinimal);
  CHECK(std::any_of(lat.fired.begin(), lat.fired.end(), [](const CorollaryNote &n) { return n.name == "exa-B(i)(b)"; }));
  const auto four = minimality_screen(test::make("B", 3, 3, 3, {{}, {1}, {2}, {3}, {1, 2}}, {{}}));
  CHECK(four.verdict == Minimality::Minimal);
  CHECK(std::any_of(four.fired.begin(), four.fired.end(), [](const CorollaryNote &n) { return n.name == "B-ell(b)"; }));
  Lists fourteen = test::lattice_lists(4);
  fourteen.erase(std::find(fourteen.begin(), fourteen.end(), std::vector<int>{1, 2, 3, 4}));
  const auto c = minimality_screen(test::make("B", 3, 4, 4, fourteen, {{}}));
  CHECK(c.verdict == Minimality::NotMinimal);
  CHECK(std::any_of(c.fired.begin(), c.fired.end(), [](const CorollaryNote &n) { return n.name == "exa-B(i)(c)"; }));
  CHECK_FALSE(count_collections(test::make("B", 3, 4, 4, fourteen, {{}})).has_pbc);
}

TEST_CASE("construct_nonminimal examples") {
  const EarsSpec b = construct_nonminimal(TypeTag::B, 3, 3, 7, 0);
  CHECK(b.s1().is_lattice());
  CHECK(count_collections(b).inc >= 2);
  const EarsSpec c = construct_nonminimal(TypeTag::C, 4, 1, 0, 7);
  CHECK(c.s2().is_lattice());
  CHECK(c.s2().index() == 7);
  CHECK(count_collections(c).inc >= 2);
  for (int m = 8; m <= 15; ++m) {
    const EarsSpec w = construct_nonminimal(TypeTag::B, 4, 4, m, 0);
    CHECK(w.s1().index() == m);
    CHECK_FALSE(count_collections(w).has_pbc);
  }
  CHECK(code_of([] { construct_nonminimal(TypeTag::B, 3, 3, 6, 0); }) == Errc::ValidationError);
  CHECK(code_of([] { construct_nonminimal(TypeTag::F4, 3, 3, 7, 0); }) == Errc::UnsupportedType);
}

TEST_CASE("property: enumeration matches the defining condition") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const EarsSpec spec = test::random_spec(rng, 5);
    CAPTURE(to_raw(spec).supp1);
    CAPTURE(to_raw(spec).supp2);
    CHECK(jset(spec) == oracle_jset(spec));
    const auto oracle = oracle_collections(spec);
    const DecisionReport rep = count_collections(spec);
    CHECK(rep.inc == oracle.size());
    CHECK(rep.inc == (std::uint64_t{1} << rep.n0));
    CHECK(rep.has_pbc == (rep.inc == 1));
    CHECK(decide_pbc_via_FG(spec) == rep.has_pbc);
    if (auto closed = closed_form_n0(spec)) CHECK(*closed == rep.n0);
    const ScreenResult screen = minimality_screen(spec);
    if (screen.verdict == Minimality::Minimal) CHECK(rep.has_pbc);
    if (screen.verdict == Minimality::NotMinimal) CHECK_FALSE(rep.has_pbc);
    const IntegralityConstraints cons = integrality_constraints(spec);
    for (std::uint32_t e = 0; e < (1u << cons.family.size()); ++e)
      CHECK(cons.accepts(e) == std::binary_search(oracle.begin(), oracle.end(), e));
  }
}

TEST_CASE("property: integral collections are closed under xor") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 150; ++trial) {
    const EarsSpec spec = test::random_spec(rng, 5);
    const auto family = jset(spec);
    std::vector<std::uint32_t> good;
    for (std::uint32_t e = 0; e < (1u << family.size()); ++e)
      if (is_integral(spec, {family, e})) good.push_back(e);
    CHECK(std::has_single_bit(good.size()));
    for (auto a : good)
      for (auto b : good) CHECK(is_integral(spec, {family, a ^ b}));
  }
}

TEST_CASE("guards") {
  CHECK(code_of([] { count_collections(test::lattice_spec("B", 2, 12, 6)); }) == Errc::JSetTooLarge);
}
