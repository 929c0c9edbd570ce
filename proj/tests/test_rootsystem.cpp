#include <set>

#include "doctest.h"
#include "eawg/error.hpp"
#include "eawg/rootsystem.hpp"
#include "support.hpp"

using namespace eawg;

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

QVector reflect(const QDense &gram, const QVector &a, const QVector &v) {
  const Rational c = Rational(2) * bilinear(gram, v, a) / bilinear(gram, a, a);
  QVector out = v;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] -= c * a[i];
  return out;
}

// Closure of the simple roots under simple reflections, independent of the stored lists.
std::set<QVector> closure(const FiniteRoots &f) {
  std::set<QVector> seen(f.simple().begin(), f.simple().end());
  std::vector<QVector> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<QVector> next;
    for (const auto &v : frontier)
      for (const auto &a : f.simple()) {
        QVector w = reflect(f.gram(), a, v);
        if (seen.insert(w).second) next.push_back(w);
      }
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace

TEST_CASE("finite root counts match the reflection closure") {
  struct Case {
    TypeTag tag;
    int rank;
    std::size_t n_short, n_long;
  };
  const std::vector<Case> cases{{TypeTag::B, 2, 4, 4},  {TypeTag::B, 3, 6, 12}, {TypeTag::B, 4, 8, 24},
                                {TypeTag::C, 3, 12, 6}, {TypeTag::C, 4, 24, 8}, {TypeTag::F4, 4, 24, 24},
                                {TypeTag::G2, 2, 6, 6}};
  for (const auto &c : cases) {
    for (auto realization : {Realization::Standard, Realization::SimpleRootBasis}) {
      const FiniteRoots f = build_finite(FiniteType::make(c.tag, c.rank), realization);
      CAPTURE(f.type().name());
      CHECK(f.short_roots().size() == c.n_short);
      CHECK(f.long_roots().size() == c.n_long);
      const auto all = f.all_roots();
      const std::set<QVector> stored(all.begin(), all.end());
      CHECK(stored == closure(f));
      for (const auto &v : f.short_roots()) CHECK(f.form(v, v) == Rational(2));
      for (const auto &v : f.long_roots()) CHECK(f.form(v, v) == Rational(2 * f.k()));
      for (const auto &a : all)
        for (const auto &b : all) CHECK(is_integer(f.pairing(a, b)));
      CHECK(f.simple_length(1) == RootLength::Short);
      CHECK(f.simple_length(2) == RootLength::Long);
      CHECK(f.form(f.simple_root(1), f.simple_root(2)) != Rational(0));
    }
  }
}

TEST_CASE("finite type validation") {
  CHECK(code_of([] { FiniteType::make(TypeTag::B, 1); }) == Errc::RankOutOfRange);
  CHECK(code_of([] { FiniteType::make(TypeTag::C, 2); }) == Errc::RankOutOfRange);
  CHECK(code_of([] { FiniteType::make(TypeTag::F4, 3); }) == Errc::RankOutOfRange);
  CHECK(code_of([] { FiniteType::parse_tag("A"); }) == Errc::UnsupportedType);
  CHECK(code_of([] { FiniteType::parse_tag("BC"); }) == Errc::UnsupportedType);
  CHECK(FiniteType::make(TypeTag::C, 4).name() == "C4");
}

TEST_CASE("validate_spec examples") {
  CHECK_NOTHROW(test::make("C", 3, 2, 1, {{}, {1}}, {{}, {1}}));
  CHECK(code_of([] { test::make("B", 3, 3, 1, {{}, {1}}, {{}, {1}, {2}}); }) == Errc::LatticeRequired);
  CHECK(code_of([] { test::make("C", 3, 2, 2, {{}, {1}, {2}}, {{}}); }) == Errc::LatticeRequired);
  CHECK_NOTHROW(test::make("F4", 4, 2, 1, {{}, {1}}, {{}, {1}}));
  CHECK(code_of([] { test::make("G2", 2, 2, 2, {{}, {1}, {2}}, {{}}); }) == Errc::LatticeRequired);
  CHECK(code_of([] { test::make("B", 3, 2, 3, {{}}, {{}}); }) == Errc::TwistOutOfRange);
  CHECK(code_of([] { test::make("B", 1, 1, 1, {{}, {1}}, {{}}); }) == Errc::RankOutOfRange);
  const EarsSpec full = test::make("B", 3, 2, 2, {{}, {1}, {2}}, {{}});
  CHECK(full.s2().dim() == 0);
  CHECK(full.supp2_global() == std::vector<SubsetJ>{SubsetJ()});
  const EarsSpec shifted = test::make("C", 3, 3, 1, {{}, {1}}, {{}, {1}, {2}, {1, 2}});
  CHECK(shifted.supp2_global().back() == SubsetJ::from_elements(std::vector<int>{2, 3}));
  CHECK(to_raw(shifted).supp2 == test::Lists{{}, {1}, {2}, {1, 2}});
}

TEST_CASE("k_ir examples") {
  const EarsSpec g2 = test::lattice_spec("G2", 2, 2, 1);
  CHECK(k_ir(g2, 2, 1) == 3);
  CHECK(k_ir(g2, 2, 2) == 1);
  CHECK(k_ir(g2, 1, 1) == 1);
  const EarsSpec b2 = test::make("B", 2, 2, 1, {{}, {1}}, {{}, {1}});
  CHECK(k_ir(b2, 2, 2) == 1);
  CHECK(k_ir(b2, 2, 1) == 2);
  CHECK(k_ir(b2, 1, 2) == 1);
  CHECK(code_of([&] { k_ir(b2, 3, 1); }) == Errc::IndexRange);
  CHECK(code_of([&] { k_ir(b2, 1, 3); }) == Errc::IndexRange);
}

TEST_CASE("a_pair and a_quad values and divisibility") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const EarsSpec spec = test::random_spec(rng, 4);
    const int l = spec.rank();
    const FiniteRoots &f = spec.finite();
    for (int i = 1; i <= l; ++i)
      for (int j = 1; j <= l; ++j)
        for (int r = 1; r <= spec.nullity(); ++r) {
          const std::int64_t a = a_pair(spec, i, j, r);
          const Rational expected = Rational(k_ir(spec, j, r), k_ir(spec, i, r)) *
                                    f.pairing(f.simple_root(i), f.simple_root(j));
          CHECK(Rational(a) == expected);
          if (i == j) CHECK(a == 2);
          if (f.form(f.simple_root(i), f.simple_root(j)) == Rational(0)) CHECK(a == 0);
          for (int s = r; s <= spec.nullity(); ++s) {
            const Rational q = a_quad(spec, i, j, r, s);
            if (f.form(f.simple_root(i), f.simple_root(j)) == Rational(0)) CHECK(q == Rational(0));
            const bool matched = f.simple_length(i) == RootLength::Short ? r <= spec.twist()
                                                                         : r > spec.twist();
            if (i == j && matched) CHECK(q == Rational(2));
            if (r < s) {
              const int d = (r <= spec.twist() && s > spec.twist())
                                ? 1
                                : (s <= spec.twist() ? spec.s1().delta_j(r, s)
                                                     : spec.s2().delta_j(r - spec.twist(), s - spec.twist()));
              CHECK(is_integer(q / Rational(d)));
            }
          }
        }
  }
}

TEST_CASE("root_member examples") {
  const EarsSpec b3 = test::lattice_spec("B", 3, 2, 1);
  const FiniteRoots &f = b3.finite();
  const QVector th1 = f.simple_root(1), th2 = f.simple_root(2);
  CHECK(root_member(b3, Root{th1, {1, 0}}) == RootClass::ShortRoot);
  CHECK(root_member(b3, Root{th2, {1, 0}}) == RootClass::NotARoot);
  CHECK(root_member(b3, Root{th2, {2, 0}}) == RootClass::LongRoot);
  CHECK(root_member(b3, Root{th2, {2, 1}}) == RootClass::LongRoot);
  CHECK(root_member(b3, Root{QVector(3, Rational(0)), {3, 1}}) == RootClass::Isotropic);
  const QVector junk{Rational(1), Rational(1), Rational(1)};
  CHECK(root_member(b3, Root{junk, {0, 0}}) == RootClass::NotARoot);
}

TEST_CASE("isotropic membership matches brute-force S+S") {
  const EarsSpec spec = test::make("B", 2, 3, 2, {{}, {1}, {2}}, {{}, {1}});
  std::set<std::vector<std::int64_t>> sums;
  const int box = 3;
  std::vector<std::vector<std::int64_t>> points;
  for (int a = -box; a <= box; ++a)
    for (int b = -box; b <= box; ++b)
      for (int c = -box; c <= box; ++c) points.push_back({a, b, c});
  std::vector<std::vector<std::int64_t>> members;
  for (const auto &p : points) {
    std::vector<std::int64_t> p1{p[0], p[1]}, p2{p[2]};
    if (spec.s1().contains(p1) && spec.s2().contains(p2)) members.push_back(p);
  }
  for (const auto &x : members)
    for (const auto &y : members) sums.insert({x[0] + y[0], x[1] + y[1], x[2] + y[2]});
  const QVector zero(2, Rational(0));
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      for (int c = -2; c <= 2; ++c) {
        const RootClass cls = root_member(spec, Root{zero, {a, b, c}});
        CHECK((cls == RootClass::Isotropic) == (sums.count({a, b, c}) == 1));
      }
}

TEST_CASE("root translates along k_ir sigma_r stay in the length class") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    const EarsSpec spec = test::random_spec(rng, 3);
    const FiniteRoots &f = spec.finite();
    for (int i = 1; i <= spec.rank(); ++i)
      for (int r = 1; r <= spec.nullity(); ++r)
        for (int n = -3; n <= 3; ++n) {
          Root v = make_root(f.simple_root(i), spec.nullity());
          v.iso[r - 1] = n * k_ir(spec, i, r);
          const RootClass expected = f.simple_length(i) == RootLength::Short ? RootClass::ShortRoot
                                                                             : RootClass::LongRoot;
          CHECK(root_member(spec, v) == expected);
        }
  }
}

TEST_CASE("generators_Pi examples") {
  const EarsSpec f4 = test::lattice_spec("F4", 4, 2, 1);
  const GeneratorSet pf = generators_Pi(f4);
  CHECK(pf.roots.size() == 6);
  const FiniteRoots &ff = f4.finite();
  CHECK(std::find(pf.roots.begin(), pf.roots.end(), Root{ff.simple_root(1), {1, 0}}) != pf.roots.end());
  CHECK(std::find(pf.roots.begin(), pf.roots.end(), Root{ff.simple_root(2), {0, 1}}) != pf.roots.end());

  const EarsSpec b2 = test::make("B", 2, 1, 1, {{}, {1}}, {{}});
  const GeneratorSet pb = generators_Pi(b2);
  CHECK(pb.roots.size() == 3);
  int total = 0;
  for (int m : pb.multiplicity) total += m;
  CHECK(total == 5);

  const EarsSpec b3 = test::lattice_spec("B", 3, 2, 0);
  const GeneratorSet p3 = generators_Pi(b3);
  CHECK(p3.roots.size() == 3 + 2);
  const FiniteRoots &f3 = b3.finite();
  CHECK(std::find(p3.roots.begin(), p3.roots.end(), Root{f3.simple_root(2), {1, 0}}) != p3.roots.end());
  CHECK(std::find(p3.roots.begin(), p3.roots.end(), Root{f3.simple_root(2), {0, 1}}) != p3.roots.end());
}

TEST_CASE("property: Pi consists of real roots") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 80; ++trial) {
    const EarsSpec spec = test::random_spec(rng, 4);
    const GeneratorSet pi = generators_Pi(spec);
    CHECK(pi.roots.size() == pi.multiplicity.size());
    CHECK(pi.roots.size() == pi.origin.size());
    for (int i = 0; i < spec.rank(); ++i) CHECK(pi.roots[i].finite == spec.finite().simple()[i]);
    for (const auto &r : pi.roots) CHECK(is_real_root(root_member(spec, r)));
  }
}

TEST_CASE("rescaled realization keeps integrality data") {
  const FiniteRoots f = build_finite(FiniteType::make(TypeTag::C, 3));
  const FiniteRoots g = f.rescaled(Rational(3, 2));
  CHECK(g.form(g.simple_root(1), g.simple_root(1)) == Rational(3));
  for (const auto &a : f.all_roots())
    for (const auto &b : f.all_roots()) CHECK(f.pairing(a, b) == g.pairing(a, b));
}
