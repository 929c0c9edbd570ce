#include "eawg/collections.hpp"

#include <algorithm>
#include <bit>

#include "eawg/error.hpp"

namespace eawg {

std::vector<SubsetJ> jset(const EarsSpec &spec) {
  std::vector<SubsetJ> out;
  auto add_s1 = [&] {
    for (SubsetJ J : spec.s1().esupp()) out.push_back(J);
  };
  auto add_s2 = [&] {
    for (SubsetJ J : spec.s2().esupp()) out.push_back(J.shifted(spec.twist()));
  };
  switch (spec.tag()) {
    case TypeTag::B:
      add_s1();
      if (spec.rank() == 2) add_s2();
      break;
    case TypeTag::C:
      add_s2();
      break;
    case TypeTag::F4:
    case TypeTag::G2:
      break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

int delta(const EarsSpec &spec, int r, int s) {
  if (!(1 <= r && r < s && s <= spec.nullity()))
    throw Error(Errc::IndexOrder, "Delta needs 1 <= r < s <= nu, got (" + std::to_string(r) + "," +
                                      std::to_string(s) + ")");
  const int t = spec.twist();
  if (s <= t) return spec.s1().delta_j(r, s);
  if (r <= t) return 1;
  return spec.s2().delta_j(r - t, s - t);
}

std::vector<std::pair<int, int>> pairs_upto(int n) {
  std::vector<std::pair<int, int>> out;
  for (int r = 1; r <= n; ++r)
    for (int s = r + 1; s <= n; ++s) out.emplace_back(r, s);
  return out;
}

std::vector<SubsetJ> IntegralCollection::support() const {
  std::vector<SubsetJ> out;
  for (std::size_t b = 0; b < family.size(); ++b)
    if (value(b)) out.push_back(family[b]);
  return out;
}

namespace {

void check_family(const EarsSpec &spec, const IntegralCollection &eps) {
  if (eps.family != jset(spec))
    throw Error(Errc::ValidationError, "collection is not indexed by the J-family of this spec");
}

std::int64_t chi_sum(const IntegralCollection &eps, int r, int s) {
  std::int64_t sum = 0;
  for (std::size_t b = 0; b < eps.family.size(); ++b)
    if (eps.value(b)) sum += chi(eps.family[b], r, s);
  return sum;
}

}  // namespace

bool is_integral(const EarsSpec &spec, const IntegralCollection &eps) {
  check_family(spec, eps);
  for (auto [r, s] : pairs_upto(spec.nullity()))
    if (chi_sum(eps, r, s) % delta(spec, r, s) != 0) return false;
  return true;
}

std::vector<std::int64_t> eps_bar(const EarsSpec &spec, const IntegralCollection &eps) {
  check_family(spec, eps);
  std::vector<std::int64_t> out;
  for (auto [r, s] : pairs_upto(spec.nullity())) {
    const std::int64_t sum = chi_sum(eps, r, s);
    const int d = delta(spec, r, s);
    if (sum % d != 0)
      throw Error(Errc::NotIntegral, "Delta(" + std::to_string(r) + "," + std::to_string(s) +
                                         ") does not divide " + std::to_string(sum));
    out.push_back(sum / d);
  }
  return out;
}

bool IntegralityConstraints::accepts(std::uint32_t eps) const {
  for (std::uint32_t m : masks)
    if (std::popcount(eps & m) % 2 != 0) return false;
  return true;
}

IntegralityConstraints integrality_constraints(const EarsSpec &spec) {
  IntegralityConstraints c;
  c.family = jset(spec);
  if (c.family.size() > kMaxJSet)
    throw Error(Errc::JSetTooLarge, std::to_string(c.family.size()) + " members exceed the limit of " +
                                        std::to_string(kMaxJSet));
  for (SubsetJ J : c.family)
    if (J.size() < 3) throw Error(Errc::IntegralityViolation, "J-family member " + J.to_string());
  for (auto [r, s] : pairs_upto(spec.nullity())) {
    if (delta(spec, r, s) == 1) continue;
    std::uint32_t mask = 0;
    for (std::size_t b = 0; b < c.family.size(); ++b)
      if (chi(c.family[b], r, s)) mask |= 1u << b;
    if (mask != 0) c.masks.push_back(mask);
  }
  return c;
}

DecisionReport count_collections(const EarsSpec &spec, std::size_t max_witnesses) {
  const IntegralityConstraints c = integrality_constraints(spec);
  DecisionReport report;
  report.jset_size = c.family.size();
  std::uint64_t count = 0;
  const std::uint64_t total = std::uint64_t{1} << c.family.size();
  for (std::uint64_t e = 0; e < total; ++e) {
    const auto eps = static_cast<std::uint32_t>(e);
    if (!c.accepts(eps)) continue;
    ++count;
    if (eps != 0 && report.witnesses.size() < max_witnesses)
      report.witnesses.push_back(IntegralCollection{c.family, eps});
  }
  if (!std::has_single_bit(count))
    throw Error(Errc::NotPowerOfTwo, std::to_string(count) + " integral collections for " +
                                         spec.type().name());
  report.inc = count;
  report.n0 = std::countr_zero(count);
  report.has_pbc = count == 1;

  if (auto n0 = closed_form_n0(spec))
    report.corollary_notes.push_back({"fg", "n0=" + std::to_string(*n0), "closed-form count"});
  report.corollary_notes.push_back(
      {"FG", decide_pbc_via_FG(spec) ? "pbc" : "no-pbc", "per-semilattice reduction"});
  for (auto &note : minimality_screen(spec).fired) report.corollary_notes.push_back(note);
  return report;
}

namespace {

bool all_pairs_in_supp(const Semilattice &s) {
  for (auto [r, q] : pairs_upto(s.dim()))
    if (!s.in_supp(SubsetJ::pair(r, q))) return false;
  return true;
}

int esupp_size(const Semilattice &s) { return static_cast<int>(s.esupp().size()); }

}  // namespace

std::optional<int> closed_form_n0(const EarsSpec &spec) {
  if (jset(spec).empty()) return 0;
  const bool b2 = spec.tag() == TypeTag::B && spec.rank() == 2;
  if (b2) {
    if (all_pairs_in_supp(spec.s1()) && all_pairs_in_supp(spec.s2()))
      return esupp_size(spec.s1()) + esupp_size(spec.s2());
    return std::nullopt;
  }
  if (spec.tag() == TypeTag::B && all_pairs_in_supp(spec.s1())) return esupp_size(spec.s1());
  if (spec.tag() == TypeTag::C && all_pairs_in_supp(spec.s2())) return esupp_size(spec.s2());
  return std::nullopt;
}

std::uint64_t single_semilattice_collections(const Semilattice &s, int side, int offset) {
  if (side != 1 && side != 2) throw Error(Errc::IndexRange, "side must be 1 or 2");
  if (offset < 0) throw Error(Errc::IndexRange, "negative offset");
  const std::vector<SubsetJ> family = s.esupp();
  if (family.size() > kMaxJSet)
    throw Error(Errc::JSetTooLarge, std::to_string(family.size()) + " members");
  std::vector<std::uint32_t> masks;
  for (auto [r, q] : pairs_upto(s.dim())) {
    if (s.delta_j(r, q) == 1) continue;
    std::uint32_t mask = 0;
    for (std::size_t b = 0; b < family.size(); ++b)
      if (chi(family[b], r, q)) mask |= 1u << b;
    if (mask) masks.push_back(mask);
  }
  std::uint64_t count = 0;
  for (std::uint64_t e = 0; e < (std::uint64_t{1} << family.size()); ++e) {
    const auto eps = static_cast<std::uint32_t>(e);
    count += std::all_of(masks.begin(), masks.end(),
                         [&](std::uint32_t m) { return std::popcount(eps & m) % 2 == 0; });
  }
  return count;
}

bool decide_pbc_via_FG(const EarsSpec &spec) {
  switch (spec.tag()) {
    case TypeTag::B:
      if (spec.rank() == 2)
        return single_semilattice_collections(spec.s1(), 1) == 1 &&
               single_semilattice_collections(spec.s2(), 2, spec.twist()) == 1;
      return single_semilattice_collections(spec.s1(), 1) == 1;
    case TypeTag::C:
      return single_semilattice_collections(spec.s2(), 2, spec.twist()) == 1;
    case TypeTag::F4:
    case TypeTag::G2:
      return true;
  }
  return true;
}

std::string to_string(Minimality m) {
  switch (m) {
    case Minimality::Minimal: return "Minimal";
    case Minimality::NotMinimal: return "NotMinimal";
    case Minimality::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

/// Some J in Esupp(S) has every pair {r,s} of its elements in supp(S).
bool has_pair_closed_member(const Semilattice &s) {
  for (SubsetJ J : s.esupp()) {
    const auto el = J.elements();
    bool closed = true;
    for (std::size_t a = 0; a < el.size() && closed; ++a)
      for (std::size_t b = a + 1; b < el.size() && closed; ++b)
        closed = s.in_supp(SubsetJ::pair(el[a], el[b]));
    if (closed) return true;
  }
  return false;
}

void non_minimal_checks(const Semilattice &s, const std::string &tag, std::vector<CorollaryNote> &out) {
  const int d = s.dim();
  if (has_pair_closed_member(s))
    out.push_back({tag + "(a)", "NotMinimal", "some J in Esupp has all its pairs in supp"});
  if (d >= 3 && s.is_lattice())
    out.push_back({tag + "(b)", "NotMinimal", "dim >= 3 lattice"});
  if (d > 3 && s.index() == (1 << d) - 2)
    out.push_back({tag + "(c)", "NotMinimal", "index 2^dim - 2"});
}

/// Single-side minimality conditions shared by the B_l and C_l corollaries.
void side_checks(const Semilattice &s, const std::string &tag, std::vector<CorollaryNote> &out) {
  const int d = s.dim();
  if (s.index() - d <= 3)
    out.push_back({tag + "(a)", "Minimal", "ind - dim <= 3"});
  if (d <= 3) {
    if (s.index() != 7)
      out.push_back({tag + "(b)", "Minimal", "dim <= 3 and ind != 7"});
    else
      out.push_back({tag + "(iff)", "NotMinimal", "dim <= 3 and ind = 7"});
  }
}

}  // namespace

ScreenResult minimality_screen(const EarsSpec &spec) {
  ScreenResult res;
  auto &fired = res.fired;
  const int t = spec.twist();
  const int u = spec.nullity() - t;
  const Semilattice &s1 = spec.s1();
  const Semilattice &s2 = spec.s2();

  if (spec.tag() == TypeTag::F4 || spec.tag() == TypeTag::G2 || jset(spec).empty())
    fired.push_back({"result2", "Minimal", "empty J-family"});

  if (spec.tag() == TypeTag::B && spec.rank() == 2) {
    if (s1.index() - t <= 3 && s2.index() - u <= 3)
      fired.push_back({"Cor-B2(a)", "Minimal", "ind(S1)-t <= 3 and ind(S2)-(nu-t) <= 3"});
    if (t <= 3 && u <= 3) {
      if (s1.index() != 7 && s2.index() != 7)
        fired.push_back({"Cor-B2(b)", "Minimal", "t, nu-t <= 3 and ind(S1), ind(S2) != 7"});
      else
        fired.push_back({"Cor-B2(iff)", "NotMinimal", "t, nu-t <= 3 and an index equals 7"});
    }
  } else if (spec.tag() == TypeTag::B) {
    side_checks(s1, "B-ell", fired);
  } else if (spec.tag() == TypeTag::C) {
    side_checks(s2, "C-ell", fired);
  }
  if (spec.tag() == TypeTag::B) non_minimal_checks(s1, "exa-B(i)", fired);
  if (spec.tag() == TypeTag::C) non_minimal_checks(s2, "exa-B(ii)", fired);

  const bool minimal = std::any_of(fired.begin(), fired.end(),
                                   [](const CorollaryNote &n) { return n.verdict == "Minimal"; });
  const bool not_minimal = std::any_of(
      fired.begin(), fired.end(), [](const CorollaryNote &n) { return n.verdict == "NotMinimal"; });
  if (minimal && not_minimal)
    throw Error(Errc::IntegralityViolation, "contradictory minimality conditions for " +
                                                spec.type().name());
  res.verdict = minimal ? Minimality::Minimal
                        : (not_minimal ? Minimality::NotMinimal : Minimality::Unknown);
  return res;
}

EarsSpec construct_nonminimal(TypeTag type, int nullity, int twist, int m1, int m2, int rank) {
  if (type != TypeTag::B && type != TypeTag::C)
    throw Error(Errc::UnsupportedType, "construction applies to types B and C");
  if (twist < 0 || twist > nullity)
    throw Error(Errc::TwistOutOfRange, "twist " + std::to_string(twist));
  const bool side1 = type == TypeTag::B;
  const int dim = side1 ? twist : nullity - twist;
  const int m = side1 ? m1 : m2;
  if (dim > SemilatticeEnumerator::kMaxDim)
    throw Error(Errc::DimTooLarge, "search limited to dim <= " +
                                       std::to_string(SemilatticeEnumerator::kMaxDim));
  if (!(7 <= dim + 4 && dim + 4 <= m && m <= (1 << dim) - 1))
    throw Error(Errc::ValidationError, "need 7 <= dim+4 <= m <= 2^dim-1 with dim=" +
                                           std::to_string(dim) + ", m=" + std::to_string(m));
  const FiniteType ftype = FiniteType::make(type, rank);

  SemilatticeEnumerator en(dim, false);
  while (auto s = en.next()) {
    if (s->index() != m || single_semilattice_collections(*s, side1 ? 1 : 2) < 2) continue;
    EarsSpec spec = side1 ? EarsSpec::make(ftype, nullity, twist, *s, Semilattice::lattice(nullity - twist))
                          : EarsSpec::make(ftype, nullity, twist, Semilattice::lattice(twist), *s);
    if (count_collections(spec, 1).inc < 2)
      throw Error(Errc::SearchExhausted, "candidate lost its nontrivial collection");
    spec.set_label("constructed " + ftype.name() + " nu=" + std::to_string(nullity) +
                   " t=" + std::to_string(twist) + " ind=" + std::to_string(m));
    return spec;
  }
  throw Error(Errc::SearchExhausted, "no semilattice of dim " + std::to_string(dim) + " and index " +
                                         std::to_string(m) + " with a nontrivial collection");
}

}  // namespace eawg
