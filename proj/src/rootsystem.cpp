#include "eawg/rootsystem.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "eawg/error.hpp"

namespace eawg {

FiniteType FiniteType::make(TypeTag tag, int rank) {
  bool ok = false;
  switch (tag) {
    case TypeTag::B: ok = rank >= 2; break;
    case TypeTag::C: ok = rank >= 3; break;
    case TypeTag::F4: ok = rank == 4; break;
    case TypeTag::G2: ok = rank == 2; break;
  }
  // Coordinates are held in small masks elsewhere; keep ranks modest.
  if (!ok || rank > 12)
    throw Error(Errc::RankOutOfRange, "rank " + std::to_string(rank) + " invalid for type " +
                                          FiniteType{tag, rank}.tag_name());
  return FiniteType{tag, rank};
}

TypeTag FiniteType::parse_tag(const std::string &name) {
  if (name == "B") return TypeTag::B;
  if (name == "C") return TypeTag::C;
  if (name == "F4" || name == "F") return TypeTag::F4;
  if (name == "G2" || name == "G") return TypeTag::G2;
  throw Error(Errc::UnsupportedType, "type '" + name + "' (expected B, C, F4 or G2)");
}

std::string FiniteType::tag_name() const {
  switch (tag) {
    case TypeTag::B: return "B";
    case TypeTag::C: return "C";
    case TypeTag::F4: return "F4";
    case TypeTag::G2: return "G2";
  }
  return "?";
}

std::string FiniteType::name() const {
  if (tag == TypeTag::F4 || tag == TypeTag::G2) return tag_name();
  return tag_name() + std::to_string(rank);
}

// ---------------------------------------------------------------------------

FiniteRoots::FiniteRoots(FiniteType type, QDense gram, std::vector<QVector> short_roots,
                         std::vector<QVector> long_roots, std::vector<QVector> simple)
    : type_(type), gram_(std::move(gram)), short_(std::move(short_roots)),
      long_(std::move(long_roots)), simple_(std::move(simple)), sorted_short_(short_),
      sorted_long_(long_) {
  std::sort(sorted_short_.begin(), sorted_short_.end());
  std::sort(sorted_long_.begin(), sorted_long_.end());
}

std::vector<QVector> FiniteRoots::all_roots() const {
  std::vector<QVector> out = short_;
  out.insert(out.end(), long_.begin(), long_.end());
  return out;
}

RootLength FiniteRoots::simple_length(int i) const {
  if (i < 1 || i > rank()) throw Error(Errc::IndexRange, "simple root index " + std::to_string(i));
  return *classify(simple_[i - 1]);
}

Rational FiniteRoots::pairing(const QVector &a, const QVector &b) const {
  return Rational(2) * form(a, b) / form(b, b);
}

Rational FiniteRoots::coroot_form(const QVector &a, const QVector &b) const {
  const Rational unit = form(short_.front(), short_.front()) / Rational(2);
  return Rational(4) * unit * form(a, b) / (form(a, a) * form(b, b));
}

std::optional<RootLength> FiniteRoots::classify(const QVector &v) const {
  if (std::binary_search(sorted_short_.begin(), sorted_short_.end(), v)) return RootLength::Short;
  if (std::binary_search(sorted_long_.begin(), sorted_long_.end(), v)) return RootLength::Long;
  return std::nullopt;
}

FiniteRoots FiniteRoots::rescaled(Rational factor) const {
  if (factor <= Rational(0)) throw Error(Errc::ValidationError, "form rescaling factor must be positive");
  QDense g = gram_;
  for (auto &row : g)
    for (auto &x : row) x *= factor;
  return FiniteRoots(type_, std::move(g), short_, long_, simple_);
}

namespace {

QVector unit(int n, int i, Rational c = 1) {
  QVector v(n, Rational(0));
  v[i] = c;
  return v;
}

QVector add(QVector a, const QVector &b, Rational c = 1) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += c * b[i];
  return a;
}

QVector neg(QVector a) {
  for (auto &x : a) x = -x;
  return a;
}

QDense scalar_gram(int n, Rational c) {
  QDense g(n, QVector(n, Rational(0)));
  for (int i = 0; i < n; ++i) g[i][i] = c;
  return g;
}

void with_negatives(std::vector<QVector> &roots) {
  const std::size_t n = roots.size();
  for (std::size_t i = 0; i < n; ++i) roots.push_back(neg(roots[i]));
}

FiniteRoots standard_b(int l) {
  std::vector<QVector> sh, lg, simple;
  for (int i = 0; i < l; ++i) sh.push_back(unit(l, i));
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j) {
      lg.push_back(add(unit(l, i), unit(l, j)));
      lg.push_back(add(unit(l, i), unit(l, j), -1));
    }
  with_negatives(sh);
  with_negatives(lg);
  // alpha_1 = e_l, alpha_2 = e_{l-1} - e_l, ..., alpha_l = e_1 - e_2
  simple.push_back(unit(l, l - 1));
  for (int m = l - 2; m >= 0; --m) simple.push_back(add(unit(l, m), unit(l, m + 1), -1));
  return FiniteRoots(FiniteType{TypeTag::B, l}, scalar_gram(l, 2), sh, lg, simple);
}

FiniteRoots standard_c(int l) {
  std::vector<QVector> sh, lg, simple;
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j) {
      sh.push_back(add(unit(l, i), unit(l, j)));
      sh.push_back(add(unit(l, i), unit(l, j), -1));
    }
  for (int i = 0; i < l; ++i) lg.push_back(unit(l, i, 2));
  with_negatives(sh);
  with_negatives(lg);
  // alpha_1 = e_{l-1} - e_l, alpha_2 = 2 e_l, then e_{l-2} - e_{l-1}, ..., e_1 - e_2
  simple.push_back(add(unit(l, l - 2), unit(l, l - 1), -1));
  simple.push_back(unit(l, l - 1, 2));
  for (int m = l - 3; m >= 0; --m) simple.push_back(add(unit(l, m), unit(l, m + 1), -1));
  return FiniteRoots(FiniteType{TypeTag::C, l}, scalar_gram(l, 1), sh, lg, simple);
}

FiniteRoots standard_f4() {
  constexpr int n = 4;
  std::vector<QVector> sh, lg, simple;
  for (int i = 0; i < n; ++i) sh.push_back(unit(n, i));
  with_negatives(sh);
  const Rational half(1, 2);
  for (int signs = 0; signs < 16; ++signs) {
    QVector v(n);
    for (int i = 0; i < n; ++i) v[i] = ((signs >> i) & 1) ? -half : half;
    sh.push_back(v);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      lg.push_back(add(unit(n, i), unit(n, j)));
      lg.push_back(add(unit(n, i), unit(n, j), -1));
    }
  with_negatives(lg);
  // Bourbaki a1 = e2-e3, a2 = e3-e4, a3 = e4, a4 = (e1-e2-e3-e4)/2,
  // reordered as (a3, a2, a1, a4).
  simple.push_back(unit(n, 3));
  simple.push_back(add(unit(n, 2), unit(n, 3), -1));
  simple.push_back(add(unit(n, 1), unit(n, 2), -1));
  simple.push_back(QVector{half, -half, -half, -half});
  return FiniteRoots(FiniteType{TypeTag::F4, 4}, scalar_gram(n, 2), sh, lg, simple);
}

FiniteRoots standard_g2() {
  // simple-root coordinates: a1 short, a2 long, (a1,a2) = -3
  QDense g{{Rational(2), Rational(-3)}, {Rational(-3), Rational(6)}};
  auto v = [](int a, int b) { return QVector{Rational(a), Rational(b)}; };
  std::vector<QVector> sh{v(1, 0), v(1, 1), v(2, 1)};
  std::vector<QVector> lg{v(0, 1), v(3, 1), v(3, 2)};
  with_negatives(sh);
  with_negatives(lg);
  return FiniteRoots(FiniteType{TypeTag::G2, 2}, g, sh, lg, {v(1, 0), v(0, 1)});
}

FiniteRoots to_simple_basis(const FiniteRoots &std_roots) {
  const int l = std_roots.rank();
  QDense gs(l, QVector(l));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) gs[i][j] = std_roots.form(std_roots.simple()[i], std_roots.simple()[j]);
  const QDense gs_inv = inverse(gs);
  auto coords = [&](const QVector &v) {
    QVector b(l);
    for (int j = 0; j < l; ++j) b[j] = std_roots.form(v, std_roots.simple()[j]);
    QVector c(l, Rational(0));
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j) c[i] += gs_inv[i][j] * b[j];
    return c;
  };
  std::vector<QVector> sh, lg, simple;
  for (const auto &r : std_roots.short_roots()) sh.push_back(coords(r));
  for (const auto &r : std_roots.long_roots()) lg.push_back(coords(r));
  for (int i = 0; i < l; ++i) simple.push_back(unit(l, i));
  return FiniteRoots(std_roots.type(), gs, sh, lg, simple);
}

}  // namespace

FiniteRoots build_finite(FiniteType type, Realization realization) {
  type = FiniteType::make(type.tag, type.rank);
  FiniteRoots std_roots = [&] {
    switch (type.tag) {
      case TypeTag::B: return standard_b(type.rank);
      case TypeTag::C: return standard_c(type.rank);
      case TypeTag::F4: return standard_f4();
      case TypeTag::G2: return standard_g2();
    }
    throw Error(Errc::UnsupportedType, type.name());
  }();
  if (realization == Realization::SimpleRootBasis) return to_simple_basis(std_roots);
  return std_roots;
}

// ---------------------------------------------------------------------------

EarsSpec::EarsSpec(FiniteRoots roots, int nullity, int twist, Semilattice s1, Semilattice s2)
    : roots_(std::move(roots)), nullity_(nullity), twist_(twist), s1_(std::move(s1)),
      s2_(std::move(s2)) {}

EarsSpec EarsSpec::make(FiniteType type, int nullity, int twist, Semilattice s1, Semilattice s2,
                        Realization realization) {
  return make(build_finite(type, realization), nullity, twist, std::move(s1), std::move(s2));
}

EarsSpec EarsSpec::make(FiniteRoots roots, int nullity, int twist, Semilattice s1, Semilattice s2) {
  if (nullity < 0 || nullity > SubsetJ::kMaxElement)
    throw Error(Errc::ValidationError, "nullity " + std::to_string(nullity) + " out of range");
  if (twist < 0 || twist > nullity)
    throw Error(Errc::TwistOutOfRange,
                "twist " + std::to_string(twist) + " not in 0.." + std::to_string(nullity));
  if (s1.dim() != twist)
    throw Error(Errc::DimensionMismatch, "S1 has dim " + std::to_string(s1.dim()) +
                                             ", twist is " + std::to_string(twist));
  if (s2.dim() != nullity - twist)
    throw Error(Errc::DimensionMismatch, "S2 has dim " + std::to_string(s2.dim()) +
                                             ", nullity - twist is " +
                                             std::to_string(nullity - twist));
  const FiniteType &type = roots.type();
  const bool need1 = type.tag == TypeTag::F4 || type.tag == TypeTag::G2 ||
                     (type.tag == TypeTag::C && type.rank >= 3);
  const bool need2 = type.tag == TypeTag::F4 || type.tag == TypeTag::G2 ||
                     (type.tag == TypeTag::B && type.rank >= 3);
  if (need1 && !s1.is_lattice())
    throw Error(Errc::LatticeRequired, "S1 must be a lattice for type " + type.name());
  if (need2 && !s2.is_lattice())
    throw Error(Errc::LatticeRequired, "S2 must be a lattice for type " + type.name());
  return EarsSpec(std::move(roots), nullity, twist, std::move(s1), std::move(s2));
}

std::vector<SubsetJ> EarsSpec::supp2_global() const {
  std::vector<SubsetJ> out;
  for (SubsetJ J : s2_.supp()) out.push_back(J.shifted(twist_));
  return out;
}

EarsSpec EarsSpec::with_finite(FiniteRoots roots) const {
  if (!(roots.type() == type())) throw Error(Errc::ValidationError, "realization of another type");
  EarsSpec out(std::move(roots), nullity_, twist_, s1_, s2_);
  out.label_ = label_;
  return out;
}

EarsSpec validate_spec(const RawSpec &raw) {
  const TypeTag tag = FiniteType::parse_tag(raw.type);
  const FiniteType type = FiniteType::make(tag, raw.rank);
  if (raw.twist < 0 || raw.twist > raw.nullity)
    throw Error(Errc::TwistOutOfRange, "twist " + std::to_string(raw.twist) + " not in 0.." +
                                           std::to_string(raw.nullity));
  Semilattice s1 = Semilattice::validate(raw.twist, raw.supp1);
  Semilattice s2 = Semilattice::validate(raw.nullity - raw.twist, raw.supp2);
  EarsSpec spec = EarsSpec::make(type, raw.nullity, raw.twist, std::move(s1), std::move(s2));
  spec.set_label(raw.label);
  return spec;
}

RawSpec to_raw(const EarsSpec &spec) {
  RawSpec raw;
  raw.type = spec.type().tag_name();
  raw.rank = spec.rank();
  raw.nullity = spec.nullity();
  raw.twist = spec.twist();
  raw.supp1 = spec.s1().to_lists();
  raw.supp2 = spec.s2().to_lists();
  raw.label = spec.label();
  return raw;
}

// ---------------------------------------------------------------------------

std::string to_string(RootClass c) {
  switch (c) {
    case RootClass::ShortRoot: return "ShortRoot";
    case RootClass::LongRoot: return "LongRoot";
    case RootClass::Isotropic: return "Isotropic";
    case RootClass::NotARoot: return "NotARoot";
  }
  return "?";
}

RootClass root_member(const EarsSpec &spec, const Root &v) {
  const int t = spec.twist();
  if (static_cast<int>(v.iso.size()) != spec.nullity() ||
      static_cast<int>(v.finite.size()) != spec.rank())
    throw Error(Errc::DimensionMismatch, "root vector has wrong shape");
  const std::span<const std::int64_t> iso(v.iso);
  const auto first = iso.subspan(0, t);
  const auto last = iso.subspan(t);

  const bool zero_finite =
      std::all_of(v.finite.begin(), v.finite.end(), [](const Rational &x) { return x == Rational(0); });
  if (zero_finite)
    return spec.s1().sum_contains(first) ? RootClass::Isotropic : RootClass::NotARoot;

  const auto length = spec.finite().classify(v.finite);
  if (!length) return RootClass::NotARoot;
  if (*length == RootLength::Short)
    return spec.s1().contains(first) ? RootClass::ShortRoot : RootClass::NotARoot;

  const int k = spec.k();
  for (std::int64_t n : first)
    if (n % k != 0) return RootClass::NotARoot;
  return spec.s2().contains(last) ? RootClass::LongRoot : RootClass::NotARoot;
}

namespace {

void check_i(const EarsSpec &spec, int i) {
  if (i < 1 || i > spec.rank())
    throw Error(Errc::IndexRange, "finite index " + std::to_string(i) + " not in 1.." +
                                      std::to_string(spec.rank()));
}

void check_r(const EarsSpec &spec, int r) {
  if (r < 1 || r > spec.nullity())
    throw Error(Errc::IndexRange, "isotropic index " + std::to_string(r) + " not in 1.." +
                                      std::to_string(spec.nullity()));
}

}  // namespace

int k_r(const EarsSpec &spec, int r) {
  check_r(spec, r);
  return r <= spec.twist() ? spec.k() : 1;
}

int k_ir(const EarsSpec &spec, int i, int r) {
  check_i(spec, i);
  const int kr = k_r(spec, r);
  return spec.finite().simple_length(i) == RootLength::Short ? 1 : kr;
}

std::int64_t a_pair(const EarsSpec &spec, int i, int j, int r) {
  const auto &fr = spec.finite();
  const Rational v = Rational(k_ir(spec, j, r), k_ir(spec, i, r)) *
                     fr.pairing(fr.simple_root(i), fr.simple_root(j));
  if (!is_integer(v))
    throw Error(Errc::IntegralityViolation, "a_{" + std::to_string(i) + "," + std::to_string(j) +
                                                "}(" + std::to_string(r) + ") = " + to_string(v));
  return v.numerator();
}

Rational a_quad(const EarsSpec &spec, int i, int j, int r, int s) {
  if (r > s) throw Error(Errc::IndexOrder, "a_quad needs r <= s");
  const auto &fr = spec.finite();
  return Rational(spec.k() * k_ir(spec, i, r) * k_ir(spec, j, s), k_r(spec, r)) *
         fr.coroot_form(fr.simple_root(i), fr.simple_root(j));
}

Root make_root(const QVector &finite, int nullity) {
  return Root{finite, std::vector<std::int64_t>(nullity, 0)};
}

Root add_iso(Root root, const std::vector<std::int64_t> &shift) {
  for (std::size_t r = 0; r < shift.size(); ++r) root.iso[r] += shift[r];
  return root;
}

std::string to_string(const Root &root) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < root.finite.size(); ++i)
    os << (i ? "," : "") << to_string(root.finite[i]);
  os << " | ";
  for (std::size_t r = 0; r < root.iso.size(); ++r) os << (r ? "," : "") << root.iso[r];
  os << ')';
  return os.str();
}

GeneratorSet generators_Pi(const EarsSpec &spec) {
  const int nu = spec.nullity();
  const int t = spec.twist();
  const auto &fr = spec.finite();
  std::vector<std::pair<Root, std::string>> raw;
  for (int i = 1; i <= spec.rank(); ++i)
    raw.emplace_back(make_root(fr.simple_root(i), nu), "alpha_" + std::to_string(i));

  auto theta_plus_tau = [&](int j, SubsetJ J) {
    Root root = make_root(fr.simple_root(j), nu);
    for (int r : J.elements()) root.iso[r - 1] += 1;
    raw.emplace_back(std::move(root), "theta_" + std::to_string(j) + "+tau" + J.to_string());
  };
  auto theta_plus_sigma = [&](int j, int r) {
    Root root = make_root(fr.simple_root(j), nu);
    root.iso[r - 1] += 1;
    raw.emplace_back(std::move(root), "theta_" + std::to_string(j) + "+sigma_" + std::to_string(r));
  };

  const TypeTag tag = spec.tag();
  const bool b2 = tag == TypeTag::B && spec.rank() == 2;
  if (b2) {
    for (SubsetJ J : spec.s1().supp()) theta_plus_tau(1, J);
    for (SubsetJ J : spec.supp2_global()) theta_plus_tau(2, J);
  } else if (tag == TypeTag::B) {
    for (SubsetJ J : spec.s1().supp()) theta_plus_tau(1, J);
    for (int r = t + 1; r <= nu; ++r) theta_plus_sigma(2, r);
  } else if (tag == TypeTag::C) {
    for (int r = 1; r <= t; ++r) theta_plus_sigma(1, r);
    for (SubsetJ J : spec.supp2_global()) theta_plus_tau(2, J);
  } else {
    for (int r = 1; r <= t; ++r) theta_plus_sigma(1, r);
    for (int r = t + 1; r <= nu; ++r) theta_plus_sigma(2, r);
  }

  GeneratorSet out;
  std::map<Root, std::size_t> seen;
  for (auto &[root, origin] : raw) {
    auto it = seen.find(root);
    if (it != seen.end()) {
      ++out.multiplicity[it->second];
      continue;
    }
    seen.emplace(root, out.roots.size());
    out.roots.push_back(root);
    out.multiplicity.push_back(1);
    out.origin.push_back(origin);
  }
  return out;
}

}  // namespace eawg
