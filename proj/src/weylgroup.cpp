#include "eawg/weylgroup.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <sstream>

#include "eawg/collections.hpp"
#include "eawg/error.hpp"

namespace eawg {

AmbientSpace::AmbientSpace(const EarsSpec &spec)
    : finite_dim_(static_cast<int>(spec.finite().gram().size())), nullity_(spec.nullity()) {
  const int n = dim();
  gram_.assign(n, QVector(n, Rational(0)));
  gram_inv_ = gram_;
  const QDense g_inv = inverse(spec.finite().gram());
  for (int i = 0; i < finite_dim_; ++i)
    for (int j = 0; j < finite_dim_; ++j) {
      gram_[i][j] = spec.finite().gram()[i][j];
      gram_inv_[i][j] = g_inv[i][j];
    }
  for (int r = 0; r < nullity_; ++r) {
    const int s = finite_dim_ + r, l = finite_dim_ + nullity_ + r;
    gram_[s][l] = gram_[l][s] = 1;
    gram_inv_[s][l] = gram_inv_[l][s] = 1;
  }
}

QVector AmbientSpace::embed(const Root &root) const {
  if (static_cast<int>(root.finite.size()) != finite_dim_ || static_cast<int>(root.iso.size()) != nullity_)
    throw Error(Errc::DimensionMismatch, "root " + to_string(root) + " does not fit the ambient space");
  QVector v(dim(), Rational(0));
  std::copy(root.finite.begin(), root.finite.end(), v.begin());
  for (int r = 0; r < nullity_; ++r) v[finite_dim_ + r] = root.iso[r];
  return v;
}

QVector AmbientSpace::sigma(int r) const {
  QVector v(dim(), Rational(0));
  v.at(finite_dim_ + r - 1) = 1;
  return v;
}

QVector AmbientSpace::lambda(int r) const {
  QVector v(dim(), Rational(0));
  v.at(finite_dim_ + nullity_ + r - 1) = 1;
  return v;
}

namespace {

void check_dim(int n) {
  if (n < 0 || n > WeylElement::kMaxDim)
    throw Error(Errc::DimTooLarge, "matrix dimension " + std::to_string(n) + " exceeds " +
                                       std::to_string(WeylElement::kMaxDim));
}

template <int N>
void small_product(const std::int64_t *a, const std::int64_t *b, std::int64_t *out) {
  for (int i = 0; i < N; ++i) {
    std::int64_t row[N] = {};
    for (int k = 0; k < N; ++k) {
      const std::int64_t x = a[i * N + k];
      if (x == 0) continue;
      for (int j = 0; j < N; ++j) row[j] += x * b[k * N + j];
    }
    for (int j = 0; j < N; ++j) out[i * N + j] = row[j];
  }
}

}  // namespace

WeylElement WeylElement::identity(int n, int split) {
  check_dim(n);
  WeylElement w;
  w.n_ = n;
  w.split_ = split;
  for (int i = 0; i < n; ++i) w.num_[i * n + i] = 1;
  w.refresh_bound();
  return w;
}

WeylElement WeylElement::from_rational(const QDense &m, int split) {
  WeylElement w;
  w.split_ = split;
  w.n_ = static_cast<int>(m.size());
  check_dim(w.n_);
  std::int64_t den = 1;
  for (const auto &row : m) {
    if (static_cast<int>(row.size()) != w.n_) throw Error(Errc::DimensionMismatch, "matrix is not square");
    for (const auto &q : row) den = checked_mul(den / std::gcd(den, q.denominator()), q.denominator());
  }
  w.den_ = den;
  std::size_t k = 0;
  for (const auto &row : m)
    for (const auto &q : row) w.num_[k++] = checked_mul(q.numerator(), den / q.denominator());
  w.normalize();
  w.refresh_bound();
  return w;
}

Rational WeylElement::entry(int i, int j) const { return Rational(num_[i * n_ + j], den_); }

QDense WeylElement::to_rational() const {
  QDense m(n_, QVector(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m[i][j] = entry(i, j);
  return m;
}

bool WeylElement::is_identity() const {
  if (den_ != 1) return false;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (num_[i * n_ + j] != (i == j ? 1 : 0)) return false;
  return true;
}

bool WeylElement::operator==(const WeylElement &other) const {
  return n_ == other.n_ && den_ == other.den_ &&
         std::equal(num_.begin(), num_.begin() + n_ * n_, other.num_.begin());
}

void WeylElement::normalize() {
  if (den_ == 1) return;
  std::int64_t g = den_;
  for (int k = 0; k < n_ * n_; ++k) {
    g = std::gcd(g, num_[k]);
    if (g == 1) return;
  }
  den_ /= g;
  for (int k = 0; k < n_ * n_; ++k) num_[k] /= g;
}

void WeylElement::refresh_max() {
  std::int64_t m = den_;
  for (int k = 0; k < n_ * n_; ++k) {
    const std::int64_t x = num_[k];
    m = std::max(m, x < 0 ? -x : x);
  }
  max_abs_ = m;
}

void WeylElement::refresh_bound() {
  refresh_max();
  affine_ = false;
  const int f = split_;
  if (f < 0 || f > n_ || (n_ - f) % 2 != 0) return;
  const int nu = (n_ - f) / 2;
  for (int i = 0; i < n_; ++i)
    for (int c = f; c < f + nu; ++c)
      if (num_[i * n_ + c] != (i == c ? den_ : 0)) return;
  for (int i = f + nu; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (num_[i * n_ + j] != (i == j ? den_ : 0)) return;
  affine_ = true;
}

namespace {

// [[A,0,C],[B,dI,D],[0,0,dI]] blocks over rows/columns finite | sigma | lambda
void block_product(int n, int f, const std::int64_t *x, std::int64_t dx, const std::int64_t *y,
                   std::int64_t dy, std::int64_t *out) {
  const int nu = (n - f) / 2, l0 = f + nu;
  auto X = [&](int i, int j) { return x[i * n + j]; };
  auto Y = [&](int i, int j) { return y[i * n + j]; };
  for (int i = 0; i < l0; ++i) {
    const bool srow = i >= f;
    for (int j = 0; j < f; ++j) {
      std::int64_t acc = srow ? dx * Y(i, j) : 0;
      for (int k = 0; k < f; ++k) acc += X(i, k) * Y(k, j);
      out[i * n + j] = acc;
    }
    for (int j = l0; j < n; ++j) {
      std::int64_t acc = X(i, j) * dy + (srow ? dx * Y(i, j) : 0);
      for (int k = 0; k < f; ++k) acc += X(i, k) * Y(k, j);
      out[i * n + j] = acc;
    }
  }
  const std::int64_t d = dx * dy;
  for (int i = f; i < n; ++i) out[i * n + i] = d;
}

}  // namespace

WeylElement WeylElement::operator*(const WeylElement &other) const {
  if (n_ != other.n_) throw Error(Errc::DimensionMismatch, "matrix sizes differ");
  WeylElement out;
  const int n = n_;
  out.n_ = n;
  out.den_ = checked_mul(den_, other.den_);
  constexpr std::int64_t kSafe = std::int64_t{1} << 28;
  out.split_ = split_ >= 0 ? split_ : other.split_;
  if (affine_ && other.affine_ && split_ == other.split_ && max_abs_ < kSafe && other.max_abs_ < kSafe &&
      den_ < kSafe && other.den_ < kSafe) {
    block_product(n, split_, num_.data(), den_, other.num_.data(), other.den_, out.num_.data());
    out.normalize();
    out.refresh_max();
    out.affine_ = true;
    return out;
  } else if (max_abs_ < kSafe && other.max_abs_ < kSafe) {
    // |sum| <= n * 2^56 < 2^63
    switch (n) {
      case 6: small_product<6>(num_.data(), other.num_.data(), out.num_.data()); break;
      case 7: small_product<7>(num_.data(), other.num_.data(), out.num_.data()); break;
      case 8: small_product<8>(num_.data(), other.num_.data(), out.num_.data()); break;
      case 9: small_product<9>(num_.data(), other.num_.data(), out.num_.data()); break;
      case 10: small_product<10>(num_.data(), other.num_.data(), out.num_.data()); break;
      case 11: small_product<11>(num_.data(), other.num_.data(), out.num_.data()); break;
      case 12: small_product<12>(num_.data(), other.num_.data(), out.num_.data()); break;
      default:
        for (int i = 0; i < n; ++i) {
          std::int64_t *dst = &out.num_[i * n];
          for (int k = 0; k < n; ++k) {
            const std::int64_t a = num_[i * n + k];
            if (a == 0) continue;
            const std::int64_t *src = &other.num_[k * n];
            for (int j = 0; j < n; ++j) dst[j] += a * src[j];
          }
        }
    }
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        __int128 acc = 0;
        for (int k = 0; k < n; ++k) acc += static_cast<__int128>(num_[i * n + k]) * other.num_[k * n + j];
        out.num_[i * n + j] = narrow(acc);
      }
  }
  out.normalize();
  out.refresh_bound();
  return out;
}

QVector WeylElement::apply(const QVector &v) const {
  QVector out(n_, Rational(0));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (num_[i * n_ + j] != 0) out[i] += Rational(num_[i * n_ + j], den_) * v[j];
  return out;
}

WeylElement WeylElement::transpose() const {
  WeylElement out = *this;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) out.num_[i * n_ + j] = num_[j * n_ + i];
  out.refresh_bound();
  return out;
}

WeylEngine::WeylEngine(const EarsSpec &spec)
    : spec_(spec),
      space_(spec),
      gram_(WeylElement::from_rational(space_.gram(), space_.finite_dim())),
      gram_inv_(WeylElement::from_rational(space_.gram_inverse(), space_.finite_dim())) {}

Root WeylEngine::root(const QVector &finite, const std::vector<std::int64_t> &iso) const {
  Root out = make_root(finite, spec_.nullity());
  for (std::size_t r = 0; r < iso.size() && r < out.iso.size(); ++r) out.iso[r] = iso[r];
  return out;
}

std::vector<std::int64_t> WeylEngine::sigma_vec(int r, std::int64_t c) const {
  std::vector<std::int64_t> v(spec_.nullity(), 0);
  v.at(r - 1) = c;
  return v;
}

std::vector<std::int64_t> WeylEngine::tau(SubsetJ J) const {
  std::vector<std::int64_t> v(spec_.nullity(), 0);
  for (int r : J.elements()) v.at(r - 1) = 1;
  return v;
}

std::size_t WeylEngine::KeyHash::operator()(const Key &k) const {
  std::uint64_t h = 1469598103934665603ull;
  for (std::int64_t x : k) h = (h ^ static_cast<std::uint64_t>(x)) * 1099511628211ull;
  return static_cast<std::size_t>(h);
}

WeylEngine::Key WeylEngine::key_of(const Root &alpha, const std::vector<std::int64_t> *shift) const {
  Key key{};
  const std::size_t f = alpha.finite.size(), nu = alpha.iso.size();
  if (2 * f + nu > key.size()) throw Error(Errc::DimTooLarge, "root does not fit the reflection cache key");
  for (std::size_t i = 0; i < f; ++i) {
    key[2 * i] = alpha.finite[i].numerator();
    key[2 * i + 1] = alpha.finite[i].denominator();
  }
  for (std::size_t r = 0; r < nu; ++r) key[2 * f + r] = alpha.iso[r] + (shift ? (*shift)[r] : 0);
  return key;
}

const WeylElement &WeylEngine::reflection(const Root &alpha) const {
  return reflection_keyed(key_of(alpha, nullptr), alpha, nullptr);
}

const WeylElement &WeylEngine::reflection_keyed(const Key &key, const Root &base,
                                                const std::vector<std::int64_t> *shift) const {
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  const Root alpha = shift ? add_iso(base, *shift) : base;
  if (!is_real_root(root_member(spec_, alpha)))
    throw Error(Errc::NotARoot, to_string(alpha) + " is not a non-isotropic root");
  const QVector a = space_.embed(alpha);
  const int n = space_.dim();
  QVector ga(n, Rational(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (space_.gram()[i][j] != Rational(0)) ga[i] += space_.gram()[i][j] * a[j];
  const Rational c = Rational(2) / space_.form(a, a);
  QDense m(n, QVector(n, Rational(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = (i == j ? Rational(1) : Rational(0)) - c * a[i] * ga[j];
  return cache_.emplace(key, WeylElement::from_rational(m, space_.finite_dim())).first->second;
}

WeylElement WeylEngine::inverse(const WeylElement &w) const { return gram_inv_ * w.transpose() * gram_; }

WeylElement WeylEngine::power(const WeylElement &w, std::int64_t n) const {
  WeylElement base = n < 0 ? inverse(w) : w;
  std::uint64_t e = n < 0 ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n);
  WeylElement out = identity();
  while (e) {
    if (e & 1u) out = out * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return out;
}

WeylElement WeylEngine::commutator(const WeylElement &x, const WeylElement &y) const {
  return inverse(x) * inverse(y) * x * y;
}

bool WeylEngine::preserves_form(const WeylElement &w) const {
  return w.transpose() * gram_ * w == gram_;
}

WeylElement WeylEngine::t(const Root &alpha, const std::vector<std::int64_t> &sigma) const {
  return reflection_keyed(key_of(alpha, &sigma), alpha, &sigma) * reflection(alpha);
}

WeylElement WeylEngine::translation(int i, int r) const {
  return t(root(spec_.finite().simple_root(i)), sigma_vec(r, k_ir(spec_, i, r)));
}

WeylElement WeylEngine::z_image(int r, int s, const std::optional<ZChoice> &choice) const {
  const int nu = spec_.nullity(), tw = spec_.twist();
  if (!(1 <= r && r < s && s <= nu)) throw Error(Errc::IndexOrder, "z_image needs r < s");
  const QVector &a = choice ? choice->short_root : spec_.finite().simple_root(1);
  const QVector &b = choice ? choice->long_root : spec_.finite().simple_root(2);
  auto same_side = [&](const QVector &theta, bool in_supp) {
    const Root th = root(theta);
    if (in_supp) {
      std::vector<std::int64_t> minus_tau = sigma_vec(r, -1);
      minus_tau[s - 1] = -1;
      return t(th, minus_tau) * t(th, sigma_vec(r)) * t(th, sigma_vec(s));
    }
    return commutator(t(th, sigma_vec(r)), t(th, sigma_vec(s)));
  };
  if (s <= tw) return same_side(a, spec_.s1().in_supp(SubsetJ::pair(r, s)));
  if (r > tw) return same_side(b, spec_.s2().in_supp(SubsetJ::pair(r - tw, s - tw)));
  return commutator(t(root(b), sigma_vec(s)), t(root(a), sigma_vec(r)));
}

WeylElement WeylEngine::z_J(SubsetJ J, const std::optional<QVector> &theta) const {
  const int tw = spec_.twist();
  if (J.empty()) return identity();
  const bool side1 = J.max_element() <= tw;
  const bool in_supp = side1 ? spec_.s1().in_supp(J) : [&] {
    const auto g = spec_.supp2_global();
    return std::find(g.begin(), g.end(), J) != g.end();
  }();
  if (!in_supp) throw Error(Errc::ValidationError, J.to_string() + " is not in supp(S1) or supp(S2)");
  const Root th = root(theta ? *theta : spec_.finite().simple_root(side1 ? 1 : 2));
  std::vector<std::int64_t> minus_tau = tau(J);
  for (auto &x : minus_tau) x = -x;
  WeylElement out = t(th, minus_tau);
  for (int r : J.elements()) out = out * t(th, sigma_vec(r));
  return out;
}

const std::vector<WeylElement> &WeylEngine::pi_reflections() const {
  if (pi_refl_.empty())
    for (const Root &r : generators_Pi(spec_).roots) pi_refl_.push_back(reflection(r));
  return pi_refl_;
}

bool WeylEngine::is_central(const WeylElement &w) const {
  for (const WeylElement &g : pi_reflections())
    if (!(g * w == w * g)) return false;
  return true;
}

WeylElement reflection(const EarsSpec &spec, const Root &alpha) { return WeylEngine(spec).reflection(alpha); }
WeylElement translation(const EarsSpec &spec, int i, int r) { return WeylEngine(spec).translation(i, r); }
WeylElement z_image(const EarsSpec &spec, int r, int s) { return WeylEngine(spec).z_image(r, s); }

std::size_t VerificationReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const CheckRecord &c) { return !c.pass; }));
}

void VerificationReport::add(std::string identity, std::vector<int> indices, bool pass, std::string detail) {
  checks.push_back(CheckRecord{std::move(identity), std::move(indices), pass, std::move(detail)});
}

void VerificationReport::require_pass() const {
  for (const auto &c : checks)
    if (!c.pass) {
      std::ostringstream os;
      os << name << ": " << c.identity << " fails at (";
      for (std::size_t i = 0; i < c.indices.size(); ++i) os << (i ? "," : "") << c.indices[i];
      os << ")";
      if (!c.detail.empty()) os << " " << c.detail;
      throw Error(Errc::IdentityFailure, os.str());
    }
}

namespace {

void require_desk_scale(const EarsSpec &spec) {
  if (spec.rank() > 4 || spec.nullity() > 4)
    throw Error(Errc::ValidationError, "matrix checks need rank <= 4 and nu <= 4");
}

std::vector<int> elements_of(SubsetJ J) { return J.elements(); }

std::vector<SubsetJ> all_supp(const EarsSpec &spec) {
  std::set<SubsetJ> out(spec.s1().supp().begin(), spec.s1().supp().end());
  for (SubsetJ J : spec.supp2_global()) out.insert(J);
  return {out.begin(), out.end()};
}

constexpr std::size_t kMaxChoices = 12;

}  // namespace

VerificationReport verify_pox_images(const EarsSpec &spec) {
  require_desk_scale(spec);
  WeylEngine eng(spec);
  VerificationReport rep{"pox", {}};
  const int l = spec.rank(), nu = spec.nullity(), tw = spec.twist();
  const auto &fr = spec.finite();

  std::vector<std::vector<WeylElement>> tr(l + 1, std::vector<WeylElement>(nu + 1));
  for (int i = 1; i <= l; ++i)
    for (int r = 1; r <= nu; ++r) {
      tr[i][r] = eng.translation(i, r);
      rep.add("form(t_{i,r})", {i, r}, eng.preserves_form(tr[i][r]));
    }
  std::map<std::pair<int, int>, WeylElement> z;
  for (auto [r, s] : pairs_upto(nu)) z[{r, s}] = eng.z_image(r, s);

  for (int i = 1; i <= l; ++i) {
    const WeylElement &wi = eng.reflection(eng.root(fr.simple_root(i)));
    for (int j = 1; j <= l; ++j)
      for (int r = 1; r <= nu; ++r) {
        try {
          const std::int64_t a = a_pair(spec, i, j, r);
          rep.add("(ii) w_i t_{j,r} w_i = t_{j,r} t_{i,r}^{-a_ij(r)}", {i, j, r},
                  wi * tr[j][r] * wi == tr[j][r] * eng.power(tr[i][r], -a));
        } catch (const Error &e) {
          rep.add("(ii) w_i t_{j,r} w_i = t_{j,r} t_{i,r}^{-a_ij(r)}", {i, j, r}, false, e.what());
        }
      }
  }

  for (int i = 1; i <= l; ++i)
    for (int j = 1; j <= l; ++j)
      for (int r = 1; r <= nu; ++r)
        for (int s = r; s <= nu; ++s) {
          const WeylElement lhs = eng.commutator(tr[i][r], tr[j][s]);
          const std::string name = "(iii) [t_{i,r}, t_{j,s}] = z_{r,s}^{a_ij(r,s)/Delta}";
          if (r == s) {
            rep.add(name, {i, j, r, s}, lhs.is_identity(), "z_{r,r} = 1");
            continue;
          }
          const Rational e = a_quad(spec, i, j, r, s) / delta(spec, r, s);
          if (!is_integer(e)) {
            rep.add(name, {i, j, r, s}, false, "exponent " + to_string(e) + " is not integral");
            continue;
          }
          rep.add(name, {i, j, r, s}, lhs == eng.power(z.at({r, s}), e.numerator()));
        }

  for (SubsetJ J : all_supp(spec)) {
    const WeylElement zj = eng.z_J(J);
    WeylElement rhs = eng.identity();
    const auto el = J.elements();
    for (std::size_t a = 0; a < el.size(); ++a)
      for (std::size_t b = a + 1; b < el.size(); ++b)
        rhs = rhs * eng.power(z.at({el[a], el[b]}), 2 / delta(spec, el[a], el[b]));
    rep.add("(iv) z_J^2 = prod z_{r,s}^{2/Delta}", elements_of(J), zj * zj == rhs);
    if (J.size() >= 2) rep.add("central(z_J)", elements_of(J), eng.is_central(zj));
  }

  for (auto &[rs, zrs] : z) {
    auto [r, s] = rs;
    rep.add("central(z_{r,s})", {r, s}, eng.is_central(zrs));
    rep.add("form(z_{r,s})", {r, s}, eng.preserves_form(zrs));
    std::size_t tried = 0;
    bool same = true;
    if (s <= tw || r > tw) {
      const auto &pool = s <= tw ? fr.short_roots() : fr.long_roots();
      for (const QVector &x : pool) {
        if (tried++ >= kMaxChoices) break;
        ZChoice c{s <= tw ? x : fr.simple_root(1), s <= tw ? fr.simple_root(2) : x};
        same = same && eng.z_image(r, s, c) == zrs;
      }
    } else {
      for (const QVector &a : fr.short_roots())
        for (const QVector &b : fr.long_roots()) {
          if (tried >= kMaxChoices || fr.form(a, b) >= Rational(0)) continue;
          ++tried;
          same = same && eng.z_image(r, s, ZChoice{a, b}) == zrs;
        }
    }
    rep.add("choice independence of z_{r,s}", {r, s}, same, std::to_string(tried) + " choices");
  }

  for (SubsetJ J : all_supp(spec)) {
    if (J.size() < 3) continue;
    const bool side1 = J.max_element() <= tw;
    const auto &pool = side1 ? fr.short_roots() : fr.long_roots();
    const WeylElement base = eng.z_J(J);
    bool same = true;
    std::size_t tried = 0;
    for (const QVector &x : pool) {
      if (tried++ >= kMaxChoices) break;
      same = same && eng.z_J(J, x) == base;
    }
    rep.add("choice independence of z_J", elements_of(J), same, std::to_string(tried) + " choices");
  }
  return rep;
}

namespace {

std::vector<Root> sampled_roots(const WeylEngine &eng, int box) {
  const EarsSpec &spec = eng.spec();
  const int nu = spec.nullity();
  std::vector<Root> out;
  std::vector<std::int64_t> iso(nu, -box);
  const auto finite = spec.finite().all_roots();
  while (true) {
    for (const QVector &f : finite) {
      Root r = eng.root(f, iso);
      if (is_real_root(root_member(spec, r))) out.push_back(std::move(r));
    }
    int k = 0;
    while (k < nu && iso[k] == box) iso[k++] = -box;
    if (k == nu) break;
    ++iso[k];
  }
  return out;
}

std::vector<std::vector<std::int64_t>> sampled_shifts(int nu) {
  std::vector<std::vector<std::int64_t>> out;
  for (int r = 0; r < nu; ++r) {
    out.emplace_back(nu, 0);
    out.back()[r] = 1;
  }
  for (int r = 0; r < nu; ++r)
    for (int s = r + 1; s < nu; ++s) {
      out.emplace_back(nu, 0);
      out.back()[r] = out.back()[s] = 1;
    }
  for (int r = 0; r < nu; ++r) {
    out.emplace_back(nu, 0);
    out.back()[r] = 2;
  }
  return out;
}

std::vector<std::int64_t> scaled(const std::vector<std::int64_t> &v, std::int64_t c) {
  std::vector<std::int64_t> out(v);
  for (auto &x : out) x *= c;
  return out;
}

std::vector<std::int64_t> sum(const std::vector<std::int64_t> &a, const std::vector<std::int64_t> &b) {
  std::vector<std::int64_t> out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

Root negated(Root r) {
  for (auto &q : r.finite) q = -q;
  for (auto &x : r.iso) x = -x;
  return r;
}

}  // namespace

VerificationReport verify_lemma_images(const EarsSpec &spec, const LemmaSampling &sampling) {
  require_desk_scale(spec);
  WeylEngine eng(spec);
  VerificationReport rep{"lemmas", {}};
  const auto roots = sampled_roots(eng, sampling.box);
  const auto shifts = sampled_shifts(spec.nullity());
  auto real = [&](const Root &r) { return is_real_root(root_member(spec, r)); };

  bool gen3_power = true, gen3_neg = true, ip_ok = true;
  std::size_t gen3_count = 0, ip_count = 0;
  std::string gen3_fail, ip_fail;
  std::vector<std::optional<WeylElement>> plus(shifts.size()), minus(shifts.size());
  for (const Root &alpha : roots) {
    for (std::size_t a = 0; a < shifts.size(); ++a) {
      plus[a].reset();
      minus[a].reset();
      if (!real(add_iso(alpha, shifts[a]))) continue;
      plus[a] = eng.t(alpha, shifts[a]);
      minus[a] = eng.t(alpha, scaled(shifts[a], -1));
    }
    for (std::size_t a = 0; a < shifts.size(); ++a) {
      if (!plus[a]) continue;
      const auto &sigma = shifts[a];
      ++gen3_count;
      const WeylElement &T = *plus[a];
      WeylElement up = eng.identity(), down = up;
      for (int n = 0; n <= sampling.max_power; ++n) {
        if (n > 0) {
          up = up * T;
          down = down * *minus[a];
        }
        bool ok = up == eng.t(alpha, scaled(sigma, n)) && down == eng.t(alpha, scaled(sigma, -n));
        ok = ok && eng.t(add_iso(alpha, scaled(sigma, n)), sigma) == T &&
             eng.t(add_iso(alpha, scaled(sigma, -n)), sigma) == T;
        if (!ok && gen3_power) gen3_fail = to_string(alpha) + " n=" + std::to_string(n);
        gen3_power = gen3_power && ok;
      }
      const bool neg = *minus[a] == eng.t(negated(alpha), sigma) && eng.inverse(T) == *minus[a];
      if (!neg && gen3_neg) gen3_fail = to_string(alpha) + " negation";
      gen3_neg = gen3_neg && neg;

      const Root as = add_iso(alpha, sigma);
      for (std::size_t b = 0; b < shifts.size(); ++b) {
        const auto &delta = shifts[b];
        if (!plus[b] || !real(add_iso(as, delta))) continue;
        ++ip_count;
        const bool ok = eng.t(as, scaled(delta, -1)) * *plus[b] == eng.t(add_iso(alpha, delta), sigma) * *minus[a];
        if (!ok && ip_ok) ip_fail = to_string(alpha);
        ip_ok = ip_ok && ok;
      }
    }
  }
  rep.add("gen-3 (t_a^s)^n = t_a^{ns}, t_{a+ns}^s = t_a^s", {static_cast<int>(gen3_count)}, gen3_power, gen3_fail);
  rep.add("gen-3 t_a^{-s} = t_{-a}^s", {static_cast<int>(gen3_count)}, gen3_neg, gen3_fail);
  rep.add("ip(i) t_{a+s}^{-d} t_a^d = t_{a+d}^s t_a^{-s}", {static_cast<int>(ip_count)}, ip_ok, ip_fail);

  const auto pi = generators_Pi(spec).roots;
  const int nu = spec.nullity();
  std::size_t c1 = 0, c2 = 0, c3 = 0;
  bool ok1 = true, ok2 = true, ok3 = true;
  std::vector<std::vector<std::int64_t>> unit;
  for (int r = 1; r <= nu; ++r) unit.push_back(eng.sigma_vec(r));
  for (const Root &alpha : pi)
    for (const Root &beta : pi)
      for (const auto &s : unit)
        for (const auto &d : unit) {
          if (!real(add_iso(alpha, s)) || !real(add_iso(beta, d))) continue;
          ++c1;
          ok1 = ok1 && eng.is_central(eng.commutator(eng.t(alpha, s), eng.t(beta, d)));
        }
  for (const Root &alpha : pi)
    for (const auto &s : shifts)
      for (const auto &d : shifts) {
        const Root as = add_iso(alpha, s);
        if (!real(as) || !real(add_iso(alpha, d)) || !real(add_iso(as, d))) continue;
        ++c2;
        ok2 = ok2 && eng.is_central(eng.t(as, d) * eng.t(alpha, scaled(d, -1)));
      }
  // families: subsets of {sigma_r} of size >= 2 and the doubled pairs {sigma_r, sigma_r}
  std::vector<std::vector<std::vector<std::int64_t>>> families;
  for (std::uint32_t m = 0; m < (1u << nu); ++m)
    if (std::popcount(m) >= 2) {
      families.emplace_back();
      for (int r = 0; r < nu; ++r)
        if (m >> r & 1u) families.back().push_back(unit[r]);
    }
  for (int r = 0; r < nu; ++r) families.push_back({unit[r], unit[r]});
  for (const Root &alpha : pi)
    for (const auto &fam : families) {
      std::vector<std::int64_t> total(nu, 0);
      bool applicable = real(alpha);
      for (const auto &d : fam) {
        total = sum(total, d);
        applicable = applicable && real(add_iso(alpha, d));
      }
      if (!applicable || !real(add_iso(alpha, total))) continue;
      ++c3;
      WeylElement w = eng.t(alpha, scaled(total, -1));
      for (const auto &d : fam) w = w * eng.t(alpha, d);
      ok3 = ok3 && eng.is_central(w);
    }
  rep.add("conj-cen-1(i) [t_a^s, t_b^d] central", {static_cast<int>(c1)}, ok1);
  rep.add("conj-cen-1(ii) t_{a+s}^d t_a^{-d} central", {static_cast<int>(c2)}, ok2);
  rep.add("conj-cen-1(iii) t_a^{-sum d} prod t_a^{d} central", {static_cast<int>(c3)}, ok3);
  return rep;
}

Root reflect_root(const EarsSpec &spec, const Root &alpha, const Root &v) {
  const auto &fr = spec.finite();
  const Rational c = fr.pairing(v.finite, alpha.finite);
  if (!is_integer(c)) throw Error(Errc::IntegralityViolation, "non-integral pairing in reflect_root");
  const std::int64_t n = c.numerator();
  Root out = v;
  for (std::size_t i = 0; i < out.finite.size(); ++i) out.finite[i] -= c * alpha.finite[i];
  for (std::size_t r = 0; r < out.iso.size(); ++r) out.iso[r] = checked_add(out.iso[r], -n * alpha.iso[r]);
  return out;
}

OrbitCoverReport orbit_cover(const EarsSpec &spec, int height_bound) {
  OrbitCoverReport rep;
  rep.height_bound = height_bound;
  const int slack = height_bound + 2;
  const auto pi = generators_Pi(spec).roots;
  auto within = [](const Root &r, int h) {
    return std::all_of(r.iso.begin(), r.iso.end(), [h](std::int64_t x) { return x >= -h && x <= h; });
  };
  std::set<Root> seen;
  std::vector<Root> frontier;
  for (const Root &r : pi)
    if (within(r, slack) && seen.insert(r).second) frontier.push_back(r);
  while (!frontier.empty()) {
    std::vector<Root> next;
    for (const Root &v : frontier)
      for (const Root &a : pi) {
        Root w = reflect_root(spec, a, v);
        if (within(w, slack) && seen.insert(w).second) next.push_back(std::move(w));
      }
    frontier = std::move(next);
  }
  WeylEngine eng(spec);
  for (const Root &r : sampled_roots(eng, height_bound)) {
    ++rep.target_count;
    if (seen.count(r))
      ++rep.reached_count;
    else
      rep.unreached.push_back(r);
  }
  return rep;
}

FreeCenterReport free_center_check(const EarsSpec &spec, int exponent_bound) {
  if (spec.nullity() > 4) throw Error(Errc::ValidationError, "free center check needs nu <= 4");
  WeylEngine eng(spec);
  const auto pairs = pairs_upto(spec.nullity());
  FreeCenterReport rep;
  rep.generators = pairs.size();
  std::vector<WeylElement> z;
  QDense rows;
  const int n = eng.space().dim();
  for (auto [r, s] : pairs) {
    z.push_back(eng.z_image(r, s));
    QVector row;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) row.push_back(z.back().entry(i, j) - (i == j ? 1 : 0));
    rows.push_back(std::move(row));
  }
  // rank by elimination
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c] == Rational(0)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      if (rows[i][c] == Rational(0)) continue;
      const Rational f = rows[i][c] / rows[rank][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  rep.rank = rank;

  const int m = static_cast<int>(z.size());
  if (m == 0 || exponent_bound <= 0) return rep;
  std::vector<std::vector<WeylElement>> powers(m);
  for (int g = 0; g < m; ++g)
    for (int e = -exponent_bound; e <= exponent_bound; ++e) powers[g].push_back(eng.power(z[g], e));
  std::vector<std::int64_t> expo(m, -exponent_bound);
  while (true) {
    if (std::any_of(expo.begin(), expo.end(), [](std::int64_t e) { return e != 0; })) {
      WeylElement w = eng.identity();
      for (int g = 0; g < m; ++g) w = w * powers[g][expo[g] + exponent_bound];
      ++rep.products_checked;
      if (w.is_identity()) rep.trivial_products.push_back(expo);
    }
    int k = 0;
    while (k < m && expo[k] == exponent_bound) expo[k++] = -exponent_bound;
    if (k == m) break;
    ++expo[k];
  }
  return rep;
}

}  // namespace eawg
