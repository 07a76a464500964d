#include "zipstrata/witt.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include <json.hpp>

namespace zipstrata::witt {

using nlohmann::json;
using Poly = std::vector<std::int64_t>;

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) {
  a %= n;
  return a < 0 ? a + n : a;
}

// a * b reduced by the monic polynomial f (degree d) with coefficients mod n.
Poly mulmod(const Poly& a, const Poly& b, const Poly& f, std::int64_t n) {
  const std::size_t d = f.size() - 1;
  Poly r(2 * d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % n;
  }
  for (std::size_t k = r.size(); k-- > d;) {
    const std::int64_t c = r[k];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= d; ++i) r[k - d + i] = mod(r[k - d + i] - c * f[i], n);
  }
  r.resize(d);
  return r;
}

Poly powmod(Poly a, std::uint64_t e, const Poly& f, std::int64_t n) {
  Poly r(f.size() - 1, 0);
  r[0] = 1 % n;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, f, n);
    a = mulmod(a, a, f, n);
    e >>= 1;
  }
  return r;
}

// Monic lift of fbar whose roots xi satisfy xi^(p^d) = xi: the minimal
// polynomial of the Teichmueller lift of a root of the naive lift.
Poly teichmueller_modulus(int p, int d, int m, std::int64_t pm) {
  const std::vector<int> fbar = ff::smallest_irreducible(p, d);
  Poly f0(fbar.begin(), fbar.end());
  if (d == 1) {
    // Roots lie in Z/p^m already; the root of fbar lifts to its Teichmueller
    // representative t = r^(p^(m-1)).
    const std::int64_t r = mod(-f0[0], pm);
    std::int64_t t = 1 % pm;
    std::uint64_t e = 1;
    for (int i = 1; i < m; ++i) e *= static_cast<std::uint64_t>(p);
    std::int64_t b = r;
    while (e > 0) {
      if (e & 1) t = t * b % pm;
      b = b * b % pm;
      e >>= 1;
    }
    return {mod(-t, pm), 1};
  }
  Poly x(d, 0);
  x[1] = 1;
  std::uint64_t e = 1;
  for (int i = 0; i < d * (m - 1); ++i) e *= static_cast<std::uint64_t>(p);
  const Poly tau = powmod(x, e, f0, pm);
  // prod_{i<d} (X - tau^(p^i)) with coefficients in Z/p^m[x]/(f0).
  std::vector<Poly> prod{Poly(d, 0)};
  prod[0][0] = 1 % pm;
  Poly conj = tau;
  for (int i = 0; i < d; ++i) {
    std::vector<Poly> next(prod.size() + 1, Poly(d, 0));
    for (std::size_t k = 0; k < prod.size(); ++k) {
      for (int c = 0; c < d; ++c) next[k + 1][c] = mod(next[k + 1][c] + prod[k][c], pm);
      const Poly t = mulmod(prod[k], conj, f0, pm);
      for (int c = 0; c < d; ++c) next[k][c] = mod(next[k][c] - t[c], pm);
    }
    prod = std::move(next);
    conj = powmod(conj, static_cast<std::uint64_t>(p), f0, pm);
  }
  Poly f(d + 1, 0);
  for (int k = 0; k <= d; ++k) {
    for (int c = 1; c < d; ++c)
      if (prod[k][c] != 0) throw InvariantViolation("Teichmueller modulus has non-scalar coefficients");
    f[k] = prod[k][0];
  }
  return f;
}

}  // namespace

GaloisRing::GaloisRing(int p, int d, int m) : p_(p), d_(d), m_(m) {
  if (!ff::is_prime(p)) throw InvalidArgument("p = " + std::to_string(p) + " is not prime");
  if (d < 1 || m < 1) throw InvalidArgument("residue degree and truncation level must be positive");
  std::uint64_t pm = 1;
  std::uint64_t order = 1;
  for (int i = 0; i < m; ++i) {
    pm *= static_cast<std::uint64_t>(p);
    if (pm > kMaxOrder) throw TooLarge("Galois ring", pm, kMaxOrder);
  }
  for (int i = 0; i < d; ++i) {
    order *= pm;
    if (order > kMaxOrder) throw TooLarge("Galois ring", order, kMaxOrder);
  }
  pm_ = static_cast<std::int64_t>(pm);
  order_ = static_cast<Elem>(order);
  modulus_ = teichmueller_modulus(p, d, m, pm_);

  const std::vector<int> fbar = ff::smallest_irreducible(p, d);
  for (int i = 0; i <= d; ++i)
    if (mod(modulus_[i], p) != fbar[i]) throw InvariantViolation("modulus does not reduce to the residue modulus");

  // sigma(xi^i) = xi^(p i); sigma^{-1} = sigma^(d-1).
  Poly xi(d, 0);
  if (d > 1) xi[1] = 1;
  else xi[0] = mod(-modulus_[0], pm_);
  std::uint64_t pd1 = 1;
  for (int i = 0; i + 1 < d; ++i) pd1 *= static_cast<std::uint64_t>(p);
  const Poly xi_p = powmod(xi, static_cast<std::uint64_t>(p), modulus_, pm_);
  const Poly xi_inv = powmod(xi, pd1, modulus_, pm_);
  Poly a(d, 0);
  Poly b(d, 0);
  a[0] = b[0] = 1 % pm_;
  for (int i = 0; i < d; ++i) {
    frob_.push_back(a);
    frob_inv_.push_back(b);
    a = mulmod(a, xi_p, modulus_, pm_);
    b = mulmod(b, xi_inv, modulus_, pm_);
  }
  if (d > 1 && powmod(xi, pd1 * static_cast<std::uint64_t>(p), modulus_, pm_) != xi)
    throw InvariantViolation("generator is not a Teichmueller element");

  if (order_ <= 1024) {
    mul_table_.resize(static_cast<std::size_t>(order_) * order_);
    for (Elem x = 0; x < order_; ++x)
      for (Elem y = 0; y < order_; ++y) mul_table_[static_cast<std::size_t>(x) * order_ + y] = mul_slow(x, y);
  }
}

std::string GaloisRing::describe() const {
  return "W_" + std::to_string(m_) + "(F_" + std::to_string(p_) + (d_ > 1 ? "^" + std::to_string(d_) : "") + ")";
}

Elem GaloisRing::from_int(long long v) const {
  Poly c(d_, 0);
  c[0] = mod(v, pm_);
  return from_coeffs(c);
}

Elem GaloisRing::from_coeffs(const std::vector<std::int64_t>& c) const {
  if (static_cast<int>(c.size()) > d_) throw InvalidArgument("too many coefficients");
  std::uint64_t r = 0;
  for (std::size_t i = c.size(); i-- > 0;) r = r * static_cast<std::uint64_t>(pm_) + static_cast<std::uint64_t>(mod(c[i], pm_));
  return static_cast<Elem>(r);
}

std::vector<std::int64_t> GaloisRing::coeffs(Elem a) const {
  Poly c(d_, 0);
  for (int i = 0; i < d_; ++i) {
    c[i] = static_cast<std::int64_t>(a % pm_);
    a = static_cast<Elem>(a / pm_);
  }
  return c;
}

Elem GaloisRing::generator() const {
  if (d_ == 1) return from_int(-modulus_[0]);
  Poly c(d_, 0);
  c[1] = 1;
  return from_coeffs(c);
}

Elem GaloisRing::add(Elem a, Elem b) const {
  Poly x = coeffs(a);
  const Poly y = coeffs(b);
  for (int i = 0; i < d_; ++i) x[i] = (x[i] + y[i]) % pm_;
  return from_coeffs(x);
}

Elem GaloisRing::neg(Elem a) const {
  Poly x = coeffs(a);
  for (auto& c : x) c = mod(-c, pm_);
  return from_coeffs(x);
}

Elem GaloisRing::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem GaloisRing::mul_slow(Elem a, Elem b) const { return from_coeffs(mulmod(coeffs(a), coeffs(b), modulus_, pm_)); }

Elem GaloisRing::mul(Elem a, Elem b) const {
  if (!mul_table_.empty()) return mul_table_[static_cast<std::size_t>(a) * order_ + b];
  return mul_slow(a, b);
}

Elem GaloisRing::pow(Elem a, std::uint64_t e) const {
  Elem r = one();
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

bool GaloisRing::is_unit(Elem a) const { return residue(a) != 0; }

Elem GaloisRing::inv(Elem a) const {
  if (!is_unit(a)) throw NotInGroup("non-unit in " + describe());
  std::uint64_t units = 1;
  for (int i = 0; i < d_ * (m_ - 1); ++i) units *= static_cast<std::uint64_t>(p_);
  std::uint64_t qd = 1;
  for (int i = 0; i < d_; ++i) qd *= static_cast<std::uint64_t>(p_);
  units *= qd - 1;
  return pow(a, units - 1);
}

Elem GaloisRing::linear(const std::vector<Poly>& images, Elem a) const {
  const Poly c = coeffs(a);
  Poly r(d_, 0);
  for (int i = 0; i < d_; ++i)
    for (int k = 0; k < d_; ++k) r[k] = (r[k] + c[i] * images[i][k]) % pm_;
  return from_coeffs(r);
}

Elem GaloisRing::frobenius(Elem a) const { return linear(frob_, a); }
Elem GaloisRing::frobenius_inv(Elem a) const { return linear(frob_inv_, a); }
Elem GaloisRing::verschiebung(Elem a) const { return mul(from_int(p_), frobenius_inv(a)); }

ff::Elem GaloisRing::residue(Elem a) const {
  const Poly c = coeffs(a);
  ff::Elem r = 0;
  for (int i = d_; i-- > 0;) r = r * static_cast<ff::Elem>(p_) + static_cast<ff::Elem>(c[i] % p_);
  return r;
}

Elem GaloisRing::truncate(Elem a, int k) const {
  if (k < 1 || k > m_) throw InvalidArgument("truncation level out of range");
  std::int64_t pk = 1;
  for (int i = 0; i < k; ++i) pk *= p_;
  const Poly c = coeffs(a);
  std::uint64_t r = 0;
  for (int i = d_; i-- > 0;) r = r * static_cast<std::uint64_t>(pk) + static_cast<std::uint64_t>(c[i] % pk);
  return static_cast<Elem>(r);
}

std::shared_ptr<const GaloisRing> make_ring(int p, int d, int m) { return std::make_shared<const GaloisRing>(p, d, m); }

// ---------------------------------------------------------------------------

RMat RMat::identity(int n) {
  RMat r(n, n);
  for (int i = 0; i < n; ++i) r(i, i) = 1;
  return r;
}

RMat RMat::from_rows(const std::vector<std::vector<Elem>>& rows) {
  RMat r(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int i = 0; i < r.rows; ++i) {
    if (static_cast<int>(rows[i].size()) != r.cols) throw InvalidArgument("ragged matrix rows");
    for (int j = 0; j < r.cols; ++j) r(i, j) = rows[i][j];
  }
  return r;
}

std::vector<std::vector<Elem>> RMat::to_rows() const {
  std::vector<std::vector<Elem>> out(rows, std::vector<Elem>(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out[i][j] = (*this)(i, j);
  return out;
}

RMat mul(const GaloisRing& r, const RMat& x, const RMat& y) {
  if (x.cols != y.rows) throw InvalidArgument("matrix shape mismatch");
  RMat z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < y.cols; ++j) {
      Elem s = 0;
      for (int k = 0; k < x.cols; ++k) s = r.add(s, r.mul(x(i, k), y(k, j)));
      z(i, j) = s;
    }
  return z;
}

RMat add(const GaloisRing& r, const RMat& x, const RMat& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw InvalidArgument("matrix shape mismatch");
  RMat z(x.rows, x.cols);
  for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = r.add(x.a[i], y.a[i]);
  return z;
}

namespace {

RMat map(const RMat& x, const std::function<Elem(Elem)>& f) {
  RMat z(x.rows, x.cols);
  for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = f(x.a[i]);
  return z;
}

}  // namespace

RMat frobenius(const GaloisRing& r, const RMat& x) {
  return map(x, [&](Elem a) { return r.frobenius(a); });
}

RMat frobenius_inv(const GaloisRing& r, const RMat& x) {
  return map(x, [&](Elem a) { return r.frobenius_inv(a); });
}

RMat scale_p(const GaloisRing& r, const RMat& x) {
  const Elem p = r.from_int(r.p());
  return map(x, [&](Elem a) { return r.mul(p, a); });
}

ff::Mat residue(const GaloisRing& r, const RMat& x) {
  ff::Mat z(x.rows, x.cols);
  for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = r.residue(x.a[i]);
  return z;
}

bool is_invertible(const GaloisRing& r, const RMat& x) {
  if (x.rows != x.cols) return false;
  if (x.rows == 0) return true;
  return ff::is_invertible(*ff::get_field(r.p(), r.d()), residue(r, x));
}

RMat inverse(const GaloisRing& r, const RMat& x) {
  if (x.rows != x.cols) throw InvalidArgument("inverse of a non-square matrix");
  const int n = x.rows;
  RMat a = x;
  RMat b = RMat::identity(n);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n && piv < 0; ++i)
      if (r.is_unit(a(i, c))) piv = i;
    if (piv < 0) throw SingularMatrix("matrix over " + r.describe() + " is not invertible");
    for (int j = 0; j < n; ++j) {
      std::swap(a(c, j), a(piv, j));
      std::swap(b(c, j), b(piv, j));
    }
    const Elem s = r.inv(a(c, c));
    for (int j = 0; j < n; ++j) {
      a(c, j) = r.mul(s, a(c, j));
      b(c, j) = r.mul(s, b(c, j));
    }
    for (int i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      const Elem t = a(i, c);
      for (int j = 0; j < n; ++j) {
        a(i, j) = r.sub(a(i, j), r.mul(t, a(c, j)));
        b(i, j) = r.sub(b(i, j), r.mul(t, b(c, j)));
      }
    }
  }
  return b;
}

std::uint64_t key(const GaloisRing& r, const RMat& x) {
  std::uint64_t k = 0;
  for (Elem e : x.a) k = k * r.order() + e;
  return k;
}

// ---------------------------------------------------------------------------

DisplayGroupElement display_identity(std::shared_ptr<const GaloisRing> ring, int n, int d_block) {
  if (d_block < 0 || d_block > n) throw InvalidArgument("d_block must lie in [0, n]");
  DisplayGroupElement x;
  x.ring = std::move(ring);
  x.n = n;
  x.d_block = d_block;
  x.A = RMat::identity(d_block);
  x.B_pre = RMat(d_block, n - d_block);
  x.C = RMat(n - d_block, d_block);
  x.D = RMat::identity(n - d_block);
  return x;
}

RMat assemble(const RMat& A, const RMat& B, const RMat& C, const RMat& D) {
  const int d = A.rows;
  const int n = A.rows + D.rows;
  RMat z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i < d && j < d) z(i, j) = A(i, j);
      else if (i < d) z(i, j) = B(i, j - d);
      else if (j < d) z(i, j) = C(i - d, j);
      else z(i, j) = D(i - d, j - d);
    }
  return z;
}

namespace {

void check_shapes(const DisplayGroupElement& x) {
  const int d = x.d_block;
  const int e = x.n - d;
  if (!x.ring) throw InvalidArgument("display element without ring");
  if (x.A.rows != d || x.A.cols != d || x.B_pre.rows != d || x.B_pre.cols != e || x.C.rows != e ||
      x.C.cols != d || x.D.rows != e || x.D.cols != e)
    throw InvalidArgument("display element block shapes do not match (n, d_block)");
}

RMat checked_invertible(const GaloisRing& r, RMat z, const char* what) {
  if (!is_invertible(r, z)) throw NotInGroup(std::string(what) + " is singular: element not in K_mu");
  return z;
}

}  // namespace

RMat iota(const DisplayGroupElement& x) {
  check_shapes(x);
  const GaloisRing& r = *x.ring;
  return checked_invertible(r, assemble(x.A, scale_p(r, frobenius_inv(r, x.B_pre)), x.C, x.D), "iota(x)");
}

RMat sigma_mu(const DisplayGroupElement& x) {
  check_shapes(x);
  const GaloisRing& r = *x.ring;
  return checked_invertible(
      r, assemble(frobenius(r, x.A), x.B_pre, scale_p(r, frobenius(r, x.C)), frobenius(r, x.D)), "sigma_mu(x)");
}

DisplayGroupElement multiply(const DisplayGroupElement& x, const DisplayGroupElement& y) {
  check_shapes(x);
  check_shapes(y);
  if (x.n != y.n || x.d_block != y.d_block || !(*x.ring == *y.ring))
    throw InvalidArgument("display elements from different groups");
  const GaloisRing& r = *x.ring;
  DisplayGroupElement z = x;
  const RMat vb = scale_p(r, frobenius_inv(r, x.B_pre));
  const RMat vb2 = scale_p(r, frobenius_inv(r, y.B_pre));
  z.A = add(r, mul(r, x.A, y.A), mul(r, vb, y.C));
  z.B_pre = add(r, mul(r, frobenius(r, x.A), y.B_pre), mul(r, x.B_pre, frobenius(r, y.D)));
  z.C = add(r, mul(r, x.C, y.A), mul(r, x.D, y.C));
  z.D = add(r, mul(r, x.C, vb2), mul(r, x.D, y.D));
  return z;
}

RMat display_action(const DisplayGroupElement& x, const RMat& z) {
  const GaloisRing& r = *x.ring;
  if (z.rows != x.n || z.cols != x.n) throw InvalidArgument("display matrix has the wrong size");
  if (!is_invertible(r, z)) throw SingularMatrix("display matrix z is singular");
  return mul(r, mul(r, iota(x), z), inverse(r, sigma_mu(x)));
}

DisplayGroupElement truncate(const DisplayGroupElement& x, std::shared_ptr<const GaloisRing> lower) {
  check_shapes(x);
  const GaloisRing& r = *x.ring;
  if (lower->p() != r.p() || lower->d() != r.d() || lower->m() > r.m())
    throw InvalidArgument("truncation target is not a quotient ring");
  const int k = lower->m();
  auto t = [&](const RMat& a) { return map(a, [&](Elem e) { return r.truncate(e, k); }); };
  DisplayGroupElement y;
  y.ring = std::move(lower);
  y.n = x.n;
  y.d_block = x.d_block;
  y.A = t(x.A);
  y.B_pre = t(x.B_pre);
  y.C = t(x.C);
  y.D = t(x.D);
  return y;
}

namespace {

RMat random_matrix(const GaloisRing& r, int rows, int cols, std::mt19937_64& rng) {
  RMat z(rows, cols);
  for (auto& e : z.a) e = static_cast<Elem>(rng() % r.order());
  return z;
}

RMat random_gl(const GaloisRing& r, int n, std::mt19937_64& rng) {
  while (true) {
    RMat z = random_matrix(r, n, n, rng);
    if (is_invertible(r, z)) return z;
  }
}

// All rows x cols matrices in key order.
std::vector<RMat> all_matrices(const GaloisRing& r, int rows, int cols, std::uint64_t bound, const char* what) {
  const int cells = rows * cols;
  std::uint64_t count = 1;
  for (int i = 0; i < cells; ++i) {
    if (count > bound / r.order()) throw TooLarge(what, bound + 1, bound);
    count *= r.order();
  }
  std::vector<RMat> out;
  out.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    RMat z(rows, cols);
    std::uint64_t v = k;
    for (int i = cells; i-- > 0;) {
      z.a[i] = static_cast<Elem>(v % r.order());
      v /= r.order();
    }
    out.push_back(std::move(z));
  }
  return out;
}

}  // namespace

DisplayGroupElement random_element(std::shared_ptr<const GaloisRing> ring, int n, int d_block, std::mt19937_64& rng) {
  DisplayGroupElement x = display_identity(ring, n, d_block);
  const GaloisRing& r = *ring;
  x.A = random_gl(r, d_block, rng);
  x.B_pre = random_matrix(r, d_block, n - d_block, rng);
  x.C = random_matrix(r, n - d_block, d_block, rng);
  x.D = random_gl(r, n - d_block, rng);
  return x;
}

RMat random_invertible(const GaloisRing& r, int n, std::mt19937_64& rng) { return random_gl(r, n, rng); }

std::vector<DisplayGroupElement> display_group_points(std::shared_ptr<const GaloisRing> ring, int n, int d_block,
                                                      std::uint64_t bound) {
  const GaloisRing& r = *ring;
  const int e = n - d_block;
  DisplayGroupElement id = display_identity(ring, n, d_block);
  // Raw tuple count (order)^(n^2) guards the enumeration.
  {
    std::uint64_t count = 1;
    for (int i = 0; i < n * n; ++i) {
      if (count > bound / r.order()) throw TooLarge("K_mu tuples", bound + 1, bound);
      count *= r.order();
    }
  }
  std::vector<RMat> As, Ds;
  for (auto& a : all_matrices(r, d_block, d_block, bound, "K_mu blocks"))
    if (is_invertible(r, a)) As.push_back(std::move(a));
  for (auto& a : all_matrices(r, e, e, bound, "K_mu blocks"))
    if (is_invertible(r, a)) Ds.push_back(std::move(a));
  const auto Bs = all_matrices(r, d_block, e, bound, "K_mu blocks");
  const auto Cs = all_matrices(r, e, d_block, bound, "K_mu blocks");
  std::vector<DisplayGroupElement> out;
  out.reserve(As.size() * Bs.size() * Cs.size() * Ds.size());
  for (const auto& a : As)
    for (const auto& b : Bs)
      for (const auto& c : Cs)
        for (const auto& d : Ds) {
          DisplayGroupElement x = id;
          x.A = a;
          x.B_pre = b;
          x.C = c;
          x.D = d;
          out.push_back(std::move(x));
        }
  return out;
}

std::vector<RMat> gl_points(const GaloisRing& r, int n, std::uint64_t bound) {
  std::vector<RMat> out;
  for (auto& z : all_matrices(r, n, n, bound, "K_m"))
    if (is_invertible(r, z)) out.push_back(std::move(z));
  return out;
}

std::size_t DisplayCensus::total() const {
  std::size_t t = 0;
  for (const auto& o : orbits) t += o.size();
  return t;
}

int default_d_block(int n) { return std::max(1, n / 2); }

DisplayCensus orbit_census_level(int n, int p, int d, int m, int d_block, std::uint64_t bound) {
  if (n < 1) throw InvalidArgument("n must be positive");
  if (d_block < 0 || d_block > n) throw InvalidArgument("d_block must lie in [0, n]");
  auto ring = make_ring(p, d, m);
  const GaloisRing& r = *ring;
  const auto points = gl_points(r, n, bound);
  const auto group = display_group_points(ring, n, d_block, bound);
  std::vector<RMat> left, right;
  left.reserve(group.size());
  right.reserve(group.size());
  for (const auto& x : group) {
    left.push_back(iota(x));
    right.push_back(inverse(r, sigma_mu(x)));
  }
  DisplayCensus c;
  c.n = n;
  c.p = p;
  c.d = d;
  c.m = m;
  c.d_block = d_block;
  c.acting_order = group.size();
  std::unordered_map<std::uint64_t, std::size_t> seen;
  for (const auto& z : points) {
    if (seen.count(key(r, z))) continue;
    std::unordered_map<std::uint64_t, RMat> orbit;
    std::uint64_t stab = 0;
    for (std::size_t g = 0; g < group.size(); ++g) {
      RMat y = mul(r, mul(r, left[g], z), right[g]);
      if (y == z) ++stab;
      orbit.emplace(key(r, y), std::move(y));
    }
    std::vector<std::pair<std::uint64_t, RMat>> sorted(orbit.begin(), orbit.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    if (sorted.front().second != z) throw InvariantViolation("orbit minimum precedes an unvisited point");
    if (sorted.size() * stab != group.size()) throw InvariantViolation("orbit-stabilizer identity fails");
    std::vector<RMat> members;
    for (auto& [k, y] : sorted) {
      seen.emplace(k, c.orbits.size());
      members.push_back(std::move(y));
    }
    c.orbits.push_back(std::move(members));
    c.stabilizer_orders.push_back(stab);
  }
  if (c.total() != points.size()) throw InvariantViolation("display census does not cover K_m");
  return c;
}

ReductionReport check_reduction(int n, int p, int d, int m, int d_block, std::uint64_t bound) {
  ReductionReport rep;
  rep.n = n;
  rep.p = p;
  rep.d = d;
  rep.m = m;
  rep.d_block = d_block;
  const DisplayCensus high = orbit_census_level(n, p, d, m, d_block, bound);
  const DisplayCensus low = m == 1 ? high : orbit_census_level(n, p, d, 1, d_block, bound);
  rep.orbits_m = high.orbits.size();
  rep.orbits_1 = low.orbits.size();
  auto ring = make_ring(p, d, m);
  auto ring1 = make_ring(p, d, 1);
  std::unordered_map<std::uint64_t, std::size_t> low_index;
  for (std::size_t i = 0; i < low.orbits.size(); ++i)
    for (const auto& z : low.orbits[i]) low_index.emplace(key(*ring1, z), i);
  for (std::size_t i = 0; i < high.orbits.size(); ++i) {
    std::vector<std::size_t> hit;
    for (const auto& z : high.orbits[i]) {
      RMat red(z.rows, z.cols);
      for (std::size_t k = 0; k < z.a.size(); ++k) red.a[k] = ring->truncate(z.a[k], 1);
      const auto it = low_index.find(key(*ring1, red));
      if (it == low_index.end()) {
        rep.violations.push_back("orbit " + std::to_string(i) + " reduces outside K_1");
        break;
      }
      if (std::find(hit.begin(), hit.end(), it->second) == hit.end()) hit.push_back(it->second);
    }
    if (hit.size() > 1)
      rep.violations.push_back("orbit " + std::to_string(i) + " reduces into " + std::to_string(hit.size()) +
                               " level-1 orbits");
  }
  return rep;
}

std::string census_to_json(const DisplayCensus& c) {
  json j;
  j["params"] = {{"n", c.n}, {"p", c.p}, {"d", c.d}, {"m", c.m}, {"d_block", c.d_block}};
  j["acting_order"] = c.acting_order;
  json orbits = json::array();
  bool identity_ok = true;
  for (std::size_t i = 0; i < c.orbits.size(); ++i) {
    if (c.orbits[i].size() * c.stabilizer_orders[i] != c.acting_order) identity_ok = false;
    orbits.push_back({{"size", c.orbits[i].size()},
                      {"stab_order", c.stabilizer_orders[i]},
                      {"rep", c.orbits[i].front().to_rows()}});
  }
  j["orbits"] = orbits;
  j["orbit_count"] = c.orbits.size();
  j["orbit_stabilizer_identity"] = identity_ok;
  return j.dump(2) + "\n";
}

std::string reduction_to_json(const ReductionReport& r) {
  json j;
  j["params"] = {{"n", r.n}, {"p", r.p}, {"d", r.d}, {"m", r.m}, {"d_block", r.d_block}};
  j["orbits_m"] = r.orbits_m;
  j["orbits_1"] = r.orbits_1;
  j["violations"] = r.violations;
  return j.dump(2) + "\n";
}

}  // namespace zipstrata::witt
