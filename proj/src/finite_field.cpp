#include "zipstrata/finite_field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "zipstrata/errors.hpp"

namespace zipstrata::ff {

namespace {

using Poly = std::vector<int>;  // low degree first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo b (b nonzero, any leading coefficient) over F_p.
Poly poly_mod(Poly a, const Poly& b, int p) {
  trim(a);
  const int db = static_cast<int>(b.size()) - 1;
  int lead_inv = 1;
  for (int t = 1; t < p; ++t)
    if (b.back() * t % p == 1) lead_inv = t;
  while (static_cast<int>(a.size()) - 1 >= db) {
    const int shift = static_cast<int>(a.size()) - 1 - db;
    const int c = a.back() * lead_inv % p;
    for (int i = 0; i <= db; ++i) a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

Poly poly_from_index(std::uint64_t idx, int p, int deg) {
  Poly c(deg + 1, 0);
  for (int i = 0; i < deg; ++i) {
    c[i] = static_cast<int>(idx % p);
    idx /= p;
  }
  c[deg] = 1;
  return c;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

bool is_irreducible(const Poly& f, int p) {
  const int k = static_cast<int>(f.size()) - 1;
  for (int d = 1; d <= k / 2; ++d) {
    const std::uint64_t count = ipow(p, d);
    for (std::uint64_t idx = 0; idx < count; ++idx)
      if (poly_mod(f, poly_from_index(idx, p, d), p).empty()) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<int> smallest_irreducible(int p, int k) {
  if (!is_prime(p)) throw InvalidArgument("characteristic " + std::to_string(p) + " is not prime");
  if (k < 1) throw InvalidArgument("field degree must be positive");
  const std::uint64_t count = ipow(p, k);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Poly f = poly_from_index(idx, p, k);
    if (k == 1 || (f[0] != 0 && is_irreducible(f, p))) return f;
  }
  throw InvariantViolation("no irreducible polynomial found");
}

Field::Field(int p, int k) : p_(p), k_(k), modulus_(smallest_irreducible(p, k)) {
  std::uint64_t q = 1;
  for (int i = 0; i < k; ++i) {
    q *= static_cast<std::uint64_t>(p);
    if (q > kMaxOrder) throw TooLarge("finite field order", q, kMaxOrder);
  }
  q_ = static_cast<Elem>(q);
  pow_p_.resize(k);
  for (int i = 0; i < k; ++i) pow_p_[i] = static_cast<Elem>(ipow(p, i));

  if (p_ != 2 && q_ <= 1024) {
    add_table_.resize(static_cast<std::size_t>(q_) * q_);
    for (Elem a = 0; a < q_; ++a)
      for (Elem b = 0; b < q_; ++b) {
        Elem r = 0, x = a, y = b;
        for (int i = 0; i < k_; ++i) {
          r += static_cast<Elem>((x % p_ + y % p_) % p_) * pow_p_[i];
          x /= p_;
          y /= p_;
        }
        add_table_[static_cast<std::size_t>(a) * q_ + b] = r;
      }
  }

  // Slow multiplication for table construction.
  auto slow_mul = [&](Elem a, Elem b) {
    Poly x = coeffs(a), y = coeffs(b), z(2 * k_, 0);
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < k_; ++j) z[i + j] = (z[i + j] + x[i] * y[j]) % p_;
    return from_coeffs(poly_mod(z, modulus_, p_));
  };
  auto slow_pow = [&](Elem a, std::uint64_t e) {
    Elem r = 1;
    while (e) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  };

  const std::uint64_t n = q_ - 1;
  Elem gen = 1;
  if (n > 1) {
    const auto primes = prime_factors(n);
    for (Elem c = 2; c < q_; ++c) {
      bool ok = true;
      for (auto r : primes)
        if (slow_pow(c, n / r) == 1) {
          ok = false;
          break;
        }
      if (ok) {
        gen = c;
        break;
      }
    }
  }
  log_.assign(q_, 0);
  exp_.assign(2 * n + 1, 1);
  Elem x = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    exp_[i] = x;
    log_[x] = static_cast<std::uint32_t>(i);
    x = n > 1 ? slow_mul(x, gen) : 1;
  }
  for (std::uint64_t i = n; i < 2 * n + 1; ++i) exp_[i] = exp_[i - n];
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "F_" << q_;
  return os.str();
}

Elem Field::from_int(long long v) const { return static_cast<Elem>(((v % p_) + p_) % p_); }

Elem Field::from_coeffs(const std::vector<int>& c) const {
  if (static_cast<int>(c.size()) > k_) {
    for (std::size_t i = k_; i < c.size(); ++i)
      if (((c[i] % p_) + p_) % p_ != 0) throw InvalidArgument("polynomial degree exceeds field degree");
  }
  Elem r = 0;
  for (int i = 0; i < k_ && i < static_cast<int>(c.size()); ++i)
    r += static_cast<Elem>(((c[i] % p_) + p_) % p_) * pow_p_[i];
  return r;
}

std::vector<int> Field::coeffs(Elem a) const {
  std::vector<int> c(k_, 0);
  for (int i = 0; i < k_; ++i) {
    c[i] = static_cast<int>(a % p_);
    a /= p_;
  }
  return c;
}

Elem Field::add(Elem a, Elem b) const {
  if (p_ == 2) return a ^ b;
  if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
  Elem r = 0;
  for (int i = 0; i < k_; ++i) {
    r += static_cast<Elem>((a % p_ + b % p_) % p_) * pow_p_[i];
    a /= p_;
    b /= p_;
  }
  return r;
}

Elem Field::neg(Elem a) const {
  if (p_ == 2) return a;
  Elem r = 0;
  for (int i = 0; i < k_; ++i) {
    r += static_cast<Elem>((p_ - static_cast<int>(a % p_)) % p_) * pow_p_[i];
    a /= p_;
  }
  return r;
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::inv(Elem a) const {
  if (a == 0) throw SingularMatrix("inverse of zero in " + describe());
  const std::uint32_t n = q_ - 1;
  return exp_[(n - log_[a]) % n];
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t n = q_ - 1;
  return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % n)) % n];
}

Elem Field::frob(Elem a, int e) const {
  if (a == 0) return 0;
  const std::uint64_t n = q_ - 1;
  std::uint64_t m = 1;
  for (int i = 0; i < e; ++i) m = (m * p_) % n;
  if (n == 1) return 1;
  return exp_[(static_cast<std::uint64_t>(log_[a]) * m) % n];
}

bool Field::in_subfield(Elem a, int sub) const { return frob(a, sub) == a; }

std::shared_ptr<const Field> get_field(int p, int k) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const Field>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({p, k});
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<const Field>(p, k);
  cache.emplace(std::make_pair(p, k), f);
  return f;
}

std::vector<Elem> embedding(const Field& small, const Field& big) {
  if (small.p() != big.p() || big.degree() % small.degree() != 0)
    throw InvalidArgument(small.describe() + " does not embed in " + big.describe());
  const auto& f = small.modulus();
  Elem root = 0;
  bool found = false;
  for (Elem b = 0; b < big.order() && !found; ++b) {
    Elem v = 0;
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) v = big.add(big.mul(v, b), big.from_int(f[i]));
    if (v == 0) {
      root = b;
      found = true;
    }
  }
  if (!found) throw InvariantViolation("no root of the subfield modulus");
  std::vector<Elem> table(small.order());
  for (Elem a = 0; a < small.order(); ++a) {
    auto c = small.coeffs(a);
    Elem v = 0;
    for (int i = small.degree() - 1; i >= 0; --i) v = big.add(big.mul(v, root), big.from_int(c[i]));
    table[a] = v;
  }
  return table;
}

// ---------------------------------------------------------------------------

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::from_rows(const std::vector<std::vector<Elem>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r ? static_cast<int>(rows[0].size()) : 0;
  Mat m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw InvalidArgument("ragged matrix rows");
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<std::vector<Elem>> Mat::to_rows() const {
  std::vector<std::vector<Elem>> out(rows, std::vector<Elem>(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out[i][j] = (*this)(i, j);
  return out;
}

std::size_t MatHash::operator()(const Mat& m) const {
  std::size_t h = static_cast<std::size_t>(m.rows) * 31 + m.cols;
  for (Elem e : m.a) h = h * 1000003u ^ e;
  return h;
}

Mat mul(const Field& f, const Mat& x, const Mat& y) {
  if (x.cols != y.rows) throw InvalidArgument("matrix shape mismatch in product");
  Mat z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const Elem a = x(i, k);
      if (a == 0) continue;
      for (int j = 0; j < y.cols; ++j) z(i, j) = f.add(z(i, j), f.mul(a, y(k, j)));
    }
  return z;
}

Mat add(const Field& f, const Mat& x, const Mat& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw InvalidArgument("matrix shape mismatch in sum");
  Mat z(x.rows, x.cols);
  for (std::size_t i = 0; i < x.a.size(); ++i) z.a[i] = f.add(x.a[i], y.a[i]);
  return z;
}

Mat sub(const Field& f, const Mat& x, const Mat& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw InvalidArgument("matrix shape mismatch in difference");
  Mat z(x.rows, x.cols);
  for (std::size_t i = 0; i < x.a.size(); ++i) z.a[i] = f.sub(x.a[i], y.a[i]);
  return z;
}

Mat scale(const Field& f, Elem c, const Mat& x) {
  Mat z = x;
  for (auto& e : z.a) e = f.mul(c, e);
  return z;
}

Mat transpose(const Mat& x) {
  Mat z(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) z(j, i) = x(i, j);
  return z;
}

Mat frob(const Field& f, const Mat& x, int e) {
  Mat z = x;
  for (auto& v : z.a) v = f.frob(v, e);
  return z;
}

Mat map_entries(const Mat& x, const std::vector<Elem>& table) {
  Mat z = x;
  for (auto& v : z.a) v = table.at(v);
  return z;
}

namespace {

// In-place row reduction to reduced row echelon form; returns pivot columns.
std::vector<int> rref(const Field& f, Mat& m, Elem* det_out = nullptr) {
  std::vector<int> pivots;
  Elem det = 1;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int sel = -1;
    for (int i = row; i < m.rows; ++i)
      if (m(i, col) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) {
      det = 0;
      continue;
    }
    if (sel != row) {
      for (int j = 0; j < m.cols; ++j) std::swap(m(sel, j), m(row, j));
      det = f.neg(det);
    }
    const Elem piv = m(row, col);
    det = f.mul(det, piv);
    const Elem pinv = f.inv(piv);
    for (int j = 0; j < m.cols; ++j) m(row, j) = f.mul(m(row, j), pinv);
    for (int i = 0; i < m.rows; ++i) {
      if (i == row || m(i, col) == 0) continue;
      const Elem c = m(i, col);
      for (int j = 0; j < m.cols; ++j) m(i, j) = f.sub(m(i, j), f.mul(c, m(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  if (det_out) *det_out = (row == m.rows && m.rows == m.cols) ? det : 0;
  return pivots;
}

}  // namespace

Elem det(const Field& f, const Mat& x) {
  if (!x.is_square()) throw InvalidArgument("determinant of a non-square matrix");
  Mat m = x;
  Elem d = 0;
  rref(f, m, &d);
  return d;
}

int rank(const Field& f, const Mat& x) {
  Mat m = x;
  return static_cast<int>(rref(f, m).size());
}

bool is_invertible(const Field& f, const Mat& x) { return x.is_square() && rank(f, x) == x.rows; }

Mat inverse(const Field& f, const Mat& x) {
  if (!x.is_square()) throw SingularMatrix("inverse of a non-square matrix");
  const int n = x.rows;
  Mat aug = hconcat(x, Mat::identity(n));
  auto piv = rref(f, aug);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) throw SingularMatrix("matrix is singular");
  return columns(aug, n, n);
}

Mat column_echelon(const Field& f, const Mat& x) {
  Mat t = transpose(x);
  auto piv = rref(f, t);
  Mat out(x.rows, static_cast<int>(piv.size()));
  for (int j = 0; j < out.cols; ++j)
    for (int i = 0; i < x.rows; ++i) out(i, j) = t(j, i);
  return out;
}

Mat kernel(const Field& f, const Mat& x) {
  Mat m = x;
  auto piv = rref(f, m);
  std::vector<int> is_piv(x.cols, -1);
  for (std::size_t r = 0; r < piv.size(); ++r) is_piv[piv[r]] = static_cast<int>(r);
  std::vector<int> free;
  for (int j = 0; j < x.cols; ++j)
    if (is_piv[j] < 0) free.push_back(j);
  Mat out(x.cols, static_cast<int>(free.size()));
  for (std::size_t t = 0; t < free.size(); ++t) {
    const int fj = free[t];
    out(fj, static_cast<int>(t)) = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) out(piv[r], static_cast<int>(t)) = f.neg(m(static_cast<int>(r), fj));
  }
  return out;
}

Mat hconcat(const Mat& x, const Mat& y) {
  if (x.rows != y.rows) throw InvalidArgument("row count mismatch in concatenation");
  Mat z(x.rows, x.cols + y.cols);
  for (int i = 0; i < x.rows; ++i) {
    for (int j = 0; j < x.cols; ++j) z(i, j) = x(i, j);
    for (int j = 0; j < y.cols; ++j) z(i, x.cols + j) = y(i, j);
  }
  return z;
}

Mat columns(const Mat& x, int from, int count) {
  Mat z(x.rows, count);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < count; ++j) z(i, j) = x(i, from + j);
  return z;
}

Mat kron(const Field& f, const Mat& x, const Mat& y) {
  Mat z(x.rows * y.rows, x.cols * y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j)
      for (int k = 0; k < y.rows; ++k)
        for (int l = 0; l < y.cols; ++l) z(i * y.rows + k, j * y.cols + l) = f.mul(x(i, j), y(k, l));
  return z;
}

bool span_contains(const Field& f, const Mat& x, const Mat& y) {
  if (y.cols == 0) return true;
  return rank(f, hconcat(x, y)) == rank(f, x);
}

Mat solve_in_span(const Field& f, const Mat& x, const Mat& y) {
  Mat aug = hconcat(x, y);
  auto piv = rref(f, aug);
  for (std::size_t r = 0; r < piv.size(); ++r)
    if (piv[r] >= x.cols) throw InvariantViolation("vector outside the column span");
  if (static_cast<int>(piv.size()) != x.cols) throw InvariantViolation("spanning columns are dependent");
  Mat c(x.cols, y.cols);
  for (int r = 0; r < x.cols; ++r)
    for (int j = 0; j < y.cols; ++j) c(r, j) = aug(r, x.cols + j);
  return c;
}

Mat perm_matrix(const std::vector<int>& window) {
  const int n = static_cast<int>(window.size());
  Mat m(n, n);
  for (int i = 0; i < n; ++i) {
    const int v = window[i];
    if (v < 1 || v > n) throw InvalidArgument("permutation window out of range");
    m(v - 1, i) = 1;
  }
  return m;
}

std::vector<int> perm_of_matrix(const Mat& m) {
  if (!m.is_square()) throw InvalidArgument("not a permutation matrix");
  std::vector<int> w(m.cols, 0);
  std::vector<bool> used(m.rows, false);
  for (int j = 0; j < m.cols; ++j)
    for (int i = 0; i < m.rows; ++i) {
      if (m(i, j) == 0) continue;
      if (m(i, j) != 1 || w[j] != 0 || used[i]) throw InvalidArgument("not a permutation matrix");
      w[j] = i + 1;
      used[i] = true;
    }
  for (int v : w)
    if (v == 0) throw InvalidArgument("not a permutation matrix");
  return w;
}

bool key_fits(const Field& f, int rows, int cols) {
  long double bound = 1;
  for (int i = 0; i < rows * cols; ++i) bound *= f.order();
  return bound < 18446744073709551615.0L;
}

std::uint64_t mat_key(const Field& f, const Mat& x) {
  std::uint64_t k = 0;
  for (auto it = x.a.rbegin(); it != x.a.rend(); ++it) k = k * f.order() + *it;
  return k;
}

Mat mat_from_key(const Field& f, int rows, int cols, std::uint64_t key) {
  Mat m(rows, cols);
  for (auto& e : m.a) {
    e = static_cast<Elem>(key % f.order());
    key /= f.order();
  }
  return m;
}

std::string to_string(const Mat& m) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < m.rows; ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < m.cols; ++j) os << (j ? "," : "") << m(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------

std::vector<std::vector<int>> fp_kernel(int p, std::vector<std::vector<int>> a, int cols) {
  auto inv = [p](int v) {
    for (int t = 1; t < p; ++t)
      if (v * t % p == 1) return t;
    return 0;
  };
  const int rows = static_cast<int>(a.size());
  std::vector<int> piv_col;
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int sel = -1;
    for (int i = row; i < rows; ++i)
      if (a[i][col] % p != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(a[sel], a[row]);
    const int c = inv(a[row][col]);
    for (int j = 0; j < cols; ++j) a[row][j] = a[row][j] * c % p;
    for (int i = 0; i < rows; ++i) {
      if (i == row || a[i][col] == 0) continue;
      const int t = a[i][col];
      for (int j = 0; j < cols; ++j) a[i][j] = ((a[i][j] - t * a[row][j]) % p + p) % p;
    }
    piv_col.push_back(col);
    ++row;
  }
  std::vector<int> where(cols, -1);
  for (std::size_t r = 0; r < piv_col.size(); ++r) where[piv_col[r]] = static_cast<int>(r);
  std::vector<std::vector<int>> basis;
  for (int j = 0; j < cols; ++j) {
    if (where[j] >= 0) continue;
    std::vector<int> v(cols, 0);
    v[j] = 1;
    for (std::size_t r = 0; r < piv_col.size(); ++r) v[piv_col[r]] = (p - a[r][j]) % p;
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::vector<int>> fp_solution_space(
    int p, int nvars, const std::function<std::vector<int>(const std::vector<int>&)>& eval) {
  std::vector<std::vector<int>> columns_out;
  std::vector<int> e(nvars, 0);
  for (int j = 0; j < nvars; ++j) {
    e[j] = 1;
    columns_out.push_back(eval(e));
    e[j] = 0;
  }
  const int m = nvars ? static_cast<int>(columns_out[0].size()) : 0;
  std::vector<std::vector<int>> a(m, std::vector<int>(nvars, 0));
  for (int j = 0; j < nvars; ++j)
    for (int i = 0; i < m; ++i) a[i][j] = ((columns_out[j][i] % p) + p) % p;
  return fp_kernel(p, std::move(a), nvars);
}

void fp_enumerate_span(int p, int nvars, const std::vector<std::vector<int>>& basis,
                       std::uint64_t bound,
                       const std::function<bool(const std::vector<int>&)>& visit) {
  const int dim = static_cast<int>(basis.size());
  std::uint64_t total = 1;
  for (int i = 0; i < dim; ++i) {
    total *= static_cast<std::uint64_t>(p);
    if (total > bound) throw TooLarge("solution space enumeration", total, bound);
  }
  std::vector<int> digits(dim, 0), v(nvars, 0);
  for (std::uint64_t it = 0; it < total; ++it) {
    if (!visit(v)) return;
    // odometer step: every touched digit adds its basis vector once
    for (int j = 0; j < dim; ++j) {
      for (int t = 0; t < nvars; ++t) v[t] = (v[t] + basis[j][t]) % p;
      if (++digits[j] < p) break;
      digits[j] = 0;
    }
  }
}

}  // namespace zipstrata::ff
