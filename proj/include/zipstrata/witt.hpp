#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "zipstrata/errors.hpp"
#include "zipstrata/finite_field.hpp"

namespace zipstrata::witt {

using Elem = std::uint32_t;

/// W_m(F_{p^d}) as the Galois ring Z/p^m[xi]/(f). The modulus f is the lift of
/// ff::smallest_irreducible(p, d) whose roots are Teichmueller representatives,
/// so xi^(p^d) = xi and the Frobenius is xi -> xi^p.
///
/// An element is the integer sum c_i (p^m)^i of its coefficients 0 <= c_i < p^m.
/// At m = 1 this matches the ff::Field encoding of F_{p^d}.
class GaloisRing {
 public:
  static constexpr std::uint64_t kMaxOrder = 1U << 24;

  GaloisRing(int p, int d, int m);

  int p() const { return p_; }
  int d() const { return d_; }
  int m() const { return m_; }
  /// p^m.
  std::int64_t characteristic() const { return pm_; }
  Elem order() const { return order_; }
  const std::vector<std::int64_t>& modulus() const { return modulus_; }
  std::string describe() const;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long long v) const;
  Elem from_coeffs(const std::vector<std::int64_t>& c) const;
  std::vector<std::int64_t> coeffs(Elem a) const;
  Elem generator() const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem pow(Elem a, std::uint64_t e) const;
  bool is_unit(Elem a) const;
  /// Throws NotInGroup for a non-unit.
  Elem inv(Elem a) const;

  Elem frobenius(Elem a) const;
  Elem frobenius_inv(Elem a) const;
  /// V(a) = p * sigma^{-1}(a).
  Elem verschiebung(Elem a) const;

  /// Image in the residue field, encoded as in ff::Field(p, d).
  ff::Elem residue(Elem a) const;
  /// Reduction W_m -> W_k for k <= m, encoded in the smaller ring.
  Elem truncate(Elem a, int k) const;

  bool operator==(const GaloisRing& o) const { return p_ == o.p_ && d_ == o.d_ && m_ == o.m_; }

 private:
  int p_;
  int d_;
  int m_;
  std::int64_t pm_;
  Elem order_;
  std::vector<std::int64_t> modulus_;  // monic, degree d, coefficients c_0..c_d
  std::vector<std::vector<std::int64_t>> frob_;      // coefficients of sigma(xi^i)
  std::vector<std::vector<std::int64_t>> frob_inv_;  // coefficients of sigma^{-1}(xi^i)
  std::vector<Elem> mul_table_;                      // filled for small rings

  std::vector<std::int64_t> poly_mul(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) const;
  Elem mul_slow(Elem a, Elem b) const;
  Elem linear(const std::vector<std::vector<std::int64_t>>& images, Elem a) const;
};

/// Throws InvalidArgument unless p is prime and d, m >= 1.
std::shared_ptr<const GaloisRing> make_ring(int p, int d, int m);

/// Dense matrix over a GaloisRing.
struct RMat {
  int rows = 0;
  int cols = 0;
  std::vector<Elem> a;

  RMat() = default;
  RMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}
  static RMat identity(int n);
  static RMat from_rows(const std::vector<std::vector<Elem>>& rows);

  Elem& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  Elem operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
  bool operator==(const RMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
  bool operator!=(const RMat& o) const { return !(*this == o); }
  bool operator<(const RMat& o) const { return a < o.a; }
  std::vector<std::vector<Elem>> to_rows() const;
};

RMat mul(const GaloisRing& r, const RMat& x, const RMat& y);
RMat add(const GaloisRing& r, const RMat& x, const RMat& y);
bool is_invertible(const GaloisRing& r, const RMat& x);
/// Throws SingularMatrix.
RMat inverse(const GaloisRing& r, const RMat& x);
RMat frobenius(const GaloisRing& r, const RMat& x);
RMat frobenius_inv(const GaloisRing& r, const RMat& x);
RMat scale_p(const GaloisRing& r, const RMat& x);
/// Entrywise residue, as a matrix over ff::Field(p, d).
ff::Mat residue(const GaloisRing& r, const RMat& x);
std::uint64_t key(const GaloisRing& r, const RMat& x);

/// Element (A, B~, C, D) of K_{mu,m}; the B-block of the display matrix is V(B~).
struct DisplayGroupElement {
  std::shared_ptr<const GaloisRing> ring;
  int n = 0;
  int d_block = 0;
  RMat A;      // d_block x d_block
  RMat B_pre;  // d_block x (n - d_block)
  RMat C;      // (n - d_block) x d_block
  RMat D;      // (n - d_block) x (n - d_block)

  bool operator==(const DisplayGroupElement& o) const {
    return n == o.n && d_block == o.d_block && A == o.A && B_pre == o.B_pre && C == o.C && D == o.D;
  }
};

DisplayGroupElement display_identity(std::shared_ptr<const GaloisRing> ring, int n, int d_block);
/// Block matrix from the four blocks.
RMat assemble(const RMat& A, const RMat& B, const RMat& C, const RMat& D);

/// (A, p sigma^{-1}(B~); C, D). Throws NotInGroup when singular.
RMat iota(const DisplayGroupElement& x);
/// (sigma(A), B~; p sigma(C), sigma(D)). Throws NotInGroup when singular.
RMat sigma_mu(const DisplayGroupElement& x);
/// Product making iota and sigma_mu homomorphisms:
/// (AA' + p sigma^{-1}(B~)C', sigma(A)B~' + B~ sigma(D'); CA' + DC', p C sigma^{-1}(B~') + DD').
DisplayGroupElement multiply(const DisplayGroupElement& x, const DisplayGroupElement& y);
/// iota(x) z sigma_mu(x)^{-1}. Throws SingularZ-style SingularMatrix for singular z.
RMat display_action(const DisplayGroupElement& x, const RMat& z);
/// Reduction to level k <= m.
DisplayGroupElement truncate(const DisplayGroupElement& x, std::shared_ptr<const GaloisRing> lower);

/// Uniform element of K_{mu,m}.
DisplayGroupElement random_element(std::shared_ptr<const GaloisRing> ring, int n, int d_block, std::mt19937_64& rng);
/// Uniform element of GL_n(W_m).
RMat random_invertible(const GaloisRing& r, int n, std::mt19937_64& rng);

/// Every element of K_{mu,m}; throws TooLarge when the raw tuple count exceeds the bound.
std::vector<DisplayGroupElement> display_group_points(std::shared_ptr<const GaloisRing> ring, int n, int d_block,
                                                      std::uint64_t bound = kExhaustionGuard);
/// Every element of K_m = GL_n(W_m); throws TooLarge when (p^{md})^{n^2} exceeds the bound.
std::vector<RMat> gl_points(const GaloisRing& r, int n, std::uint64_t bound = kExhaustionGuard);

struct DisplayCensus {
  int n = 0;
  int p = 0;
  int d = 0;
  int m = 0;
  int d_block = 0;
  std::uint64_t acting_order = 0;
  std::vector<std::vector<RMat>> orbits;  // sorted, minimal element first
  std::vector<std::uint64_t> stabilizer_orders;
  std::size_t total() const;
};

/// Default d_block = max(1, n / 2).
int default_d_block(int n);

/// Orbits of K_{mu,m} on K_m.
DisplayCensus orbit_census_level(int n, int p, int d, int m, int d_block, std::uint64_t bound = kExhaustionGuard);

struct ReductionReport {
  int n = 0;
  int p = 0;
  int d = 0;
  int m = 0;
  int d_block = 0;
  std::size_t orbits_m = 0;
  std::size_t orbits_1 = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Reduction mod p of each level-m orbit must lie in a single level-1 orbit.
ReductionReport check_reduction(int n, int p, int d, int m, int d_block, std::uint64_t bound = kExhaustionGuard);

std::string census_to_json(const DisplayCensus& c);
std::string reduction_to_json(const ReductionReport& r);

}  // namespace zipstrata::witt
