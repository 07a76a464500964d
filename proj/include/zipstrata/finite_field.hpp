#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace zipstrata::ff {

using Elem = std::uint32_t;

bool is_prime(int p);

/// Lexicographically smallest monic irreducible of degree k over F_p.
/// Coefficients c_0..c_k (c_k = 1); polynomials are compared as the integer
/// sum c_i p^i, so the higher coefficients are the more significant ones.
std::vector<int> smallest_irreducible(int p, int k);

/// F_{p^k} = F_p[t]/(f) with f from smallest_irreducible. An element is the
/// integer whose base-p digits are its coefficients (digit i = coefficient of t^i).
class Field {
 public:
  static constexpr std::uint32_t kMaxOrder = 1U << 22;

  Field(int p, int k);

  int p() const { return p_; }
  int degree() const { return k_; }
  Elem order() const { return q_; }
  const std::vector<int>& modulus() const { return modulus_; }
  std::string describe() const;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long long v) const;
  Elem from_coeffs(const std::vector<int>& c) const;
  std::vector<int> coeffs(Elem a) const;
  /// Primitive element used for the log tables.
  Elem generator() const { return exp_[1]; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t e) const;
  /// a^(p^e).
  Elem frob(Elem a, int e) const;
  /// True if a lies in the subfield F_{p^sub}.
  bool in_subfield(Elem a, int sub) const;

  bool operator==(const Field& o) const { return p_ == o.p_ && k_ == o.k_; }
  bool operator!=(const Field& o) const { return !(*this == o); }

 private:
  int p_;
  int k_;
  Elem q_;
  std::vector<int> modulus_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;
  std::vector<Elem> add_table_;
  std::vector<Elem> pow_p_;  // p^i for i < k
};

/// Shared instance per (p, k).
std::shared_ptr<const Field> get_field(int p, int k);

/// Field embedding F_{p^a} -> F_{p^k} (a | k): image table indexed by the small
/// field's elements. The generator goes to the smallest root of the small modulus.
std::vector<Elem> embedding(const Field& small, const Field& big);

// ---------------------------------------------------------------------------
// Dense matrices over a Field.

struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<Elem> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

  static Mat identity(int n);
  /// Rows of field elements.
  static Mat from_rows(const std::vector<std::vector<Elem>>& rows);

  Elem& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  Elem operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
  bool is_square() const { return rows == cols; }
  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
  bool operator!=(const Mat& o) const { return !(*this == o); }
  bool operator<(const Mat& o) const { return a < o.a; }
  std::vector<std::vector<Elem>> to_rows() const;
};

struct MatHash {
  std::size_t operator()(const Mat& m) const;
};

Mat mul(const Field& f, const Mat& x, const Mat& y);
Mat add(const Field& f, const Mat& x, const Mat& y);
Mat sub(const Field& f, const Mat& x, const Mat& y);
Mat scale(const Field& f, Elem c, const Mat& x);
Mat transpose(const Mat& x);
/// Entrywise a -> a^(p^e).
Mat frob(const Field& f, const Mat& x, int e);
Mat map_entries(const Mat& x, const std::vector<Elem>& table);
Elem det(const Field& f, const Mat& x);
int rank(const Field& f, const Mat& x);
bool is_invertible(const Field& f, const Mat& x);
/// Throws SingularMatrix.
Mat inverse(const Field& f, const Mat& x);
/// Reduced column echelon form with zero columns dropped: a canonical basis
/// of the column span.
Mat column_echelon(const Field& f, const Mat& x);
/// Basis of the right null space, as columns.
Mat kernel(const Field& f, const Mat& x);
Mat hconcat(const Mat& x, const Mat& y);
Mat columns(const Mat& x, int from, int count);
Mat kron(const Field& f, const Mat& x, const Mat& y);
/// Column span of y contained in column span of x.
bool span_contains(const Field& f, const Mat& x, const Mat& y);
/// Coordinates c (as a matrix) with x * c = y; x must have independent columns.
Mat solve_in_span(const Field& f, const Mat& x, const Mat& y);

/// Permutation matrix of a permutation given as a 1-based window: entry
/// (w(i), i) is 1.
Mat perm_matrix(const std::vector<int>& window);
/// Inverse operation; throws InvalidArgument when m is not a permutation matrix.
std::vector<int> perm_of_matrix(const Mat& m);

/// Integer key for hashing; requires q^(rows*cols) < 2^64.
std::uint64_t mat_key(const Field& f, const Mat& x);
Mat mat_from_key(const Field& f, int rows, int cols, std::uint64_t key);
bool key_fits(const Field& f, int rows, int cols);

std::string to_string(const Mat& m);

// ---------------------------------------------------------------------------
// Linear algebra over the prime field, used for solution spaces of F_p-linear
// matrix equations (Frobenius twists are F_p-linear).

/// Null space basis over F_p of the map given by its matrix (rows x cols).
std::vector<std::vector<int>> fp_kernel(int p, std::vector<std::vector<int>> matrix, int cols);

/// Solution space of an F_p-linear map F_p^nvars -> F_p^m given as a callback
/// evaluated on basis vectors.
std::vector<std::vector<int>> fp_solution_space(
    int p, int nvars, const std::function<std::vector<int>(const std::vector<int>&)>& eval);

/// Calls visit on every F_p-combination of the basis until it returns false;
/// throws TooLarge when p^dim exceeds the bound.
void fp_enumerate_span(int p, int nvars, const std::vector<std::vector<int>>& basis,
                       std::uint64_t bound,
                       const std::function<bool(const std::vector<int>&)>& visit);

}  // namespace zipstrata::ff
