#include <cmath>
#include <doctest.h>

#include <random>
#include <set>

#include "zipstrata/errors.hpp"
#include "zipstrata/finite_field.hpp"

using namespace zipstrata;
using namespace zipstrata::ff;

namespace {

// Schoolbook product of coefficient vectors reduced by the monic modulus.
std::vector<int> naive_mul(const std::vector<int>& a, const std::vector<int>& b,
                           const std::vector<int>& f, int p) {
  const int k = static_cast<int>(f.size()) - 1;
  std::vector<int> z(2 * k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) z[i + j] = (z[i + j] + a[i] * b[j]) % p;
  for (int d = 2 * k - 1; d >= k; --d) {
    int c = z[d];
    if (!c) continue;
    for (int i = 0; i <= k; ++i) z[d - k + i] = ((z[d - k + i] - c * f[i]) % p + p) % p;
  }
  z.resize(k);
  return z;
}

}  // namespace

TEST_CASE("irreducible polynomial choice") {
  CHECK(smallest_irreducible(2, 1) == std::vector<int>{0, 1});
  CHECK(smallest_irreducible(2, 2) == std::vector<int>{1, 1, 1});
  CHECK(smallest_irreducible(2, 3) == std::vector<int>{1, 1, 0, 1});
  CHECK(smallest_irreducible(3, 2) == std::vector<int>{1, 0, 1});
  CHECK_THROWS_AS(smallest_irreducible(4, 1), InvalidArgument);
}

TEST_CASE("field arithmetic matches schoolbook polynomial arithmetic") {
  for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 1}, {2, 3}, {3, 1}, {3, 2}, {5, 2}, {2, 4}}) {
    Field f(p, k);
    CHECK(f.order() == static_cast<Elem>(std::pow(p, k)));
    for (Elem a = 0; a < f.order(); ++a) {
      CHECK(f.add(a, f.neg(a)) == 0);
      if (a) CHECK(f.mul(a, f.inv(a)) == 1);
      for (Elem b = 0; b < f.order(); ++b) {
        CHECK(f.coeffs(f.mul(a, b)) == naive_mul(f.coeffs(a), f.coeffs(b), f.modulus(), p));
        auto ca = f.coeffs(a), cb = f.coeffs(b);
        for (int i = 0; i < k; ++i) ca[i] = (ca[i] + cb[i]) % p;
        CHECK(f.add(a, b) == f.from_coeffs(ca));
      }
      // Frobenius is additive and fixes exactly the prime field
      CHECK(f.frob(a, k) == a);
      CHECK(f.in_subfield(a, 1) == (a < static_cast<Elem>(p)));
    }
  }
}

TEST_CASE("large field via log tables") {
  Field f(3, 8);
  CHECK(f.order() == 6561);
  std::mt19937 rng(7);
  for (int t = 0; t < 2000; ++t) {
    Elem a = rng() % f.order(), b = rng() % f.order(), c = rng() % f.order();
    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
    CHECK(f.frob(f.add(a, b), 1) == f.add(f.frob(a, 1), f.frob(b, 1)));
    CHECK(f.coeffs(f.mul(a, b)) == naive_mul(f.coeffs(a), f.coeffs(b), f.modulus(), 3));
  }
  CHECK_THROWS_AS(Field(2, 30), TooLarge);
}

TEST_CASE("subfield embedding is a ring homomorphism onto the fixed field") {
  Field small(2, 2), big(2, 4);
  auto e = embedding(small, big);
  std::set<Elem> image(e.begin(), e.end());
  CHECK(image.size() == 4);
  for (Elem a = 0; a < 4; ++a) {
    CHECK(big.in_subfield(e[a], 2));
    for (Elem b = 0; b < 4; ++b) {
      CHECK(e[small.mul(a, b)] == big.mul(e[a], e[b]));
      CHECK(e[small.add(a, b)] == big.add(e[a], e[b]));
    }
  }
  CHECK_THROWS_AS(embedding(Field(2, 2), Field(2, 3)), InvalidArgument);
}

TEST_CASE("matrix inverse, determinant, kernel") {
  Field f(3, 1);
  Mat a = Mat::from_rows({{1, 2}, {0, 1}});
  CHECK(mul(f, a, inverse(f, a)) == Mat::identity(2));
  CHECK(det(f, a) == 1);
  Mat s = Mat::from_rows({{1, 2}, {2, 1}});  // rank 1 mod 3
  CHECK(rank(f, s) == 1);
  CHECK(det(f, s) == 0);
  CHECK_THROWS_AS(inverse(f, s), SingularMatrix);
  Mat k = kernel(f, s);
  CHECK(k.cols == 1);
  CHECK(mul(f, s, k) == Mat(2, 1));

  // count GL_2(F_3) by determinant: 48
  int count = 0;
  for (std::uint64_t key = 0; key < 81; ++key)
    if (det(f, mat_from_key(f, 2, 2, key)) != 0) ++count;
  CHECK(count == 48);
}

TEST_CASE("column echelon form is canonical for the span") {
  Field f(2, 2);
  Mat x = Mat::from_rows({{1, 2}, {3, 1}, {0, 1}});
  Mat y = mul(f, x, Mat::from_rows({{2, 1}, {1, 1}}));
  CHECK(column_echelon(f, x) == column_echelon(f, y));
  CHECK(span_contains(f, x, columns(y, 0, 1)));
  Mat c = solve_in_span(f, x, y);
  CHECK(mul(f, x, c) == y);
}

TEST_CASE("permutation matrices") {
  auto m = perm_matrix({2, 3, 1});
  CHECK(m(1, 0) == 1);
  CHECK(perm_of_matrix(m) == std::vector<int>{2, 3, 1});
  CHECK_THROWS_AS(perm_of_matrix(Mat::from_rows({{1, 1}, {0, 1}})), InvalidArgument);
}

TEST_CASE("prime-field solution spaces") {
  // x + y + z = 0 over F_2 has a 2-dimensional space
  auto basis = fp_solution_space(2, 3, [](const std::vector<int>& v) {
    return std::vector<int>{(v[0] + v[1] + v[2]) % 2};
  });
  CHECK(basis.size() == 2);
  std::set<std::vector<int>> seen;
  fp_enumerate_span(2, 3, basis, 100, [&](const std::vector<int>& v) {
    CHECK((v[0] + v[1] + v[2]) % 2 == 0);
    seen.insert(v);
    return true;
  });
  CHECK(seen.size() == 4);
  CHECK_THROWS_AS(fp_enumerate_span(2, 3, basis, 3, [](const std::vector<int>&) { return true; }), TooLarge);

  // over F_3 every combination is visited exactly once
  auto b3 = fp_solution_space(3, 2, [](const std::vector<int>&) { return std::vector<int>{0}; });
  std::set<std::vector<int>> s3;
  fp_enumerate_span(3, 2, b3, 100, [&](const std::vector<int>& v) { return s3.insert(v).second; });
  CHECK(s3.size() == 9);
}
