#include <doctest.h>

#include <json.hpp>
#include <random>
#include <set>

#include "zipstrata/errors.hpp"
#include "zipstrata/grouplab.hpp"
#include "zipstrata/witt.hpp"

using namespace zipstrata;
using namespace zipstrata::witt;

namespace {

// Every (p, d, m) with p^(md) <= 10^4 over a few primes.
std::vector<std::tuple<int, int, int>> small_rings() {
  std::vector<std::tuple<int, int, int>> out;
  for (int p : {2, 3, 5, 7})
    for (int d = 1; d <= 13; ++d)
      for (int m = 1; m <= 13; ++m) {
        long long size = 1;
        for (int i = 0; i < m * d && size <= 10000; ++i) size *= p;
        if (size <= 10000) out.emplace_back(p, d, m);
      }
  return out;
}

std::set<std::vector<Elem>> as_set(const std::vector<RMat>& orbit) {
  std::set<std::vector<Elem>> s;
  for (const auto& z : orbit) s.insert(z.a);
  return s;
}

}  // namespace

TEST_CASE("make_ring") {
  auto z4 = make_ring(2, 1, 2);
  CHECK(z4->order() == 4);
  CHECK(z4->mul(3, 3) == 1);
  CHECK(make_ring(2, 1, 1)->order() == 2);
  CHECK(make_ring(3, 2, 2)->order() == 81);
  CHECK_THROWS_AS(make_ring(4, 1, 1), InvalidArgument);
  CHECK_THROWS_AS(make_ring(2, 0, 1), InvalidArgument);
  CHECK_THROWS_AS(make_ring(2, 1, 0), InvalidArgument);
  CHECK_THROWS_AS(make_ring(2, 30, 30), TooLarge);
}

TEST_CASE("Galois ring arithmetic and residue map") {
  std::mt19937_64 rng(3);
  for (auto [p, d, m] : small_rings()) {
    CAPTURE(p);
    CAPTURE(d);
    CAPTURE(m);
    auto r = make_ring(p, d, m);
    auto f = ff::get_field(p, d);
    CHECK(r->modulus().back() == 1);
    const Elem xi = r->generator();
    std::uint64_t q = 1;
    for (int i = 0; i < d; ++i) q *= static_cast<std::uint64_t>(p);
    CHECK(r->pow(xi, q) == xi);
    CHECK(r->residue(xi) == (d == 1 ? f->from_int(-f->modulus()[0]) : f->from_coeffs({0, 1})));
    for (int k = 0; k < 200; ++k) {
      const Elem a = static_cast<Elem>(rng() % r->order());
      const Elem b = static_cast<Elem>(rng() % r->order());
      CHECK(r->residue(r->mul(a, b)) == f->mul(r->residue(a), r->residue(b)));
      CHECK(r->residue(r->add(a, b)) == f->add(r->residue(a), r->residue(b)));
      CHECK(r->frobenius(r->mul(a, b)) == r->mul(r->frobenius(a), r->frobenius(b)));
      CHECK(r->frobenius(r->add(a, b)) == r->add(r->frobenius(a), r->frobenius(b)));
      CHECK(r->verschiebung(r->add(a, b)) == r->add(r->verschiebung(a), r->verschiebung(b)));
      CHECK(r->residue(r->frobenius(a)) == f->frob(r->residue(a), 1));
      if (r->is_unit(a)) CHECK(r->mul(a, r->inv(a)) == 1);
      else CHECK_THROWS_AS(r->inv(a), NotInGroup);
    }
  }
}

TEST_CASE("Frobenius and Verschiebung exhaustively") {
  std::size_t rings = 0;
  for (auto [p, d, m] : small_rings()) {
    auto r = make_ring(p, d, m);
    const Elem pe = r->from_int(p);
    bool ok = true;
    for (Elem a = 0; a < r->order(); ++a) {
      ok = ok && r->frobenius(r->verschiebung(a)) == r->mul(pe, a);
      ok = ok && r->verschiebung(r->frobenius(a)) == r->mul(pe, a);
      ok = ok && r->frobenius_inv(r->frobenius(a)) == a;
      Elem s = a;
      for (int i = 0; i < d; ++i) s = r->frobenius(s);
      ok = ok && s == a;
    }
    CHECK(ok);
    ++rings;
  }
  CHECK(rings > 20);

  auto z4 = make_ring(2, 1, 2);
  for (Elem a = 0; a < 4; ++a) CHECK(z4->frobenius(a) == a);
  CHECK(z4->verschiebung(1) == 2);
  CHECK(z4->frobenius(z4->verschiebung(1)) == 2);
  auto r16 = make_ring(2, 2, 2);
  for (Elem a = 0; a < 16; ++a) CHECK(r16->frobenius(r16->frobenius(a)) == a);
  CHECK(r16->frobenius(r16->generator()) != r16->generator());
}

TEST_CASE("truncation and ring matrices") {
  auto r = make_ring(3, 2, 2);
  std::mt19937_64 rng(8);
  for (int k = 0; k < 50; ++k) {
    RMat x = random_invertible(*r, 3, rng);
    RMat y = inverse(*r, x);
    CHECK(mul(*r, x, y) == RMat::identity(3));
    CHECK(mul(*r, y, x) == RMat::identity(3));
  }
  RMat sing(2, 2);
  sing(0, 0) = r->from_int(3);
  sing(1, 1) = 1;
  CHECK_FALSE(is_invertible(*r, sing));
  CHECK_THROWS_AS(inverse(*r, sing), SingularMatrix);
  auto r1 = make_ring(3, 2, 1);
  for (Elem a = 0; a < r->order(); ++a) CHECK(r->truncate(a, 1) == r->residue(a));
  CHECK(r1->order() == 9);
}

TEST_CASE("iota and sigma_mu") {
  for (auto [p, d, m] : std::vector<std::tuple<int, int, int>>{{2, 1, 2}, {3, 1, 2}, {2, 2, 1}, {2, 1, 1}}) {
    auto r = make_ring(p, d, m);
    auto id = display_identity(r, 2, 1);
    CHECK(iota(id) == RMat::identity(2));
    CHECK(sigma_mu(id) == RMat::identity(2));
    std::mt19937_64 rng(p * 100 + m);
    for (int k = 0; k < 200; ++k) {
      auto x = random_element(r, 2, 1, rng);
      auto y = random_element(r, 2, 1, rng);
      auto xy = multiply(x, y);
      CHECK(iota(xy) == mul(*r, iota(x), iota(y)));
      CHECK(sigma_mu(xy) == mul(*r, sigma_mu(x), sigma_mu(y)));
      if (m == 1) CHECK(iota(x)(0, 1) == 0);
      if (m == 1 && d == 1) CHECK(sigma_mu(x) == assemble(x.A, x.B_pre, RMat(1, 1), x.D));
    }
  }

  auto z4 = make_ring(2, 1, 2);
  auto bad = display_identity(z4, 2, 1);
  bad.A(0, 0) = 2;
  CHECK_THROWS_AS(iota(bad), NotInGroup);
  CHECK_THROWS_AS(sigma_mu(bad), NotInGroup);
  auto shape = display_identity(z4, 2, 1);
  shape.A = RMat::identity(2);
  CHECK_THROWS_AS(iota(shape), InvalidArgument);
}

TEST_CASE("homomorphism laws exhaustively on the smallest group") {
  auto z4 = make_ring(2, 1, 2);
  const auto group = display_group_points(z4, 2, 1);
  CHECK(group.size() == 2 * 2 * 4 * 4);
  bool ok = true;
  for (const auto& x : group)
    for (const auto& y : group) {
      const auto xy = multiply(x, y);
      ok = ok && iota(xy) == mul(*z4, iota(x), iota(y));
      ok = ok && sigma_mu(xy) == mul(*z4, sigma_mu(x), sigma_mu(y));
    }
  CHECK(ok);
  // iota forgets the top level of B~; together with sigma_mu it is injective.
  std::set<std::vector<Elem>> iotas;
  std::set<std::pair<std::vector<Elem>, std::vector<Elem>>> pairs;
  for (const auto& x : group) {
    iotas.insert(iota(x).a);
    pairs.insert({iota(x).a, sigma_mu(x).a});
  }
  CHECK(iotas.size() < group.size());
  CHECK(pairs.size() == group.size());
}

TEST_CASE("display action axioms") {
  for (auto [p, d, m] : std::vector<std::tuple<int, int, int>>{{2, 1, 2}, {3, 1, 2}, {2, 2, 2}}) {
    auto r = make_ring(p, d, m);
    std::mt19937_64 rng(17 + p);
    for (int k = 0; k < 200; ++k) {
      auto x = random_element(r, 2, 1, rng);
      auto y = random_element(r, 2, 1, rng);
      RMat z = random_invertible(*r, 2, rng);
      CHECK(display_action(display_identity(r, 2, 1), z) == z);
      CHECK(display_action(x, display_action(y, z)) == display_action(multiply(x, y), z));
    }
  }
  auto z4 = make_ring(2, 1, 2);
  RMat sing(2, 2);
  CHECK_THROWS_AS(display_action(display_identity(z4, 2, 1), sing), SingularMatrix);

  // Orbit of the identity at n = 2, q = 2, level 1.
  auto f2 = make_ring(2, 1, 1);
  std::set<std::vector<Elem>> orbit;
  for (const auto& x : display_group_points(f2, 2, 1)) orbit.insert(display_action(x, RMat::identity(2)).a);
  auto census = orbit_census_level(2, 2, 1, 1, 1);
  bool found = false;
  for (const auto& o : census.orbits)
    if (as_set(o).count(RMat::identity(2).a)) found = as_set(o) == orbit;
  CHECK(found);
}

TEST_CASE("level-1 census equals the zip census partition") {
  struct Case {
    int n, p, d, d_block;
  };
  for (auto c : std::vector<Case>{{2, 2, 1, 1}, {2, 3, 1, 1}, {2, 2, 2, 1}, {3, 2, 1, 1}, {3, 2, 1, 2}}) {
    CAPTURE(c.n);
    CAPTURE(c.p);
    CAPTURE(c.d);
    CAPTURE(c.d_block);
    auto display = orbit_census_level(c.n, c.p, c.d, 1, c.d_block);
    auto zd = lab::standard_datum({c.d_block, c.n - c.d_block}, c.p, 1, c.d);
    auto zip = lab::zip_orbit_census(zd);
    std::set<std::set<std::vector<Elem>>> a, b;
    for (const auto& o : display.orbits) a.insert(as_set(o));
    for (const auto& o : zip.orbits) {
      std::set<std::vector<Elem>> s;
      for (const auto& g : o) s.insert(g.a);
      b.insert(s);
    }
    CHECK(a == b);
    CHECK(display.acting_order == zip.acting_order);
  }
}

TEST_CASE("reduction of level-2 orbits") {
  auto r = check_reduction(2, 2, 1, 2, 1);
  CHECK(r.ok());
  CHECK(r.orbits_m >= r.orbits_1);
  auto r3 = check_reduction(2, 3, 1, 2, 1);
  CHECK(r3.ok());
  auto c = orbit_census_level(2, 2, 1, 2, 1);
  CHECK(c.total() == 96);
  for (std::size_t i = 0; i < c.orbits.size(); ++i) CHECK(c.orbits[i].size() * c.stabilizer_orders[i] == c.acting_order);

  auto j = nlohmann::json::parse(reduction_to_json(r));
  CHECK(j["violations"].empty());
  CHECK(j["orbits_m"] == r.orbits_m);
  CHECK(j["params"]["m"] == 2);
  auto jc = nlohmann::json::parse(census_to_json(c));
  CHECK(jc["orbit_stabilizer_identity"] == true);
  CHECK(jc["orbit_count"] == c.orbits.size());

  CHECK_THROWS_AS(orbit_census_level(4, 5, 1, 3, 2), TooLarge);
  CHECK_THROWS_AS(check_reduction(3, 3, 2, 2, 1), TooLarge);
  CHECK_THROWS_AS(orbit_census_level(2, 2, 1, 2, 3), InvalidArgument);
}
