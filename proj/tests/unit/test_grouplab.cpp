#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "zipstrata/errors.hpp"
#include "zipstrata/grouplab.hpp"
#include "zipstrata/zipdatum.hpp"

using namespace zipstrata;
using namespace zipstrata::lab;
using coxeter::ParabolicType;
using coxeter::WeylElement;
using coxeter::WeylGroup;

namespace {

const std::vector<std::vector<int>> kBlockTypes = {{2}, {1, 1}, {3}, {2, 1}, {1, 2}, {1, 1, 1}};

int total(const std::vector<int>& blocks) {
  int n = 0;
  for (int b : blocks) n += b;
  return n;
}

// Upper block parabolic: all entries on or above the block diagonal.
int parabolic_dim(const std::vector<int>& blocks) {
  int d = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = i; j < blocks.size(); ++j) d += blocks[i] * blocks[j];
  return d;
}

std::uint64_t key(const GroupZipDatum& zd, const Mat& m) { return ff::mat_key(*zd.field, m); }

}  // namespace

TEST_CASE("point counts") {
  auto f2 = ff::get_field(2, 1);
  auto f3 = ff::get_field(3, 1);
  CHECK(gl_points(2, *f2).size() == 6);
  CHECK(gl_points(2, *f3).size() == 48);
  CHECK(gl_order(3, 2) == 168);
  CHECK(parabolic_points(2, *f2, {1, 1}, Side::Upper).size() == 2);
  CHECK(parabolic_points(3, *f2, {1, 2}, Side::Lower).size() == 1 * 6 * 4);
  CHECK_THROWS_AS(gl_points(4, *f3), TooLarge);
}

TEST_CASE("zip group points") {
  auto zd = standard_datum({1, 1}, 2, 1, 1);
  auto pts = zip_group_points(zd);
  CHECK(pts.size() == 4);
  CHECK(zip_group_order(zd) == 4);
  bool has_one = false;
  for (const auto& e : pts) {
    CHECK(in_zip_group(zd, e));
    if (e.pp == Mat::identity(2) && e.p == Mat::identity(2)) has_one = true;
  }
  CHECK(has_one);

  for (const auto& blocks : kBlockTypes) {
    auto z = standard_datum(blocks, 2, 1, 1);
    auto g = zip_group_points(z);
    CHECK(g.size() == zip_group_order(z));
    const auto& f = *z.field;
    for (const auto& a : g)
      for (const auto& b : g) CHECK(in_zip_group(z, {ff::mul(f, a.pp, b.pp), ff::mul(f, a.p, b.p)}));
  }
  auto z4 = standard_datum({1, 1}, 2, 1, 2);
  CHECK(zip_group_points(z4).size() == 16 * 9);
}

TEST_CASE("Bruhat cell examples") {
  auto zd = standard_datum({1, 1}, 2, 1, 1);
  CHECK(bruhat_cell(zd, zd.g0).is_identity());
  auto plain = standard_datum({1, 1}, 2, 1, 1, Mat::identity(2));
  WeylGroup a1 = gl_weyl(2);
  CHECK(bruhat_cell(plain, Mat::from_rows({{0, 1}, {1, 0}})) == a1.longest_element());
  CHECK(bruhat_cell(plain, Mat::identity(2)).is_identity());
  auto z3 = standard_datum({1, 1, 1}, 2, 1, 1);
  WeylGroup a2 = gl_weyl(3);
  for (const auto& w : a2.elements()) CHECK(bruhat_cell(z3, standard_representative(z3, w)) == w);
}

TEST_CASE("zip orbit census over F_2: partition, cells, orbit sizes") {
  for (const auto& blocks : kBlockTypes) {
    auto zd = standard_datum(blocks, 2, 1, 1);
    const int n = total(blocks);
    WeylGroup w = gl_weyl(n);
    const ParabolicType I = blocks_to_parabolic(blocks);
    auto census = zip_orbit_census(zd);
    CHECK(census.total() == gl_order(n, 2));
    CHECK(census.acting_order == zip_group_order(zd));
    // Rational orbits refine the geometric ones: at least one per stratum.
    auto reps = w.min_coset_reps(I);
    CHECK(census.orbits.size() >= reps.size());

    std::map<std::uint64_t, std::size_t> orbit_of;
    for (std::size_t o = 0; o < census.orbits.size(); ++o) {
      CHECK(census.orbits[o].size() * census.stabilizer_orders[o] == census.acting_order);
      CHECK(orbit_size(zd, census.orbits[o].front()) == census.orbits[o].size());
      for (const auto& g : census.orbits[o]) orbit_of[key(zd, g)] = o;
    }
    // Standard representatives lie in pairwise distinct orbits, and every orbit
    // meets some g0 w l with l block diagonal.
    std::set<std::size_t> hit;
    for (const auto& r : reps) CHECK(hit.insert(orbit_of.at(key(zd, standard_representative(zd, r)))).second);
    const auto& f = *zd.field;
    for (const auto& orbit : census.orbits) {
      bool meets = false;
      for (const auto& r : reps) {
        const Mat inv = ff::inverse(f, standard_representative(zd, r));
        for (const auto& g : orbit) {
          const Mat l = ff::mul(f, inv, g);
          bool levi = true;
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              if (!zd.in_L(i, j) && l(i, j) != 0) levi = false;
          meets = meets || levi;
        }
      }
      CHECK(meets);
    }

    std::set<std::vector<int>> cells;
    for (const auto& orbit : census.orbits) {
      const auto c = bruhat_cell(zd, orbit.front());
      for (const auto& g : orbit) CHECK(bruhat_cell(zd, g) == c);
      cells.insert(c.window());
    }
    const auto [A, B] = cell_parabolics(zd);
    CHECK(A == I);
    CHECK(cells.size() == w.double_coset_reps(A, B).size());
    for (const auto& c : cells) CHECK(w.is_min_coset_rep(A, WeylElement(w.type(), c)));
  }
}

TEST_CASE("stratum point counts partition G(F) and grow with dim P + length") {
  for (const auto& blocks : kBlockTypes) {
    const int n = total(blocks);
    WeylGroup w = gl_weyl(n);
    const auto reps = w.min_coset_reps(blocks_to_parabolic(blocks));
    for (int s = 1; s <= 5; ++s) {
      auto zd = standard_datum(blocks, 2, 1, s);
      std::uint64_t sum = 0;
      for (const auto& r : reps) sum += stratum_point_count(zd, r);
      CHECK(sum == gl_order(n, zd.field->order()));
    }
    for (const auto& r : reps) {
      auto sizes = stratum_point_counts(blocks, 2, 1, r, 5);
      CHECK(dimension_estimate(sizes, 2) == parabolic_dim(blocks) + r.length());
    }
  }
  // Over F_2 the rational orbits add up to the stratum counts; an orbit's
  // stratum is found by conjugating to a standard representative over F_{2^t}.
  auto zd = standard_datum({2, 1}, 2, 1, 1);
  WeylGroup w3 = gl_weyl(3);
  const auto reps = w3.min_coset_reps(blocks_to_parabolic({2, 1}));
  std::map<std::vector<int>, std::uint64_t> per_stratum;
  for (const auto& orbit : zip_orbit_census(zd).orbits) {
    int found = 0;
    for (int t = 1; t <= 6 && !found; ++t) {
      auto big = standard_datum({2, 1}, 2, 1, t);
      const Mat g = ff::map_entries(orbit.front(), ff::embedding(*zd.field, *big.field));
      for (const auto& r : reps)
        if (!transporter(big, g, standard_representative(big, r), 1ULL << 24, 1).empty()) {
          per_stratum[r.window()] += orbit.size();
          ++found;
        }
    }
    CHECK(found == 1);
  }
  for (const auto& r : reps) CHECK(per_stratum[r.window()] == stratum_point_count(zd, r));
}

TEST_CASE("stabilizers") {
  auto zd = standard_datum({1, 1}, 2, 1, 1);
  auto st = stabilizer(zd, Mat::identity(2));
  for (const auto& e : st) CHECK(zip_act(zd, e, Mat::identity(2)) == Mat::identity(2));
  CHECK(st.size() * orbit_size(zd, Mat::identity(2)) == zip_group_order(zd));
  CHECK(stabilizer(zd, Mat::identity(2)).size() == st.size());

  // Terminal datum: the stabilizer of 1 is GL_n(F_q).
  for (int s = 1; s <= 3; ++s) {
    auto t = terminal_datum(2, 2, 1, s);
    CHECK(stabilizer(t, Mat::identity(2)).size() == 6);
  }
  CHECK(stabilizer(terminal_datum(2, 3, 1, 2), Mat::identity(2)).size() == 48);
}

TEST_CASE("transporter agrees with brute force") {
  auto zd = standard_datum({1, 2}, 2, 1, 1);
  auto pts = zip_group_points(zd);
  auto g = gl_points(3, *zd.field);
  for (std::size_t i = 0; i < g.size(); i += 17)
    for (std::size_t j = 0; j < g.size(); j += 23) {
      std::size_t brute = 0;
      for (const auto& e : pts)
        if (zip_act(zd, e, g[i]) == g[j]) ++brute;
      CHECK(transporter(zd, g[i], g[j]).size() == brute);
    }
}

TEST_CASE("reduction") {
  auto borel = standard_datum({1, 1}, 2, 1, 1);
  auto r = reduce_datum(borel, gl_weyl(2).identity());
  CHECK(is_terminal(r));
  CHECK(r.comp == std::vector<int>{0, 1});

  for (const auto& blocks : kBlockTypes) {
    auto zd = standard_datum(blocks, 2, 1, 1);
    WeylGroup w = gl_weyl(zd.n);
    auto census = zip_orbit_census(zd);
    std::map<std::vector<int>, std::size_t> per_cell;
    for (const auto& orbit : census.orbits) ++per_cell[bruhat_cell(zd, orbit.front()).window()];
    for (const auto& c : w.double_coset_reps(cell_parabolics(zd).first, cell_parabolics(zd).second)) {
      auto trace = reduction_trace(zd, c);
      CHECK(trace.size() <= static_cast<std::size_t>(zd.n) + 1);
      CHECK(is_terminal(trace.back()));
      auto reduced = zip_orbit_census(reduce_datum(zd, c));
      CHECK(reduced.orbits.size() == per_cell[c.window()]);
    }
  }
  auto tr = terminal_datum(2, 2, 1, 1);
  CHECK(reduction_trace(tr, gl_weyl(2).identity()).size() == 1);
}

TEST_CASE("Lang preimages") {
  auto f2 = ff::get_field(2, 1);
  auto one = lang_preimage(*f2, Mat::identity(2), 1, 1);
  REQUIRE(one.found);
  CHECK(one.ext == 1);
  for (const auto& g : gl_points(2, *f2)) {
    auto r = lang_preimage(*f2, g, 1, 3);
    CHECK(r.found);
    CHECK(r.ext <= 3);
  }
  // Identity twist: h^{-1} h = 1 only.
  CHECK_FALSE(lang_preimage(*f2, Mat::from_rows({{1, 1}, {0, 1}}), 0, 3).found);
  // h exists over F_{q^s} exactly when g^s = 1 (up to conjugacy of the Frobenius orbit).
  auto f3 = ff::get_field(3, 1);
  const Mat g4 = Mat::from_rows({{0, 2}, {1, 0}});  // order 4
  CHECK_FALSE(lang_preimage(*f3, g4, 1, 3).found);
  auto r4 = lang_preimage(*f3, g4, 1, 4);
  CHECK(r4.found);
  CHECK(r4.ext == 4);
}

TEST_CASE("dimension estimate") {
  CHECK(dimension_estimate({3, 15, 63}, 2) == 2);
  CHECK_THROWS_AS(dimension_estimate({3, 15}, 2), InvalidArgument);
  CHECK_THROWS_AS(dimension_estimate({1, 2, 64}, 2), InconsistentGrowth);
  CHECK(growth_exponents({1, 4, 16}, 2) == std::vector<int>{2, 2});
}

TEST_CASE("GL_2 conjugation counterexample") {
  auto rep = counterexample_gl2({2, 3, 4, 5});
  REQUIRE(rep.rows.size() == 4);
  for (const auto& row : rep.rows) {
    CHECK(row.orbit_size == row.q * row.q - 1);
    CHECK(row.lambda_constant);
    CHECK(row.identity_in_fiber);
    CHECK(row.identity_outside_orbit);
    CHECK(row.dim_orbit == 2);
    CHECK(row.boundary_codim == 2);
  }
  CHECK(rep.ok());
  CHECK_THROWS_AS(counterexample_gl2({6}), InvalidArgument);
}

TEST_CASE("census JSON") {
  auto zd = standard_datum({1, 1}, 2, 1, 1);
  auto text = census_to_json(zd, zip_orbit_census(zd));
  CHECK(text.find("\"orbits\"") != std::string::npos);
  CHECK(text == census_to_json(zd, zip_orbit_census(zd)));
  CHECK(prime_power(9) == std::pair<int, int>{3, 2});
  CHECK_THROWS_AS(prime_power(12), InvalidArgument);
}

TEST_CASE("Bruhat cells are invariant under P' x P") {
  std::mt19937_64 rng(7);
  for (const auto& blocks : kBlockTypes) {
    auto zd = standard_datum(blocks, 2, 1, 2);
    const int n = zd.n;
    auto g = gl_points(n, *zd.field, 1ULL << 20);
    auto left = parabolic_points(n, *zd.field, blocks, Side::Lower, 1ULL << 20);
    auto right = parabolic_points(n, *zd.field, blocks, Side::Upper, 1ULL << 20);
    const auto& f = *zd.field;
    for (int t = 0; t < 1000; ++t) {
      const Mat& x = g[rng() % g.size()];
      const Mat& a = left[rng() % left.size()];
      const Mat& b = right[rng() % right.size()];
      CHECK(bruhat_cell(zd, ff::mul(f, ff::mul(f, a, x), b)) == bruhat_cell(zd, x));
    }
  }
}

TEST_CASE("stratum dimensions match the combinatorial zip datum") {
  for (const auto& blocks : kBlockTypes) {
    const int n = total(blocks);
    WeylGroup w = gl_weyl(n);
    const ParabolicType I = blocks_to_parabolic(blocks);
    auto z = zip::zip_from_cocharacter(w, I, WeylGroup::identity_automorphism(n - 1), true);
    for (const auto& r : w.min_coset_reps(I))
      CHECK(dimension_estimate(stratum_point_counts(blocks, 2, 1, r, 5), 2) == zip::stratum_dimension(z, r));
  }
}
