#include <doctest.h>

#include "zipstrata/errors.hpp"
#include "zipstrata/zipdatum.hpp"

using namespace zipstrata;
using namespace zipstrata::zip;
using coxeter::Family;

namespace {

std::vector<ParabolicType> all_parabolics(int rank) {
  std::vector<ParabolicType> out;
  for (int mask = 0; mask < (1 << rank); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < rank; ++i)
      if (mask & (1 << i)) idx.push_back(i + 1);
    out.emplace_back(idx);
  }
  return out;
}

std::vector<WeylGroup> desk_groups() {
  std::vector<WeylGroup> out;
  for (int r = 1; r <= 4; ++r) {
    out.emplace_back(Family::A, r);
    out.emplace_back(Family::B, r);
    out.emplace_back(Family::C, r);
    if (r >= 2) out.emplace_back(Family::D, r);
  }
  return out;
}

}  // namespace

TEST_CASE("build_zip examples") {
  WeylGroup a1(Family::A, 1);
  auto id1 = WeylGroup::identity_automorphism(1);
  CHECK(build_zip(a1, ParabolicType(), ParabolicType(), id1).theta0 == a1.simple(1));
  CHECK(build_zip(a1, ParabolicType({1}), ParabolicType({1}), id1).theta0.is_identity());

  WeylGroup a2(Family::A, 2);
  auto id2 = WeylGroup::identity_automorphism(2);
  CHECK_THROWS_AS(build_zip(a2, ParabolicType({1}), ParabolicType({1}), id2), PsiMismatch);
  auto z = build_zip(a2, ParabolicType({1}), ParabolicType({2}), id2);
  CHECK(z.psi(a2.simple(1)) == a2.simple(2));
  CHECK(z.theta0 ==
        a2.min_double_coset_rep_exhaustive(ParabolicType({2}), a2.longest_element(), ParabolicType({1})));
  CHECK_THROWS_AS(build_zip(a2, ParabolicType(), ParabolicType(), {1, 1}), InvalidArgument);
}

TEST_CASE("theta0 agrees with the exhaustive double coset scan") {
  for (const auto& g : desk_groups())
    for (const auto& delta : g.diagram_automorphisms())
      for (const auto& I : all_parabolics(g.rank())) {
        auto z = zip_from_cocharacter(g, I, delta);
        CHECK(z.theta0 == g.min_double_coset_rep_exhaustive(z.J, g.longest_element(),
                                                            g.apply_diagram_automorphism(delta, I)));
        // theta0 = w_{0,J} w0
        CHECK(z.theta0 == g.longest_element(z.J) * g.longest_element());
      }
}

TEST_CASE("zip_from_cocharacter derives J") {
  WeylGroup a1(Family::A, 1);
  CHECK(zip_from_cocharacter(a1, ParabolicType({1}), {1}).J == ParabolicType({1}));
  WeylGroup a3(Family::A, 3);
  auto id = WeylGroup::identity_automorphism(3);
  CHECK(zip_from_cocharacter(a3, ParabolicType({1}), id).J == ParabolicType({3}));
  CHECK(zip_from_cocharacter(a3, ParabolicType(), id).J.empty());
  CHECK(zip_from_cocharacter(a3, ParabolicType({1}), {3, 2, 1}).J == ParabolicType({1}));
}

TEST_CASE("twisted order examples") {
  WeylGroup a1(Family::A, 1);
  auto z = zip_from_cocharacter(a1, ParabolicType(), {1});
  auto e = a1.identity(), s = a1.simple(1);
  CHECK(twisted_leq(z, e, s));
  CHECK_FALSE(twisted_leq(z, s, e));
  CHECK(twisted_leq(z, s, s));

  WeylGroup a2(Family::A, 2);
  auto z2 = zip_from_cocharacter(a2, ParabolicType({1}), {1, 2});
  CHECK_THROWS_AS(twisted_leq(z2, a2.simple(1), a2.identity()), InvalidArgument);
}

TEST_CASE("stratum posets: sizes, order axioms, relation against twisted_leq") {
  for (const auto& g : desk_groups())
    for (const auto& delta : g.diagram_automorphisms())
      for (const auto& I : all_parabolics(g.rank())) {
        auto z = zip_from_cocharacter(g, I, delta);
        auto p = stratum_poset(z);
        REQUIRE(p.has_relation);
        CHECK(p.size() * g.parabolic_order(I) == g.order());
        auto rep = check_partial_order(p);
        CHECK(rep.reflexive);
        CHECK(rep.antisymmetric);
        CHECK(rep.transitive);
        CHECK(rep.refines_length);
        CHECK(rep.unique_min);
        CHECK(rep.unique_max);
        CHECK(p.dims.back() - p.dims.front() ==
              g.longest_element().length() - g.longest_element(I).length());
        if (g.order() <= 48)
          for (std::size_t a = 0; a < p.size(); ++a)
            for (std::size_t b = 0; b < p.size(); ++b)
              CHECK(static_cast<bool>(p.leq[a][b]) == twisted_leq(z, p.carrier[a], p.carrier[b]));
      }
}

TEST_CASE("with I empty the twisted order is the Bruhat order") {
  for (const auto& g : desk_groups()) {
    auto p = stratum_poset(zip_from_cocharacter(g, ParabolicType(), WeylGroup::identity_automorphism(g.rank())));
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t b = 0; b < p.size(); ++b)
        CHECK(static_cast<bool>(p.leq[a][b]) == g.bruhat_leq(p.carrier[a], p.carrier[b]));
  }
}

TEST_CASE("poset examples") {
  WeylGroup a1(Family::A, 1);
  auto p1 = stratum_poset(zip_from_cocharacter(a1, ParabolicType(), {1}));
  CHECK(p1.size() == 2);
  CHECK(p1.covers.size() == 1);

  WeylGroup a2(Family::A, 2);
  auto z2 = zip_from_cocharacter(a2, ParabolicType(), {1, 2});
  auto p2 = stratum_poset(z2);
  CHECK(p2.size() == 6);
  auto bm = boundary_maximal(p2, a2.longest_element());
  CHECK(bm.size() == 2);
  for (const auto& w : bm) CHECK(w.length() == 2);
  CHECK(closure(p2, a2.identity()).size() == 1);
  CHECK(closure(p2, a2.longest_element()).size() == 6);

  WeylGroup a3(Family::A, 3);
  CHECK(stratum_poset(zip_from_cocharacter(a3, ParabolicType({1, 2}), {1, 2, 3})).size() == 4);
}

TEST_CASE("stratum dimensions with the GL convention") {
  WeylGroup a1(Family::A, 1);
  auto z = zip_from_cocharacter(a1, ParabolicType(), {1}, true);
  CHECK(stratum_dimension(z, a1.identity()) == 3);
  CHECK(stratum_dimension(z, a1.simple(1)) == 4);
  CHECK(group_dimension(z) == 4);
  auto za = zip_from_cocharacter(a1, ParabolicType(), {1}, false);
  CHECK(stratum_dimension(za, a1.simple(1)) == 3);
}

TEST_CASE("purity holds on desk-scale data and fails on a corrupted poset") {
  WeylGroup a1(Family::A, 1);
  CHECK(purity_check(zip_from_cocharacter(a1, ParabolicType(), {1})).pass);

  for (const auto& g : desk_groups())
    for (const auto& delta : g.diagram_automorphisms())
      for (const auto& I : all_parabolics(g.rank())) {
        auto r = purity_check(zip_from_cocharacter(g, I, delta));
        CHECK(r.pass);
        CHECK(r.violations.empty());
      }

  WeylGroup a2(Family::A, 2);
  auto p = stratum_poset(zip_from_cocharacter(a2, ParabolicType(), {1, 2}));
  const std::size_t n = p.size();
  for (auto& row : p.leq) std::fill(row.begin(), row.end(), 0);
  for (std::size_t a = 0; a < n; ++a) p.leq[a][a] = 1;
  p.leq[0][n - 1] = 1;
  compute_covers(p);
  auto bad = purity_check(p);
  CHECK_FALSE(bad.pass);
  REQUIRE(bad.violations.size() == 1);
  CHECK(bad.violations[0].length_drop == 3);
}

TEST_CASE("Galois quotients") {
  WeylGroup a3(Family::A, 3);
  auto z = zip_from_cocharacter(a3, ParabolicType(), {1, 2, 3});
  auto p = stratum_poset(z);
  auto trivial = galois_quotient(p, [](const WeylElement& w) { return w; });
  CHECK(trivial.orbits.size() == p.size());
  CHECK(trivial.induced_leq == p.leq);

  auto q = galois_quotient(p, diagram_action(z, {3, 2, 1}));
  for (const auto& o : q.orbits) CHECK(o.size() <= 2);
  CHECK(q.orbits.size() < p.size());
  CHECK(q.antisymmetric);
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = 0; b < p.size(); ++b)
      if (p.leq[a][b]) CHECK(q.induced_leq[q.orbit_of[a]][q.orbit_of[b]]);

  auto zi = zip_from_cocharacter(a3, ParabolicType({1}), {1, 2, 3});
  auto pi = stratum_poset(zi);
  CHECK_THROWS_AS(galois_quotient(pi, [&](const WeylElement& w) { return w * a3.simple(1); }), InvalidArgument);
}

TEST_CASE("export and parse") {
  WeylGroup a1(Family::A, 1);
  auto p1 = stratum_poset(zip_from_cocharacter(a1, ParabolicType(), {1}, true));
  std::string dot = export_poset(p1, ExportFormat::Dot);
  CHECK(dot.find("n0 [label=\"e | 0 | 3\"]") != std::string::npos);
  CHECK(dot.find("n1 [label=\"s1 | 1 | 4\"]") != std::string::npos);
  CHECK(dot.find("n0 -> n1;") != std::string::npos);

  for (const auto& g : desk_groups()) {
    if (g.rank() > 3) continue;
    for (const auto& I : all_parabolics(g.rank())) {
      auto p = stratum_poset(zip_from_cocharacter(g, I, WeylGroup::identity_automorphism(g.rank())));
      auto text = export_poset(p, ExportFormat::Json);
      CHECK(parse_poset_json(text) == p);
      CHECK(export_poset(parse_poset_json(text), ExportFormat::Json) == text);
    }
  }
  CHECK_THROWS_AS(parse_export_format("xml"), InvalidArgument);
  CHECK_THROWS_AS(parse_poset_json("{"), InvalidArgument);
}

TEST_CASE("K3 type: 462 strata without the full relation") {
  WeylGroup a21(Family::A, 21);
  std::vector<int> idx;
  for (int i = 2; i <= 20; ++i) idx.push_back(i);
  auto z = zip_from_cocharacter(a21, ParabolicType(idx), WeylGroup::identity_automorphism(21), true);
  CHECK(z.J == ParabolicType(idx));
  auto p = stratum_poset(z);
  CHECK(p.size() == 462);
  CHECK_FALSE(p.has_relation);
  CHECK(p.dims.back() == group_dimension(z));
  auto json_text = export_poset(p, ExportFormat::Json);
  CHECK(parse_poset_json(json_text).size() == 462);
}
