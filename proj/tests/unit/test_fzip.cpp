#include <doctest.h>

#include <random>
#include <set>

#include "zipstrata/errors.hpp"
#include "zipstrata/fzip.hpp"

using namespace zipstrata;
using namespace zipstrata::fzip;
using coxeter::ParabolicType;
using coxeter::WeylGroup;

namespace {

const std::vector<FZipType> kTypes = {{{0, 1}, {1, 1}}, {{0, 2}}, {{0, 2}, {1, 1}}, {{0, 1}, {1, 2}},
                                      {{0, 1}, {1, 1}, {2, 1}}, {{-1, 1}, {3, 2}}};

// Random element of E_Z over the datum's field.
lab::ZipElement random_zip_element(const lab::GroupZipDatum& zd, std::mt19937_64& rng) {
  const auto& f = *zd.field;
  Mat pp(zd.n, zd.n);
  do {
    for (int i = 0; i < zd.n; ++i)
      for (int j = 0; j < zd.n; ++j) pp(i, j) = zd.in_Pp(i, j) ? static_cast<ff::Elem>(rng() % f.order()) : 0;
  } while (!ff::is_invertible(f, pp));
  Mat lp(zd.n, zd.n);
  for (int i = 0; i < zd.n; ++i)
    for (int j = 0; j < zd.n; ++j)
      if (zd.in_Lp(i, j)) lp(i, j) = pp(i, j);
  Mat p = zd.phi(lp);
  for (int i = 0; i < zd.n; ++i)
    for (int j = 0; j < zd.n; ++j)
      if (zd.in_P(i, j) && !zd.in_L(i, j)) p(i, j) = static_cast<ff::Elem>(rng() % f.order());
  return {pp, p};
}

int total_rank(const FZipType& t) {
  int n = 0;
  for (const auto& [w, m] : t) n += m;
  return n;
}

}  // namespace

TEST_CASE("type_to_parabolic") {
  auto a = type_to_parabolic({{0, 1}, {1, 1}});
  CHECK(a.n == 2);
  CHECK(a.I.empty());
  auto k3 = type_to_parabolic({{0, 1}, {1, 20}, {2, 1}});
  CHECK(k3.n == 22);
  std::vector<int> idx;
  for (int i = 2; i <= 20; ++i) idx.push_back(i);
  CHECK(k3.I == ParabolicType(idx));
  CHECK(type_to_parabolic({{0, 4}}).I == ParabolicType({1, 2, 3}));
  CHECK(type_to_parabolic({{3, 2}, {-1, 1}}).blocks == std::vector<int>{1, 2});
  CHECK_THROWS_AS(type_to_parabolic({{0, 0}}), InvalidArgument);
}

TEST_CASE("enumerate_strata") {
  CHECK(enumerate_strata({{0, 1}, {1, 1}}).size() == 2);
  CHECK(enumerate_strata({{0, 2}, {1, 1}}).size() == 3);
  CHECK(enumerate_strata({{0, 1}, {1, 20}, {2, 1}}).size() == 462);
  CHECK(enumerate_strata({{0, 1}, {1, 1}, {2, 1}}).size() == 6);
}

TEST_CASE("Tate zips, tensor and dual") {
  CHECK(tate_zip(0).type() == FZipType{{0, 1}});
  CHECK(tate_zip(5).type() == FZipType{{5, 1}});
  for (int d = -3; d <= 3; ++d) {
    CHECK(dual(tate_zip(d)) == tate_zip(-d));
    for (int e = -2; e <= 2; ++e) CHECK(tensor(tate_zip(d), tate_zip(e)) == tate_zip(d + e));
  }
  CHECK(tate_zip(2).C_at(2).cols == 1);
  CHECK(tate_zip(2).C_at(3).cols == 0);
  CHECK(tate_zip(2).D_at(1).cols == 0);
  CHECK(tate_zip(2).D_at(2).cols == 1);

  auto f2 = ff::get_field(2, 1);
  std::mt19937_64 rng(11);
  for (const auto& t : kTypes) {
    const int n = total_rank(t);
    auto g = lab::gl_points(n, *f2);
    const Mat& x = g[rng() % g.size()];
    auto a = from_group_element(t, x, 2, 1, 1);
    CHECK(a.type() == t);
    CHECK(dual(a).type() == dual_type(t));
    CHECK(dual(dual(a)) == a);
    auto b = from_group_element({{0, 1}, {1, 1}}, Mat::from_rows({{0, 1}, {1, 0}}), 2, 1, 1);
    auto ab = tensor(a, b);
    CHECK(ab.n == a.n * b.n);
    CHECK(ab.type() == tensor_type(t, b.type()));
    auto unit = tensor(a, tate_zip(0));
    CHECK(unit.type() == a.type());
    if (n >= 2) CHECK(classify(unit, 6).w == classify(a, 6).w);
  }
  auto f4 = tate_zip(0, 2, 2, 1);
  CHECK_THROWS_AS(tensor(tate_zip(0), f4), InvalidArgument);
}

TEST_CASE("Dieudonne import") {
  auto f2 = ff::get_field(2, 1);
  auto ord = dieudonne_to_fzip(*f2, Mat::from_rows({{1, 0}, {0, 0}}), Mat::from_rows({{0, 0}, {0, 1}}));
  CHECK(ord.type() == FZipType{{0, 1}, {1, 1}});
  auto lo = classify(ord, 1);
  CHECK(lo.length == 1);
  CHECK(*lo.w == lab::gl_weyl(2).longest_element());

  auto ss = dieudonne_to_fzip(*f2, Mat::from_rows({{0, 1}, {0, 0}}), Mat::from_rows({{0, 1}, {0, 0}}));
  CHECK(ss.type() == FZipType{{0, 1}, {1, 1}});
  auto ls = classify(ss, 1);
  CHECK(ls.length == 0);
  CHECK(ls.w->is_identity());

  // Both strata of the 2-element poset are reached.
  auto poset = enumerate_strata({{0, 1}, {1, 1}});
  std::set<std::vector<int>> labels{lo.w->window(), ls.w->window()};
  CHECK(labels.size() == poset.size());

  // Failing exactness: im V = 0 but ker F = everything.
  CHECK_THROWS_AS(dieudonne_to_fzip(*f2, Mat(2, 2), Mat(2, 2)), ImKerMismatch);
  // im V = ker F holds, im F = span(e1) but ker V = span(e2).
  CHECK_THROWS_AS(dieudonne_to_fzip(*f2, Mat::from_rows({{1, 0}, {0, 0}}), Mat::from_rows({{0, 0}, {1, 0}})),
                  ImKerMismatch);
  // F = 0 with V invertible is a valid level-1 module of type {1: n}.
  auto mult = dieudonne_to_fzip(*f2, Mat(2, 2), Mat::identity(2));
  CHECK(mult.type() == FZipType{{1, 2}});

  // Over F_4 and F_9 the two shapes still classify as open and closed.
  for (auto [p, k] : {std::pair{2, 2}, std::pair{3, 2}}) {
    auto f = ff::get_field(p, k);
    CHECK(classify(dieudonne_to_fzip(*f, Mat::from_rows({{1, 0}, {0, 0}}), Mat::from_rows({{0, 0}, {0, 1}})), k)
              .length == 1);
    CHECK(classify(dieudonne_to_fzip(*f, Mat::from_rows({{0, 1}, {0, 0}}), Mat::from_rows({{0, 1}, {0, 0}})), k)
              .length == 0);
  }
}

TEST_CASE("classify standard representatives and their translates") {
  std::mt19937_64 rng(5);
  for (const auto& t : kTypes) {
    const auto tp = type_to_parabolic(t);
    if (tp.n < 2) continue;
    WeylGroup W = lab::gl_weyl(tp.n);
    auto zd = lab::standard_datum(tp.blocks, 2, 1, 1);
    for (const auto& w : W.min_coset_reps(tp.I)) {
      const Mat rep = lab::standard_representative(zd, w);
      auto label = classify(from_group_element(t, rep, 2, 1, 1), 1);
      CHECK(*label.w == w);
      CHECK(label.ext == 1);
      CHECK(lab::zip_act(zd, label.certificate, label.g) == rep);
      for (int k = 0; k < 100; ++k) {
        auto e = random_zip_element(zd, rng);
        CHECK(*classify(from_group_element(t, lab::zip_act(zd, e, rep), 2, 1, 1), 1).w == w);
      }
      // Change of basis of the underlying space does not change the label.
      auto z = from_group_element(t, rep, 2, 1, 1);
      auto g = lab::gl_points(tp.n, *zd.field);
      for (int k = 0; k < 10; ++k) CHECK(*classify(transport(z, g[rng() % g.size()]), 1).w == w);
    }
  }
}

TEST_CASE("exhaustive classification over small fields") {
  struct Case {
    FZipType t;
    int p;
  };
  const std::vector<Case> cases = {{{{0, 1}, {1, 1}}, 2}, {{{0, 2}}, 2},          {{{0, 2}, {1, 1}}, 2},
                                   {{{0, 1}, {1, 2}}, 2}, {{{0, 1}, {1, 1}, {2, 1}}, 2}, {{{0, 1}, {1, 1}}, 3},
                                   {{{0, 2}}, 3}};
  for (const auto& c : cases) {
    const auto tp = type_to_parabolic(c.t);
    auto f = ff::get_field(c.p, 1);
    WeylGroup W = lab::gl_weyl(tp.n);
    std::set<std::vector<int>> labels;
    int worst = 0;
    for (const auto& g : lab::gl_points(tp.n, *f)) {
      auto l = classify(from_group_element(c.t, g, c.p, 1, 1), 8);
      CHECK(W.is_min_coset_rep(tp.I, *l.w));
      labels.insert(l.w->window());
      worst = std::max(worst, l.ext);
    }
    CHECK(labels.size() == W.min_coset_reps(tp.I).size());
    CHECK(worst <= 8);
  }
}

TEST_CASE("Undetermined below the needed extension") {
  // Single block: the zip action is Frobenius conjugation, and an element of
  // order 3 in GL_2(F_2) only becomes F-conjugate to 1 over F_8.
  const Mat g3 = Mat::from_rows({{0, 1}, {1, 1}});
  auto z = from_group_element({{0, 2}}, g3, 2, 1, 1);
  CHECK_THROWS_AS(classify(z, 2), Undetermined);
  auto l = classify(z, 3);
  CHECK(l.ext == 3);
  CHECK(l.w->is_identity());
  CHECK_THROWS_AS(classify(z, 0), InvalidArgument);
}

TEST_CASE("JSON round trip and validation") {
  auto f2 = ff::get_field(2, 1);
  auto ord = dieudonne_to_fzip(*f2, Mat::from_rows({{1, 0}, {0, 0}}), Mat::from_rows({{0, 0}, {0, 1}}));
  const std::string text = fzip_to_json(ord);
  CHECK(parse_fzip_json(text) == ord);
  CHECK(fzip_to_json(parse_fzip_json(text)) == text);

  auto f9 = from_group_element({{0, 1}, {1, 1}}, Mat::from_rows({{1, 0}, {3, 1}}), 3, 1, 2);
  CHECK(parse_fzip_json(fzip_to_json(f9)) == f9);

  const std::string coeffs = R"({"p":3,"q":9,"ext_deg":1,"n":1,
    "C":[{"i":0,"cols":[[[1,0]]]},{"i":1,"cols":[]}],
    "D":[{"i":-1,"cols":[]},{"i":0,"cols":[[[0,1]]]}],
    "phi":[{"i":0,"matrix":[[[2]]],"frob_exp":2}]})";
  CHECK(parse_fzip_json(coeffs).type() == FZipType{{0, 1}});

  const std::string not_descending = R"({"p":2,"q":2,"ext_deg":1,"n":2,
    "C":[{"i":0,"cols":[[1,0],[0,1]]},{"i":1,"cols":[[1,0]]},{"i":2,"cols":[[0,1]]},{"i":3,"cols":[]}],
    "D":[{"i":-1,"cols":[]},{"i":1,"cols":[[1,0]]},{"i":2,"cols":[[1,0],[0,1]]}],
    "phi":[{"i":0,"matrix":[[1]],"frob_exp":1},{"i":1,"matrix":[[1]],"frob_exp":1}]})";
  CHECK_THROWS_AS(parse_fzip_json(not_descending), InvariantViolation);

  const std::string mismatched = R"({"p":2,"q":2,"ext_deg":1,"n":2,
    "C":[{"i":0,"cols":[[1,0],[0,1]]},{"i":1,"cols":[[0,1]]},{"i":2,"cols":[]}],
    "D":[{"i":-1,"cols":[]},{"i":1,"cols":[[1,0],[0,1]]}],
    "phi":[{"i":0,"matrix":[[1]],"frob_exp":1},{"i":1,"matrix":[[1]],"frob_exp":1}]})";
  CHECK_THROWS_AS(parse_fzip_json(mismatched), InvariantViolation);

  const std::string singular_phi = R"({"p":2,"q":2,"ext_deg":1,"n":1,
    "C":[{"i":0,"cols":[[1]]},{"i":1,"cols":[]}],
    "D":[{"i":-1,"cols":[]},{"i":0,"cols":[[1]]}],
    "phi":[{"i":0,"matrix":[[0]],"frob_exp":1}]})";
  CHECK_THROWS_AS(parse_fzip_json(singular_phi), InvariantViolation);
  CHECK_THROWS_AS(parse_fzip_json("{\"p\":2}"), InvalidArgument);
  CHECK_THROWS_AS(parse_fzip_json("[1,"), InvalidArgument);
}
