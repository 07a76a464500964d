#include "zipstrata/grouplab.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace zipstrata::lab {

using coxeter::ParabolicType;
using coxeter::WeylElement;
using coxeter::WeylGroup;
using ff::Elem;
using nlohmann::json;
using u128 = unsigned __int128;

namespace {

std::uint64_t checked(u128 v, const std::string& what) {
  if (v > static_cast<u128>(UINT64_MAX)) throw TooLarge(what + " does not fit in 64 bits", UINT64_MAX, UINT64_MAX);
  return static_cast<std::uint64_t>(v);
}

u128 upow(u128 b, int e) {
  u128 r = 1;
  for (int i = 0; i < e; ++i) {
    r *= b;
    if (r > (static_cast<u128>(1) << 100)) throw TooLarge("power overflow", UINT64_MAX, UINT64_MAX);
  }
  return r;
}

std::vector<int> inverse_window(const std::vector<int>& w) {
  std::vector<int> inv(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) inv[w[i] - 1] = static_cast<int>(i) + 1;
  return inv;
}

using Pattern = std::vector<std::pair<int, int>>;

template <class Pred>
Pattern make_pattern(int n, Pred pred) {
  Pattern out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (pred(i, j)) out.emplace_back(i, j);
  return out;
}

// All invertible matrices supported on a pattern.
std::vector<Mat> pattern_points(const Field& f, int n, const Pattern& pat, std::uint64_t bound,
                                const std::string& what) {
  long double total = std::pow(static_cast<long double>(f.order()), static_cast<long double>(pat.size()));
  if (total > static_cast<long double>(bound))
    throw TooLarge(what, total > 1.8e19L ? UINT64_MAX : static_cast<std::uint64_t>(total), bound);
  const std::uint64_t count = static_cast<std::uint64_t>(total);
  std::vector<Mat> out;
  Mat m(n, n);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t r = idx;
    for (const auto& [i, j] : pat) {
      m(i, j) = static_cast<Elem>(r % f.order());
      r /= f.order();
    }
    if (ff::is_invertible(f, m)) out.push_back(m);
  }
  return out;
}

// Field element from p-adic digits v[off..off+k).
Elem elem_from_digits(const Field& f, const std::vector<int>& v, std::size_t off) {
  Elem r = 0, scale = 1;
  for (int t = 0; t < f.degree(); ++t) {
    r += static_cast<Elem>(v[off + t]) * scale;
    scale *= static_cast<Elem>(f.p());
  }
  return r;
}

void append_digits(const Field& f, Elem a, std::vector<int>& out) {
  for (int t = 0; t < f.degree(); ++t) {
    out.push_back(static_cast<int>(a % f.p()));
    a /= f.p();
  }
}

Mat matrix_from_digits(const Field& f, int n, const Pattern& pat, const std::vector<int>& v, std::size_t off) {
  Mat m(n, n);
  for (std::size_t t = 0; t < pat.size(); ++t)
    m(pat[t].first, pat[t].second) = elem_from_digits(f, v, off + t * f.degree());
  return m;
}

Mat project(const Mat& m, const Pattern& pat) {
  Mat out(m.rows, m.cols);
  for (const auto& [i, j] : pat) out(i, j) = m(i, j);
  return out;
}

std::vector<int> group_sizes(const std::vector<int>& comp, const std::vector<int>& level) {
  std::map<std::pair<int, int>, int> counts;
  for (std::size_t i = 0; i < comp.size(); ++i) ++counts[{comp[i], level[i]}];
  std::vector<int> out;
  for (const auto& [k, v] : counts) out.push_back(v);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

std::uint64_t GroupZipDatum::q() const {
  std::uint64_t q = 1;
  for (int i = 0; i < frob_exp; ++i) q *= static_cast<std::uint64_t>(field->p());
  return q;
}

Mat GroupZipDatum::phi(const Mat& lp) const {
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(x[i] - 1, x[j] - 1) = lp(i, j);
  return ff::frob(*field, m, frob_exp);
}

void GroupZipDatum::validate() const {
  if (!field) throw InvalidArgument("zip datum without field");
  if (n < 1) throw InvalidArgument("zip datum of size zero");
  if (frob_exp < 0 || (frob_exp > 0 && field->degree() % frob_exp != 0))
    throw InvalidArgument("Frobenius exponent must divide the field degree");
  const std::size_t un = static_cast<std::size_t>(n);
  if (comp.size() != un || level.size() != un || level_prime.size() != un || x.size() != un)
    throw InvalidArgument("zip datum pattern sizes differ from n");
  std::vector<int> seen(n, 0);
  for (int v : x) {
    if (v < 1 || v > n || seen[v - 1]++) throw InvalidArgument("twist x is not a permutation");
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (in_Lp(i, j) != in_L(x[i] - 1, x[j] - 1)) throw InvalidArgument("phi does not map L' onto L");
  if (g0.rows != n || g0.cols != n || !ff::is_invertible(*field, g0)) throw InvalidArgument("g0 must be invertible");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!in_G(i, j) && g0(i, j) != 0) throw InvalidArgument("g0 is not in G");
}

std::string GroupZipDatum::describe() const {
  std::ostringstream os;
  os << "GL_" << n << " zip datum over " << field->describe() << " (q = " << q() << ")";
  if (is_standard()) {
    os << ", blocks";
    for (std::size_t i = 0; i < blocks.size(); ++i) os << (i ? "," : " ") << blocks[i];
  }
  return os.str();
}

coxeter::WeylGroup gl_weyl(int n) {
  if (n < 2) throw InvalidArgument("GL_n Weyl group needs n >= 2");
  return WeylGroup(coxeter::Family::A, n - 1);
}

ParabolicType blocks_to_parabolic(const std::vector<int>& blocks) {
  int n = 0;
  for (int b : blocks) {
    if (b < 1) throw InvalidArgument("block sizes must be positive");
    n += b;
  }
  std::vector<int> boundaries;
  int acc = 0;
  for (std::size_t i = 0; i + 1 < blocks.size(); ++i) boundaries.push_back(acc += blocks[i]);
  std::vector<int> idx;
  for (int i = 1; i < n; ++i)
    if (std::find(boundaries.begin(), boundaries.end(), i) == boundaries.end()) idx.push_back(i);
  return ParabolicType(idx);
}

GroupZipDatum standard_datum(const std::vector<int>& blocks, int p, int d, int s, const Mat& g0) {
  if (blocks.empty()) throw InvalidArgument("no blocks");
  if (d < 1 || s < 1) throw InvalidArgument("field degrees must be positive");
  GroupZipDatum zd;
  zd.field = ff::get_field(p, d * s);
  zd.frob_exp = d;
  zd.blocks = blocks;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b] < 1) throw InvalidArgument("block sizes must be positive");
    for (int t = 0; t < blocks[b]; ++t) {
      zd.comp.push_back(0);
      zd.level.push_back(static_cast<int>(b));
      zd.level_prime.push_back(-static_cast<int>(b));
    }
  }
  zd.n = static_cast<int>(zd.comp.size());
  for (int i = 1; i <= zd.n; ++i) zd.x.push_back(i);
  zd.g0 = g0;
  zd.validate();
  return zd;
}

GroupZipDatum standard_datum(const std::vector<int>& blocks, int p, int d, int s) {
  int n = 0;
  for (int b : blocks) n += b;
  Mat g0 = Mat::identity(std::max(n, 1));
  if (n >= 2) {
    WeylGroup w = gl_weyl(n);
    g0 = weyl_matrix(w.longest_element(blocks_to_parabolic(blocks)) * w.longest_element());
  }
  return standard_datum(blocks, p, d, s, g0);
}

GroupZipDatum terminal_datum(int n, int p, int d, int s) {
  GroupZipDatum zd = standard_datum(std::vector<int>{n}, p, d, s, Mat::identity(n));
  return zd;
}

std::uint64_t gl_order(int n, std::uint64_t q) {
  u128 r = 1;
  const u128 qn = upow(q, n);
  for (int i = 0; i < n; ++i) r *= qn - upow(q, i);
  return checked(r, "|GL_n|");
}

std::uint64_t zip_group_order(const GroupZipDatum& zd) {
  const std::uint64_t Q = zd.field->order();
  u128 r = 1;
  for (int b : group_sizes(zd.comp, zd.level_prime)) r *= gl_order(b, Q);
  int unip = 0;
  for (int i = 0; i < zd.n; ++i)
    for (int j = 0; j < zd.n; ++j) {
      if (zd.in_Pp(i, j) && !zd.in_Lp(i, j)) ++unip;
      if (zd.in_P(i, j) && !zd.in_L(i, j)) ++unip;
    }
  r *= upow(Q, unip);
  return checked(r, "|E_Z|");
}

std::vector<Mat> gl_points(int n, const Field& field, std::uint64_t bound) {
  auto out = pattern_points(field, n, make_pattern(n, [](int, int) { return true; }), bound, "GL_n points");
  if (out.size() != gl_order(n, field.order())) throw InvariantViolation("|GL_n(F_q)| mismatch");
  return out;
}

std::vector<Mat> parabolic_points(int n, const Field& field, const std::vector<int>& blocks, Side side,
                                  std::uint64_t bound) {
  std::vector<int> lev;
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (int t = 0; t < blocks[b]; ++t) lev.push_back(static_cast<int>(b));
  if (static_cast<int>(lev.size()) != n) throw InvalidArgument("block sizes do not sum to n");
  auto pat = make_pattern(n, [&](int i, int j) { return side == Side::Upper ? lev[i] <= lev[j] : lev[i] >= lev[j]; });
  return pattern_points(field, n, pat, bound, "parabolic points");
}

std::vector<Mat> ambient_points(const GroupZipDatum& zd, std::uint64_t bound) {
  return pattern_points(*zd.field, zd.n, make_pattern(zd.n, [&](int i, int j) { return zd.in_G(i, j); }), bound,
                        "G points");
}

std::vector<ZipElement> zip_group_points(const GroupZipDatum& zd, std::uint64_t bound) {
  const std::uint64_t order = zip_group_order(zd);
  if (order > bound) throw TooLarge("zip group points", order, bound);
  const Field& f = *zd.field;
  auto pps = pattern_points(f, zd.n, make_pattern(zd.n, [&](int i, int j) { return zd.in_Pp(i, j); }), bound,
                            "P' points");
  const Pattern lp = make_pattern(zd.n, [&](int i, int j) { return zd.in_Lp(i, j); });
  const Pattern up = make_pattern(zd.n, [&](int i, int j) { return zd.in_P(i, j) && !zd.in_L(i, j); });
  const std::uint64_t ucount = static_cast<std::uint64_t>(upow(f.order(), static_cast<int>(up.size())));
  std::vector<ZipElement> out;
  out.reserve(order);
  for (const auto& pp : pps) {
    const Mat l = zd.phi(project(pp, lp));
    for (std::uint64_t idx = 0; idx < ucount; ++idx) {
      Mat p = l;
      std::uint64_t r = idx;
      for (const auto& [i, j] : up) {
        p(i, j) = static_cast<Elem>(r % f.order());
        r /= f.order();
      }
      out.push_back({pp, p});
    }
  }
  if (out.size() != order) throw InvariantViolation("|E_Z| mismatch");
  return out;
}

Mat zip_act(const GroupZipDatum& zd, const ZipElement& e, const Mat& g) {
  return ff::mul(*zd.field, ff::mul(*zd.field, e.pp, g), ff::inverse(*zd.field, e.p));
}

bool in_zip_group(const GroupZipDatum& zd, const ZipElement& e) {
  const Field& f = *zd.field;
  if (!ff::is_invertible(f, e.pp) || !ff::is_invertible(f, e.p)) return false;
  for (int i = 0; i < zd.n; ++i)
    for (int j = 0; j < zd.n; ++j) {
      if (!zd.in_Pp(i, j) && e.pp(i, j) != 0) return false;
      if (!zd.in_P(i, j) && e.p(i, j) != 0) return false;
    }
  const Pattern lp = make_pattern(zd.n, [&](int i, int j) { return zd.in_Lp(i, j); });
  const Pattern l = make_pattern(zd.n, [&](int i, int j) { return zd.in_L(i, j); });
  return zd.phi(project(e.pp, lp)) == project(e.p, l);
}

std::size_t OrbitCensus::total() const {
  std::size_t t = 0;
  for (const auto& o : orbits) t += o.size();
  return t;
}

namespace {

// Generic census: acting elements given as (left, right^{-1}) pairs acting by left * g * right_inv.
OrbitCensus census(const Field& f, const std::vector<Mat>& points, const std::vector<std::pair<Mat, Mat>>& acts,
                   const std::string& tag) {
  if (points.empty()) return {tag, acts.size(), {}, {}};
  const int n = points.front().rows;
  if (!ff::key_fits(f, n, n)) throw TooLarge("matrix keys", UINT64_MAX, UINT64_MAX);
  std::vector<std::uint64_t> keys;
  keys.reserve(points.size());
  for (const auto& g : points) keys.push_back(ff::mat_key(f, g));
  std::vector<std::size_t> order(points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });

  std::unordered_set<std::uint64_t> visited;
  visited.reserve(points.size() * 2);
  OrbitCensus c{tag, acts.size(), {}, {}};
  for (std::size_t idx : order) {
    if (visited.count(keys[idx])) continue;
    const Mat& g = points[idx];
    std::unordered_set<std::uint64_t> orbit;
    std::uint64_t fixers = 0;
    for (const auto& [l, rinv] : acts) {
      Mat h = ff::mul(f, ff::mul(f, l, g), rinv);
      const std::uint64_t k = ff::mat_key(f, h);
      if (k == keys[idx]) ++fixers;
      orbit.insert(k);
    }
    std::vector<std::uint64_t> sorted(orbit.begin(), orbit.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() != keys[idx]) throw InvariantViolation("orbit scan order is inconsistent");
    if (sorted.size() * fixers != acts.size())
      throw InvariantViolation("orbit-stabilizer identity fails in " + tag + " census");
    std::vector<Mat> mats;
    mats.reserve(sorted.size());
    for (auto k : sorted) {
      if (!visited.insert(k).second) throw InvariantViolation("orbits overlap");
      mats.push_back(ff::mat_from_key(f, n, n, k));
    }
    c.orbits.push_back(std::move(mats));
    c.stabilizer_orders.push_back(fixers);
  }
  if (visited.size() != points.size()) throw InvariantViolation("census does not cover the acted set");
  return c;
}

}  // namespace

OrbitCensus zip_orbit_census(const GroupZipDatum& zd, std::uint64_t bound) {
  const Field& f = *zd.field;
  auto points = ambient_points(zd, bound);
  auto elems = zip_group_points(zd, bound);
  std::vector<std::pair<Mat, Mat>> acts;
  acts.reserve(elems.size());
  for (const auto& e : elems) acts.emplace_back(e.pp, ff::inverse(f, e.p));
  return census(f, points, acts, "zip");
}

OrbitCensus conjugation_census(int n, const Field& field, std::uint64_t bound) {
  auto points = gl_points(n, field, bound);
  std::vector<std::pair<Mat, Mat>> acts;
  acts.reserve(points.size());
  for (const auto& h : points) acts.emplace_back(h, ff::inverse(field, h));
  return census(field, points, acts, "conjugation");
}

std::vector<ZipElement> transporter(const GroupZipDatum& zd, const Mat& g, const Mat& h, std::uint64_t bound,
                                    std::size_t limit) {
  const Field& f = *zd.field;
  const int n = zd.n;
  const int k = f.degree();
  const Pattern pp_pat = make_pattern(n, [&](int i, int j) { return zd.in_Pp(i, j); });
  const Pattern p_pat = make_pattern(n, [&](int i, int j) { return zd.in_P(i, j); });
  const Pattern lp_pat = make_pattern(n, [&](int i, int j) { return zd.in_Lp(i, j); });
  const Pattern l_pat = make_pattern(n, [&](int i, int j) { return zd.in_L(i, j); });
  const std::size_t off = pp_pat.size() * k;
  const int nvars = static_cast<int>((pp_pat.size() + p_pat.size()) * k);

  // p' g - h p = 0 and pr_L(p) - phi(pr_L'(p')) = 0, both F_p-linear.
  auto eval = [&](const std::vector<int>& v) {
    Mat a = matrix_from_digits(f, n, pp_pat, v, 0);
    Mat b = matrix_from_digits(f, n, p_pat, v, off);
    Mat d1 = ff::sub(f, ff::mul(f, a, g), ff::mul(f, h, b));
    Mat d2 = ff::sub(f, b, zd.phi(project(a, lp_pat)));
    std::vector<int> out;
    for (Elem e : d1.a) append_digits(f, e, out);
    for (const auto& [i, j] : l_pat) append_digits(f, d2(i, j), out);
    return out;
  };
  auto basis = ff::fp_solution_space(f.p(), nvars, eval);
  std::vector<ZipElement> out;
  ff::fp_enumerate_span(f.p(), nvars, basis, bound, [&](const std::vector<int>& v) {
    Mat a = matrix_from_digits(f, n, pp_pat, v, 0);
    if (!ff::is_invertible(f, a)) return true;
    out.push_back({a, matrix_from_digits(f, n, p_pat, v, off)});
    return limit == 0 || out.size() < limit;
  });
  return out;
}

std::vector<ZipElement> stabilizer(const GroupZipDatum& zd, const Mat& g, std::uint64_t bound) {
  return transporter(zd, g, g, bound);
}

std::uint64_t orbit_size(const GroupZipDatum& zd, const Mat& g, std::uint64_t bound) {
  const std::uint64_t order = zip_group_order(zd);
  const std::uint64_t stab = stabilizer(zd, g, bound).size();
  if (stab == 0 || order % stab != 0) throw InvariantViolation("stabilizer order does not divide |E_Z|");
  return order / stab;
}

std::uint64_t centralizer_order(const Field& field, const Mat& g, std::uint64_t bound) {
  const int n = g.rows;
  const Pattern all = make_pattern(n, [](int, int) { return true; });
  auto eval = [&](const std::vector<int>& v) {
    Mat h = matrix_from_digits(field, n, all, v, 0);
    Mat d = ff::sub(field, ff::mul(field, h, g), ff::mul(field, g, h));
    std::vector<int> out;
    for (Elem e : d.a) append_digits(field, e, out);
    return out;
  };
  const int nvars = n * n * field.degree();
  auto basis = ff::fp_solution_space(field.p(), nvars, eval);
  if (static_cast<int>(basis.size()) == nvars) return gl_order(n, field.order());  // g is central
  std::uint64_t count = 0;
  ff::fp_enumerate_span(field.p(), nvars, basis, bound, [&](const std::vector<int>& v) {
    if (ff::is_invertible(field, matrix_from_digits(field, n, all, v, 0))) ++count;
    return true;
  });
  return count;
}

std::uint64_t conjugation_orbit_size(const Field& field, const Mat& g, std::uint64_t bound) {
  const std::uint64_t order = gl_order(g.rows, field.order());
  const std::uint64_t c = centralizer_order(field, g, bound);
  if (c == 0 || order % c != 0) throw InvariantViolation("centralizer order does not divide |GL_n|");
  return order / c;
}

Mat weyl_matrix(const WeylElement& w) {
  if (w.type().family != coxeter::Family::A) throw InvalidArgument("permutation matrices need type A");
  return ff::perm_matrix(w.window());
}

WeylElement frame_conjugate(const WeylElement& w) {
  if (w.type().family != coxeter::Family::A) throw InvalidArgument("frame conjugation needs type A");
  WeylGroup g(w.type());
  const WeylElement w0 = g.longest_element();
  return w0 * w * w0;
}

Mat standard_representative(const GroupZipDatum& zd, const WeylElement& w) {
  if (w.type().degree() != zd.n) throw GroupMismatch("Weyl element acts on the wrong number of letters");
  return ff::mul(*zd.field, zd.g0, weyl_matrix(frame_conjugate(w)));
}

std::vector<int> opposite_bruhat_permutation(const Field& field, const Mat& g) {
  const int n = g.rows;
  if (!ff::is_invertible(field, g)) throw SingularMatrix("Bruhat cell of a singular matrix");
  // r[i][j] = rank of the top-left (i+1) x (j+1) block, invariant under B^- x B.
  std::vector<std::vector<int>> r(n, std::vector<int>(n + 1, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Mat sub(i + 1, j + 1);
      for (int a = 0; a <= i; ++a)
        for (int b = 0; b <= j; ++b) sub(a, b) = g(a, b);
      r[i][j + 1] = ff::rank(field, sub);
    }
  std::vector<int> y(n, 0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (r[i][j + 1] - r[i][j] == 1) {
        y[j] = i + 1;
        break;
      }
  return y;
}

namespace {

ParabolicType conjugated_by_w0(const WeylGroup& w, const ParabolicType& k) {
  std::vector<int> idx;
  for (int i : k.indices()) idx.push_back(w.w0_conjugate_index(i));
  return ParabolicType(idx);
}

// Simple indices K with W_K = g0^{-1} W_I g0.
ParabolicType base_point_parabolic(const GroupZipDatum& zd) {
  if (!zd.is_standard()) throw InvalidArgument("Bruhat cells need a standard GL_n datum");
  WeylGroup w = gl_weyl(zd.n);
  const WeylElement g0(w.type(), ff::perm_of_matrix(zd.g0));
  std::vector<int> k;
  const ParabolicType I = blocks_to_parabolic(zd.blocks);
  for (int i : I.indices()) {
    WeylElement c = g0.inverse() * w.simple(i) * g0;
    if (c.length() != 1) throw InvalidArgument("g0 does not normalize the simple reflections of I");
    k.push_back(c.right_descents().front());
  }
  return ParabolicType(k);
}

}  // namespace

std::pair<ParabolicType, ParabolicType> cell_parabolics(const GroupZipDatum& zd) {
  WeylGroup w = gl_weyl(zd.n);
  return {conjugated_by_w0(w, base_point_parabolic(zd)), conjugated_by_w0(w, blocks_to_parabolic(zd.blocks))};
}

WeylElement bruhat_cell(const GroupZipDatum& zd, const Mat& g) {
  const ParabolicType K = base_point_parabolic(zd);
  WeylGroup w = gl_weyl(zd.n);
  const WeylElement g0(w.type(), ff::perm_of_matrix(zd.g0));
  const WeylElement y(w.type(), opposite_bruhat_permutation(*zd.field, g));
  return frame_conjugate(w.min_double_coset_rep(K, g0.inverse() * y, blocks_to_parabolic(zd.blocks)));
}

LangResult lang_preimage(const Field& base, const Mat& g, int frob_exp, int max_ext, std::uint64_t bound) {
  if (!ff::is_invertible(base, g)) throw SingularMatrix("Lang preimage of a singular matrix");
  const int n = g.rows;
  const Pattern all = make_pattern(n, [](int, int) { return true; });
  for (int s = 1; s <= max_ext; ++s) {
    auto big = ff::get_field(base.p(), base.degree() * s);
    const Field& f = *big;
    const Mat G = ff::map_entries(g, ff::embedding(base, f));
    // F(h) - h G = 0
    auto eval = [&](const std::vector<int>& v) {
      Mat h = matrix_from_digits(f, n, all, v, 0);
      Mat d = ff::sub(f, ff::frob(f, h, frob_exp), ff::mul(f, h, G));
      std::vector<int> out;
      for (Elem e : d.a) append_digits(f, e, out);
      return out;
    };
    const int nvars = n * n * f.degree();
    auto basis = ff::fp_solution_space(f.p(), nvars, eval);
    LangResult res;
    ff::fp_enumerate_span(f.p(), nvars, basis, bound, [&](const std::vector<int>& v) {
      Mat h = matrix_from_digits(f, n, all, v, 0);
      if (!ff::is_invertible(f, h)) return true;
      res = {true, s, big, h};
      return false;
    });
    if (res.found) {
      const Mat check = ff::mul(f, ff::inverse(f, res.h), ff::frob(f, res.h, frob_exp));
      if (check != G) throw InvariantViolation("Lang preimage check failed");
      return res;
    }
  }
  return {};
}

GroupZipDatum reduce_datum(const GroupZipDatum& zd, const std::vector<int>& w_window) {
  const int n = zd.n;
  if (static_cast<int>(w_window.size()) != n) throw InvalidArgument("reduction element has the wrong size");
  const Mat ym = ff::mul(*zd.field, zd.g0, ff::perm_matrix(w_window));
  std::vector<int> y;
  try {
    y = ff::perm_of_matrix(ym);
  } catch (const InvalidArgument&) {
    throw InvalidArgument("reduction needs g0 w to be a permutation matrix");
  }
  for (int i = 0; i < n; ++i)
    if (zd.comp[y[i] - 1] != zd.comp[i]) throw InvalidArgument("g0 w is not in G");
  const std::vector<int> yinv = inverse_window(y);
  const std::vector<int> xinv = inverse_window(zd.x);

  GroupZipDatum out;
  out.field = zd.field;
  out.frob_exp = zd.frob_exp;
  out.n = n;
  std::map<std::pair<int, int>, int> ids;
  for (int k = 0; k < n; ++k) {
    auto key = std::make_pair(zd.comp[k], zd.level[k]);
    auto it = ids.find(key);
    if (it == ids.end()) it = ids.emplace(key, static_cast<int>(ids.size())).first;
    out.comp.push_back(it->second);
    out.level.push_back(zd.level[yinv[xinv[k] - 1] - 1]);
    out.level_prime.push_back(zd.level_prime[y[k] - 1]);
    out.x.push_back(zd.x[y[k] - 1]);
  }
  out.g0 = Mat::identity(n);
  out.validate();
  return out;
}

GroupZipDatum reduce_datum(const GroupZipDatum& zd, const WeylElement& w) {
  if (w.type().family != coxeter::Family::A || w.type().degree() != zd.n)
    throw GroupMismatch("reduction element must be a permutation of n letters");
  return reduce_datum(zd, frame_conjugate(w).window());
}

bool is_terminal(const GroupZipDatum& zd) {
  for (int i = 0; i < zd.n; ++i)
    for (int j = 0; j < zd.n; ++j)
      if (zd.in_G(i, j) && (zd.level[i] != zd.level[j] || zd.level_prime[i] != zd.level_prime[j])) return false;
  return true;
}

std::vector<GroupZipDatum> reduction_trace(const GroupZipDatum& zd, const WeylElement& w) {
  std::vector<GroupZipDatum> trace{zd};
  if (is_terminal(zd)) return trace;
  trace.push_back(reduce_datum(zd, w));
  std::vector<int> id(zd.n);
  for (int i = 0; i < zd.n; ++i) id[i] = i + 1;
  while (!is_terminal(trace.back())) {
    if (static_cast<int>(trace.size()) > zd.n + 1) throw InvariantViolation("reduction does not terminate");
    trace.push_back(reduce_datum(trace.back(), id));
  }
  return trace;
}

std::vector<int> growth_exponents(const std::vector<std::uint64_t>& sizes, std::uint64_t q) {
  if (q < 2) throw InvalidArgument("growth base must be at least 2");
  std::vector<int> out;
  for (std::size_t s = 0; s + 1 < sizes.size(); ++s) {
    if (sizes[s] == 0 || sizes[s + 1] == 0) throw InvalidArgument("orbit sizes must be positive");
    const long double ratio = static_cast<long double>(sizes[s + 1]) / static_cast<long double>(sizes[s]);
    out.push_back(static_cast<int>(std::llround(std::log(ratio) / std::log(static_cast<long double>(q)))));
  }
  return out;
}

int dimension_estimate(const std::vector<std::uint64_t>& sizes, std::uint64_t q) {
  if (sizes.size() < 3) throw InvalidArgument("dimension estimate needs at least three extension degrees");
  auto e = growth_exponents(sizes, q);
  const int last = e.back(), prev = e[e.size() - 2];
  if (last != prev) {
    std::ostringstream os;
    os << "growth exponents do not stabilize:";
    for (int v : e) os << ' ' << v;
    throw InconsistentGrowth(os.str());
  }
  return last;
}

std::uint64_t stratum_point_count(const GroupZipDatum& zd, const WeylElement& w, std::uint64_t bound) {
  const Mat g = standard_representative(zd, w);
  const GroupZipDatum terminal = reduction_trace(zd, w).back();
  const u128 finite_part = stabilizer(terminal, Mat::identity(zd.n), bound).size();
  const u128 stab = stabilizer(zd, g, bound).size();
  const u128 num = static_cast<u128>(zip_group_order(zd)) * finite_part;
  if (stab == 0 || num % stab != 0) throw InvariantViolation("unipotent stabilizer part does not divide |E_Z|");
  return checked(num / stab, "stratum point count");
}

std::vector<std::uint64_t> stratum_point_counts(const std::vector<int>& blocks, int p, int d, const WeylElement& w,
                                                int s_max, std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  for (int s = 1; s <= s_max; ++s) out.push_back(stratum_point_count(standard_datum(blocks, p, d, s), w, bound));
  return out;
}

std::pair<int, int> prime_power(std::uint64_t q) {
  if (q < 2) throw InvalidArgument("field order must be at least 2");
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  int d = 0;
  std::uint64_t r = q;
  while (r % p == 0) {
    r /= p;
    ++d;
  }
  if (r != 1) throw InvalidArgument(std::to_string(q) + " is not a prime power");
  return {static_cast<int>(p), d};
}

bool CounterexampleRow::ok() const {
  return orbit_size == expected_size && lambda_constant && identity_in_fiber && identity_outside_orbit &&
         dim_orbit == 2 && dim_identity_orbit == 0 && boundary_codim == 2;
}

bool CounterexampleReport::ok() const {
  if (rows.empty()) return false;
  for (const auto& r : rows)
    if (!r.ok()) return false;
  return true;
}

CounterexampleReport counterexample_gl2(const std::vector<std::uint64_t>& q_list, int growth_degrees) {
  CounterexampleReport rep;
  for (std::uint64_t q : q_list) {
    auto [p, d] = prime_power(q);
    auto field = ff::get_field(p, d);
    const Field& f = *field;
    const Mat u = Mat::from_rows({{1, 1}, {0, 1}});
    const Elem two = f.from_int(2);
    auto lambda_is_21 = [&](const Mat& m) {
      const Elem tr = f.add(m(0, 0), m(1, 1));
      return tr == two && ff::det(f, m) == 1;
    };
    CounterexampleRow row;
    row.q = q;
    row.expected_size = q * q - 1;
    std::unordered_set<std::uint64_t> orbit;
    for (const auto& h : gl_points(2, f)) orbit.insert(ff::mat_key(f, ff::mul(f, ff::mul(f, h, u), ff::inverse(f, h))));
    row.orbit_size = orbit.size();
    row.lambda_constant = true;
    for (auto k : orbit)
      if (!lambda_is_21(ff::mat_from_key(f, 2, 2, k))) row.lambda_constant = false;
    const Mat one = Mat::identity(2);
    row.identity_in_fiber = lambda_is_21(one);
    row.identity_outside_orbit = orbit.count(ff::mat_key(f, one)) == 0;

    std::vector<std::uint64_t> id_sizes;
    for (int s = 1; s <= growth_degrees; ++s) {
      auto fs = ff::get_field(p, d * s);
      row.growth_sizes.push_back(conjugation_orbit_size(*fs, u, 1ULL << 24));
      id_sizes.push_back(conjugation_orbit_size(*fs, one, 1ULL << 24));
    }
    try {
      row.dim_orbit = dimension_estimate(row.growth_sizes, q);
      row.dim_identity_orbit = dimension_estimate(id_sizes, q);
    } catch (const InconsistentGrowth&) {
    }
    if (row.dim_orbit >= 0 && row.dim_identity_orbit >= 0) row.boundary_codim = row.dim_orbit - row.dim_identity_orbit;
    rep.rows.push_back(row);
  }
  return rep;
}

std::string census_to_json(const GroupZipDatum& zd, const OrbitCensus& c) {
  json j;
  json datum;
  datum["n"] = zd.n;
  datum["p"] = zd.field->p();
  datum["q"] = zd.q();
  if (zd.is_standard()) datum["blocks"] = zd.blocks;
  datum["g0"] = zd.g0.to_rows();
  j["datum"] = datum;
  j["field"] = {{"q", zd.q()}, {"ext", zd.ext()}, {"order", zd.field->order()}};
  j["acting_order"] = c.acting_order;
  json orbits = json::array();
  bool identity_ok = true;
  for (std::size_t i = 0; i < c.orbits.size(); ++i) {
    json o;
    o["size"] = c.orbits[i].size();
    o["stab_order"] = c.stabilizer_orders[i];
    if (c.orbits[i].size() * c.stabilizer_orders[i] != c.acting_order) identity_ok = false;
    if (zd.is_standard()) o["cell"] = bruhat_cell(zd, c.orbits[i].front()).reduced_word();
    o["rep"] = c.orbits[i].front().to_rows();
    orbits.push_back(o);
  }
  j["orbits"] = orbits;
  j["orbit_stabilizer_identity"] = identity_ok;
  return j.dump(2) + "\n";
}

std::string counterexample_to_json(const CounterexampleReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"q", row.q},
                    {"orbit_size", row.orbit_size},
                    {"expected_size", row.expected_size},
                    {"lambda_constant", row.lambda_constant},
                    {"identity_in_fiber", row.identity_in_fiber},
                    {"identity_outside_orbit", row.identity_outside_orbit},
                    {"growth_sizes", row.growth_sizes},
                    {"dim_orbit", row.dim_orbit},
                    {"dim_identity_orbit", row.dim_identity_orbit},
                    {"ambient_dim", row.ambient_dim},
                    {"boundary_codim", row.boundary_codim},
                    {"ok", row.ok()}});
  }
  json j{{"rows", rows}, {"codim2_witness", r.ok()}};
  return j.dump(2) + "\n";
}

}  // namespace zipstrata::lab
