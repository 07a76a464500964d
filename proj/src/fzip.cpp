#include "zipstrata/fzip.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "zipstrata/errors.hpp"

namespace zipstrata::fzip {

using coxeter::ParabolicType;
using coxeter::WeylElement;
using coxeter::WeylGroup;
using ff::Elem;
using nlohmann::json;

namespace {

FZipType clean(const FZipType& t) {
  FZipType out;
  for (const auto& [w, m] : t) {
    if (m < 0) throw InvalidArgument("negative multiplicity in F-zip type");
    if (m > 0) out[w] = m;
  }
  return out;
}

std::vector<int> pivots(const Mat& echelon) {
  std::vector<int> out;
  for (int j = 0; j < echelon.cols; ++j)
    for (int i = 0; i < echelon.rows; ++i)
      if (echelon(i, j) != 0) {
        out.push_back(i);
        break;
      }
  return out;
}

Mat zero_space(int n) { return Mat(n, 0); }

// Echelon columns of big whose pivots are not pivots of small (small inside big).
Mat graded_basis(const Field& f, const Mat& big, const Mat& small) {
  const Mat e = ff::column_echelon(f, big);
  const auto pb = pivots(e);
  const auto ps = pivots(ff::column_echelon(f, small));
  std::vector<int> keep;
  for (int j = 0; j < e.cols; ++j)
    if (std::find(ps.begin(), ps.end(), pb[j]) == ps.end()) keep.push_back(j);
  Mat out(e.rows, static_cast<int>(keep.size()));
  for (std::size_t t = 0; t < keep.size(); ++t)
    for (int i = 0; i < e.rows; ++i) out(i, static_cast<int>(t)) = e(i, keep[t]);
  return out;
}

// Coordinates of v (columns) in the basis gr of big/small, modulo small.
Mat graded_coordinates(const Field& f, const Mat& gr, const Mat& small, const Mat& v) {
  const Mat basis = ff::hconcat(gr, ff::column_echelon(f, small));
  const Mat coords = ff::solve_in_span(f, basis, v);
  Mat out(gr.cols, v.cols);
  for (int i = 0; i < gr.cols; ++i)
    for (int j = 0; j < v.cols; ++j) out(i, j) = coords(i, j);
  return out;
}

Mat select_columns(const Mat& m, const std::vector<int>& idx) {
  Mat out(m.rows, static_cast<int>(idx.size()));
  for (std::size_t t = 0; t < idx.size(); ++t)
    for (int i = 0; i < m.rows; ++i) out(i, static_cast<int>(t)) = m(i, idx[t]);
  return out;
}

int dim(const Field& f, const Mat& m) { return m.cols == 0 ? 0 : ff::rank(f, m); }

bool same_span(const Field& f, const Mat& a, const Mat& b) {
  return dim(f, a) == dim(f, b) && ff::span_contains(f, a, b);
}

int log_p(int p, std::uint64_t q) {
  int d = 0;
  while (q > 1) {
    if (q % p != 0) throw InvalidArgument("q is not a power of p");
    q /= p;
    ++d;
  }
  if (d == 0) throw InvalidArgument("q must be at least p");
  return d;
}

}  // namespace

// ---------------------------------------------------------------------------

TypeParabolic type_to_parabolic(const FZipType& t) {
  const FZipType c = clean(t);
  if (c.empty()) throw InvalidArgument("F-zip type has total rank 0");
  TypeParabolic out;
  for (const auto& [w, m] : c) {
    out.weights.push_back(w);
    out.blocks.push_back(m);
    out.n += m;
  }
  if (out.n >= 2) out.I = lab::blocks_to_parabolic(out.blocks);
  return out;
}

zip::StratumPoset enumerate_strata(const FZipType& t) {
  const auto tp = type_to_parabolic(t);
  if (tp.n < 2) throw InvalidArgument("a rank-1 F-zip has a single stratum and no Weyl group");
  WeylGroup w = lab::gl_weyl(tp.n);
  return zip::stratum_poset(zip::zip_from_cocharacter(w, tp.I, WeylGroup::identity_automorphism(tp.n - 1), true));
}

std::string type_to_string(const FZipType& t) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [w, m] : clean(t)) {
    os << (first ? "" : ", ") << w << ":" << m;
    first = false;
  }
  os << '}';
  return os.str();
}

FZipType tensor_type(const FZipType& a, const FZipType& b) {
  FZipType out;
  for (const auto& [wa, ma] : clean(a))
    for (const auto& [wb, mb] : clean(b)) out[wa + wb] += ma * mb;
  return out;
}

FZipType dual_type(const FZipType& a) {
  FZipType out;
  for (const auto& [w, m] : clean(a)) out[-w] = m;
  return out;
}

// ---------------------------------------------------------------------------

std::uint64_t FZip::q() const {
  std::uint64_t r = 1;
  for (int i = 0; i < d; ++i) r *= static_cast<std::uint64_t>(p);
  return r;
}

Mat FZip::C_at(int i) const {
  auto it = C.lower_bound(i);
  return it == C.end() ? zero_space(n) : it->second;
}

Mat FZip::D_at(int i) const {
  auto it = D.upper_bound(i);
  return it == D.begin() ? zero_space(n) : std::prev(it)->second;
}

FZipType FZip::type() const {
  FZipType t;
  for (const auto& [i, m] : C) {
    const int g = dim(*field, C_at(i)) - dim(*field, C_at(i + 1));
    if (g > 0) t[i] = g;
  }
  return t;
}

void FZip::validate() const {
  if (!field) throw InvariantViolation("F-zip without field");
  if (field->p() != p || field->degree() != d * s) throw InvariantViolation("F-zip field does not match p, q, s");
  if (n < 1) throw InvariantViolation("F-zip of rank 0");
  if (C.empty() || D.empty()) throw InvariantViolation("F-zip filtrations are empty");
  auto check_entries = [&](const Mat& m, const char* what) {
    if (m.rows != n) throw InvariantViolation(std::string(what) + " has the wrong number of rows");
    for (Elem e : m.a)
      if (e >= field->order()) throw InvariantViolation(std::string(what) + " has an entry outside the field");
  };
  for (const auto& [i, m] : C) check_entries(m, "C");
  for (const auto& [i, m] : D) check_entries(m, "D");

  if (dim(*field, C.begin()->second) != n) throw InvariantViolation("C does not start at the whole space");
  for (auto it = C.begin(); std::next(it) != C.end(); ++it)
    if (!ff::span_contains(*field, it->second, std::next(it)->second))
      throw InvariantViolation("C is not descending at index " + std::to_string(std::next(it)->first));
  if (dim(*field, D.rbegin()->second) != n) throw InvariantViolation("D does not end at the whole space");
  for (auto it = D.begin(); std::next(it) != D.end(); ++it)
    if (!ff::span_contains(*field, std::next(it)->second, it->second))
      throw InvariantViolation("D is not ascending at index " + std::to_string(std::next(it)->first));

  FZipType td;
  for (const auto& [i, m] : D) {
    const int g = dim(*field, D_at(i)) - dim(*field, D_at(i - 1));
    if (g > 0) td[i] = g;
  }
  const FZipType tc = type();
  if (tc != td)
    throw InvariantViolation("graded pieces of C " + type_to_string(tc) + " and D " + type_to_string(td) + " differ");
  for (const auto& [i, sl] : phi) {
    auto it = tc.find(i);
    if (it == tc.end()) {
      if (sl.matrix.rows != 0) throw InvariantViolation("phi given at a weight outside the type");
      continue;
    }
    if (sl.matrix.rows != it->second || sl.matrix.cols != it->second)
      throw InvariantViolation("phi_" + std::to_string(i) + " has the wrong size");
    if (sl.frob_exp != d) throw InvariantViolation("phi_" + std::to_string(i) + " must be q-semilinear");
    for (Elem e : sl.matrix.a)
      if (e >= field->order()) throw InvariantViolation("phi has an entry outside the field");
    if (!ff::is_invertible(*field, sl.matrix)) throw InvariantViolation("phi_" + std::to_string(i) + " is not invertible");
  }
  for (const auto& [i, m] : tc)
    if (!phi.count(i)) throw InvariantViolation("phi_" + std::to_string(i) + " is missing");
}

bool FZip::operator==(const FZip& o) const {
  if (p != o.p || d != o.d || s != o.s || n != o.n || C.size() != o.C.size() || D.size() != o.D.size() ||
      phi.size() != o.phi.size())
    return false;
  for (const auto& [i, m] : C) {
    auto it = o.C.find(i);
    if (it == o.C.end() || it->second != m) return false;
  }
  for (const auto& [i, m] : D) {
    auto it = o.D.find(i);
    if (it == o.D.end() || it->second != m) return false;
  }
  for (const auto& [i, sl] : phi) {
    auto it = o.phi.find(i);
    if (it == o.phi.end() || it->second.matrix != sl.matrix || it->second.frob_exp != sl.frob_exp) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

FZip from_adapted_bases(int p, int d, int s, const Mat& c, const Mat& dm, const std::vector<int>& weights) {
  FZip z;
  z.p = p;
  z.d = d;
  z.s = s;
  z.n = c.rows;
  z.field = ff::get_field(p, d * s);
  const Field& f = *z.field;
  if (!c.is_square() || dm.rows != c.rows || dm.cols != c.cols || static_cast<int>(weights.size()) != z.n)
    throw InvalidArgument("adapted bases have inconsistent sizes");
  if (!std::is_sorted(weights.begin(), weights.end())) throw InvalidArgument("weights must be nondecreasing");
  if (!ff::is_invertible(f, c) || !ff::is_invertible(f, dm)) throw InvalidArgument("adapted bases must be invertible");

  std::vector<int> uniq = weights;
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  auto cols_where = [&](auto pred) {
    std::vector<int> idx;
    for (int k = 0; k < z.n; ++k)
      if (pred(weights[k])) idx.push_back(k);
    return idx;
  };
  for (int w : uniq) {
    z.C[w] = ff::column_echelon(f, select_columns(c, cols_where([&](int x) { return x >= w; })));
    z.D[w] = ff::column_echelon(f, select_columns(dm, cols_where([&](int x) { return x <= w; })));
  }
  z.C[uniq.back() + 1] = zero_space(z.n);
  z.D[uniq.front() - 1] = zero_space(z.n);

  const Mat cinv = ff::inverse(f, c);
  for (int w : uniq) {
    const auto block = cols_where([&](int x) { return x == w; });
    const Mat grc = graded_basis(f, z.C_at(w), z.C_at(w + 1));
    const Mat grd = graded_basis(f, z.D_at(w), z.D_at(w - 1));
    // phi(v) for v = sum lambda_k c_k: only weight-w coordinates survive, twisted by Frob.
    const Mat lambda = ff::mul(f, cinv, grc);
    Mat lw(static_cast<int>(block.size()), grc.cols);
    for (std::size_t t = 0; t < block.size(); ++t)
      for (int j = 0; j < grc.cols; ++j) lw(static_cast<int>(t), j) = lambda(block[t], j);
    const Mat image = ff::mul(f, select_columns(dm, block), ff::frob(f, lw, d));
    z.phi[w] = {graded_coordinates(f, grd, z.D_at(w - 1), image), d};
  }
  z.validate();
  return z;
}

AdaptedBases adapted_bases(const FZip& z) {
  z.validate();
  const Field& f = *z.field;
  AdaptedBases out{Mat(z.n, 0), Mat(z.n, 0), {}};
  for (const auto& [w, m] : z.type()) {
    const Mat grc = graded_basis(f, z.C_at(w), z.C_at(w + 1));
    const Mat grd = graded_basis(f, z.D_at(w), z.D_at(w - 1));
    out.c = ff::hconcat(out.c, grc);
    out.d = ff::hconcat(out.d, ff::mul(f, grd, z.phi.at(w).matrix));
    for (int k = 0; k < m; ++k) out.weights.push_back(w);
  }
  return out;
}

FZip from_group_element(const FZipType& t, const Mat& g, int p, int d, int s) {
  const auto tp = type_to_parabolic(t);
  if (g.rows != tp.n || !g.is_square()) throw InvalidArgument("group element does not match the type");
  std::vector<int> weights;
  for (std::size_t b = 0; b < tp.blocks.size(); ++b)
    for (int k = 0; k < tp.blocks[b]; ++k) weights.push_back(tp.weights[b]);
  return from_adapted_bases(p, d, s, Mat::identity(tp.n), g, weights);
}

Mat group_element(const FZip& z) {
  const auto ab = adapted_bases(z);
  return ff::mul(*z.field, ff::inverse(*z.field, ab.c), ab.d);
}

FZip transport(const FZip& z, const Mat& a) {
  const auto ab = adapted_bases(z);
  const Field& f = *z.field;
  return from_adapted_bases(z.p, z.d, z.s, ff::mul(f, a, ab.c), ff::mul(f, a, ab.d), ab.weights);
}

FZip tate_zip(int weight, int p, int d, int s) {
  return from_adapted_bases(p, d, s, Mat::identity(1), Mat::identity(1), {weight});
}

FZip tensor(const FZip& a, const FZip& b) {
  if (a.p != b.p || a.d != b.d || a.s != b.s) throw InvalidArgument("tensor product of F-zips over different fields");
  const Field& f = *a.field;
  const auto x = adapted_bases(a);
  const auto y = adapted_bases(b);
  const Mat c = ff::kron(f, x.c, y.c);
  const Mat dm = ff::kron(f, x.d, y.d);
  std::vector<int> w;
  for (int wa : x.weights)
    for (int wb : y.weights) w.push_back(wa + wb);
  std::vector<int> order(w.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return w[i] < w[j]; });
  std::vector<int> ws;
  for (int i : order) ws.push_back(w[i]);
  return from_adapted_bases(a.p, a.d, a.s, select_columns(c, order), select_columns(dm, order), ws);
}

FZip dual(const FZip& a) {
  const Field& f = *a.field;
  const auto x = adapted_bases(a);
  const Mat c = ff::transpose(ff::inverse(f, x.c));
  const Mat dm = ff::transpose(ff::inverse(f, x.d));
  std::vector<int> order(x.weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::reverse(order.begin(), order.end());
  std::vector<int> ws;
  for (int i : order) ws.push_back(-x.weights[i]);
  return from_adapted_bases(a.p, a.d, a.s, select_columns(c, order), select_columns(dm, order), ws);
}

FZip dieudonne_to_fzip(const Field& field, const Mat& F, const Mat& V) {
  const int n = F.rows;
  if (n < 1 || !F.is_square() || !V.is_square() || V.rows != n)
    throw InvalidArgument("F and V must be square matrices of the same size");
  for (Elem e : F.a)
    if (e >= field.order()) throw InvalidArgument("F has an entry outside the field");
  for (Elem e : V.a)
    if (e >= field.order()) throw InvalidArgument("V has an entry outside the field");
  const Field& f = field;
  const int k = f.degree();
  // F(v) = F Frob(v), V(v) = V Frob^{-1}(v).
  const Mat kerF = ff::frob(f, ff::kernel(f, F), k - 1);
  const Mat kerV = ff::frob(f, ff::kernel(f, V), 1);
  if (!same_span(f, V, kerF)) throw ImKerMismatch("image of V differs from kernel of F");
  if (!same_span(f, F, kerV)) throw ImKerMismatch("image of F differs from kernel of V");

  FZip z;
  z.p = f.p();
  z.d = 1;
  z.s = k;
  z.n = n;
  z.field = ff::get_field(f.p(), k);
  const Mat full = Mat::identity(n);
  const Mat c1 = ff::column_echelon(f, kerF);
  const Mat d0 = ff::column_echelon(f, kerV);
  z.C = {{0, full}, {1, c1}, {2, zero_space(n)}};
  z.D = {{-1, zero_space(n)}, {0, d0}, {1, full}};

  if (n - c1.cols > 0) {
    const Mat grc = graded_basis(f, full, c1);
    const Mat image = ff::mul(f, F, ff::frob(f, grc, 1));
    z.phi[0] = {graded_coordinates(f, d0, zero_space(n), image), 1};
  }
  if (c1.cols > 0) {
    // phi_1 = V^{-1}: x = V z' with z' = Frob^{-1}(y), so y = Frob(z').
    std::vector<int> indep;
    Mat acc(n, 0);
    for (int j = 0; j < n; ++j) {
      Mat cand = ff::hconcat(acc, ff::columns(V, j, 1));
      if (ff::rank(f, cand) > acc.cols) {
        acc = cand;
        indep.push_back(j);
      }
    }
    const Mat coords = ff::solve_in_span(f, acc, c1);
    Mat zz(n, c1.cols);
    for (std::size_t t = 0; t < indep.size(); ++t)
      for (int j = 0; j < c1.cols; ++j) zz(indep[t], j) = coords(static_cast<int>(t), j);
    const Mat y = ff::frob(f, zz, 1);
    const Mat grd = graded_basis(f, full, d0);
    z.phi[1] = {graded_coordinates(f, grd, d0, y), 1};
  }
  z.validate();
  return z;
}

// ---------------------------------------------------------------------------

std::string StratumLabel::word_string() const { return w ? w->word_string() : std::string("e"); }

StratumLabel classify(const FZip& z, int max_ext) {
  z.validate();
  if (max_ext < z.s) throw InvalidArgument("max extension degree is below the working extension degree");
  const auto tp = type_to_parabolic(z.type());
  const Mat g = group_element(z);
  if (tp.n == 1) {
    StratumLabel l;
    l.ext = z.s;
    l.g = g;
    l.certificate = {Mat::identity(1), Mat::identity(1)};
    return l;
  }
  WeylGroup W = lab::gl_weyl(tp.n);
  const auto reps = W.min_coset_reps(tp.I);
  for (int ext = z.s; ext <= max_ext; ext += z.s) {
    auto zd = lab::standard_datum(tp.blocks, z.p, z.d, ext);
    const Mat G = ff::map_entries(g, ff::embedding(*z.field, *zd.field));
    std::vector<StratumLabel> hits;
    for (const auto& w : reps) {
      auto t = lab::transporter(zd, G, lab::standard_representative(zd, w), 1ULL << 24, 1);
      if (t.empty()) continue;
      StratumLabel l;
      l.w = w;
      l.length = w.length();
      l.word = w.reduced_word();
      l.ext = ext;
      l.g = G;
      l.certificate = t.front();
      hits.push_back(l);
    }
    if (hits.size() > 1) throw InvariantViolation("F-zip matches several standard representatives");
    if (hits.size() == 1) return hits.front();
  }
  throw Undetermined("no standard representative reached for type " + type_to_string(z.type()), max_ext);
}

// ---------------------------------------------------------------------------

namespace {

Elem parse_elem(const Field& f, const json& v) {
  if (v.is_number_integer()) {
    const long long x = v.get<long long>();
    if (x < 0 || static_cast<unsigned long long>(x) >= f.order()) throw InvalidArgument("field element out of range");
    return static_cast<Elem>(x);
  }
  if (v.is_array()) {
    std::vector<int> c = v.get<std::vector<int>>();
    if (static_cast<int>(c.size()) > f.degree()) throw InvalidArgument("coefficient array longer than the field degree");
    for (int x : c)
      if (x < 0 || x >= f.p()) throw InvalidArgument("coefficient outside F_p");
    c.resize(f.degree(), 0);
    return f.from_coeffs(c);
  }
  throw InvalidArgument("field element must be an integer or a coefficient array");
}

Mat parse_cols(const Field& f, int n, const json& cols) {
  if (!cols.is_array()) throw InvalidArgument("\"cols\" must be a list of column vectors");
  Mat m(n, static_cast<int>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (!cols[j].is_array() || static_cast<int>(cols[j].size()) != n)
      throw InvalidArgument("column vector of the wrong length");
    for (int i = 0; i < n; ++i) m(i, static_cast<int>(j)) = parse_elem(f, cols[j][i]);
  }
  return m;
}

Mat parse_rows(const Field& f, const json& rows) {
  if (!rows.is_array()) throw InvalidArgument("\"matrix\" must be a list of rows");
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  Mat m(r, c);
  for (int i = 0; i < r; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != c) throw InvalidArgument("ragged matrix");
    for (int j = 0; j < c; ++j) m(i, j) = parse_elem(f, rows[i][j]);
  }
  return m;
}

json cols_to_json(const Mat& m) {
  json out = json::array();
  for (int j = 0; j < m.cols; ++j) {
    json col = json::array();
    for (int i = 0; i < m.rows; ++i) col.push_back(m(i, j));
    out.push_back(col);
  }
  return out;
}

}  // namespace

FZip parse_fzip_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed F-zip JSON: ") + e.what());
  }
  try {
    FZip z;
    z.p = j.at("p").get<int>();
    if (!ff::is_prime(z.p)) throw InvalidArgument("p must be prime");
    z.d = log_p(z.p, j.at("q").get<std::uint64_t>());
    z.s = j.value("ext_deg", 1);
    if (z.s < 1) throw InvalidArgument("ext_deg must be positive");
    z.n = j.at("n").get<int>();
    if (z.n < 1) throw InvalidArgument("n must be positive");
    z.field = ff::get_field(z.p, z.d * z.s);
    const Field& f = *z.field;
    for (const auto& e : j.at("C")) z.C[e.at("i").get<int>()] = ff::column_echelon(f, parse_cols(f, z.n, e.at("cols")));
    for (const auto& e : j.at("D")) z.D[e.at("i").get<int>()] = ff::column_echelon(f, parse_cols(f, z.n, e.at("cols")));
    for (const auto& e : j.at("phi"))
      z.phi[e.at("i").get<int>()] = {parse_rows(f, e.at("matrix")), e.value("frob_exp", z.d)};
    z.validate();
    return z;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("F-zip JSON does not follow the schema: ") + e.what());
  }
}

std::string fzip_to_json(const FZip& z) {
  json j;
  j["p"] = z.p;
  j["q"] = z.q();
  j["ext_deg"] = z.s;
  j["n"] = z.n;
  json c = json::array(), d = json::array(), phi = json::array();
  for (const auto& [i, m] : z.C) c.push_back({{"i", i}, {"cols", cols_to_json(m)}});
  for (const auto& [i, m] : z.D) d.push_back({{"i", i}, {"cols", cols_to_json(m)}});
  for (const auto& [i, sl] : z.phi) phi.push_back({{"i", i}, {"matrix", sl.matrix.to_rows()}, {"frob_exp", sl.frob_exp}});
  j["C"] = c;
  j["D"] = d;
  j["phi"] = phi;
  return j.dump(2) + "\n";
}

}  // namespace zipstrata::fzip
