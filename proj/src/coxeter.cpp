#include "zipstrata/coxeter.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <set>

#include "zipstrata/errors.hpp"

namespace zipstrata::coxeter {

char family_letter(Family f) {
  switch (f) {
    case Family::A: return 'A';
    case Family::B: return 'B';
    case Family::C: return 'C';
    case Family::D: return 'D';
  }
  return '?';
}

Family parse_family(const std::string& s) {
  if (s == "A" || s == "a") return Family::A;
  if (s == "B" || s == "b") return Family::B;
  if (s == "C" || s == "c") return Family::C;
  if (s == "D" || s == "d") return Family::D;
  throw InvalidArgument("unsupported Weyl group family '" + s + "' (expected A, B, C or D)");
}

// ---------------------------------------------------------------------------
// ParabolicType

ParabolicType::ParabolicType(std::vector<int> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

ParabolicType ParabolicType::full(int rank) {
  std::vector<int> all(rank);
  std::iota(all.begin(), all.end(), 1);
  return ParabolicType(std::move(all));
}

bool ParabolicType::contains(int i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

// ---------------------------------------------------------------------------
// WeylElement

namespace {

bool root_image_positive(int a, int ca, int b, int cb) {
  // sign of the first nonzero coordinate of ca*e_a + cb*e_b (a != b, |a|,|b| >= 1)
  if (cb == 0 || a < b) return ca > 0;
  return cb > 0;
}

// Image of the vector c*e_i under w as (index, coefficient).
inline std::pair<int, int> act(const std::vector<int>& window, int i, int c) {
  int img = window[i - 1];
  return img > 0 ? std::pair{img, c} : std::pair{-img, -c};
}

}  // namespace

WeylElement::WeylElement(CoxeterType type, std::vector<int> window)
    : type_(type), window_(std::move(window)) {
  const int n = type_.degree();
  if (static_cast<int>(window_.size()) != n)
    throw InvalidArgument("window has wrong size for " + std::string(1, family_letter(type_.family)) +
                          std::to_string(type_.rank));
  std::vector<bool> seen(n + 1, false);
  int negatives = 0;
  for (int v : window_) {
    int a = std::abs(v);
    if (a < 1 || a > n || seen[a]) throw InvalidArgument("window is not a signed permutation");
    seen[a] = true;
    if (v < 0) ++negatives;
  }
  if (type_.family == Family::A && negatives > 0)
    throw InvalidArgument("type A elements are unsigned permutations");
  if (type_.family == Family::D && negatives % 2 != 0)
    throw InvalidArgument("type D elements need an even number of sign changes");
}

WeylElement WeylElement::identity(CoxeterType type) {
  std::vector<int> w(type.degree());
  std::iota(w.begin(), w.end(), 1);
  return WeylElement(type, std::move(w));
}

WeylElement WeylElement::operator*(const WeylElement& other) const {
  if (!(type_ == other.type_)) throw GroupMismatch("multiplying elements of different Weyl groups");
  std::vector<int> out(window_.size());
  for (std::size_t i = 0; i < window_.size(); ++i) out[i] = (*this)(other.window_[i]);
  WeylElement r = *this;
  r.window_ = std::move(out);
  return r;
}

WeylElement WeylElement::inverse() const {
  std::vector<int> out(window_.size());
  for (std::size_t i = 0; i < window_.size(); ++i) {
    int v = window_[i];
    int idx = static_cast<int>(i) + 1;
    if (v > 0)
      out[v - 1] = idx;
    else
      out[-v - 1] = -idx;
  }
  WeylElement r = *this;
  r.window_ = std::move(out);
  return r;
}

WeylElement WeylElement::right_mul_simple(int i) const {
  WeylElement r = *this;
  auto& w = r.window_;
  const int rank = type_.rank;
  if (type_.family == Family::A || i < rank) {
    std::swap(w[i - 1], w[i]);
  } else if (type_.family == Family::D) {
    // s_rank: e_{r-1} -> -e_r, e_r -> -e_{r-1}
    int a = w[rank - 2], b = w[rank - 1];
    w[rank - 2] = -b;
    w[rank - 1] = -a;
  } else {
    w[rank - 1] = -w[rank - 1];
  }
  return r;
}

WeylElement WeylElement::left_mul_simple(int i) const {
  return inverse().right_mul_simple(i).inverse();
}

int WeylElement::length() const {
  const int n = static_cast<int>(window_.size());
  int len = 0;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      auto [a, ca] = act(window_, i, 1);
      auto [b, cb] = act(window_, j, -1);
      if (!root_image_positive(a, ca, b, cb)) ++len;  // e_i - e_j
      if (type_.family != Family::A) {
        auto [b2, cb2] = act(window_, j, 1);
        if (!root_image_positive(a, ca, b2, cb2)) ++len;  // e_i + e_j
      }
    }
    if (type_.family == Family::B || type_.family == Family::C) {
      if (window_[i - 1] < 0) ++len;  // e_i or 2e_i
    }
  }
  return len;
}

bool WeylElement::is_identity() const {
  for (std::size_t i = 0; i < window_.size(); ++i)
    if (window_[i] != static_cast<int>(i) + 1) return false;
  return true;
}

bool WeylElement::is_right_descent(int i) const {
  // w(alpha_i) < 0
  const int rank = type_.rank;
  if (type_.family == Family::A || i < rank) {
    auto [a, ca] = act(window_, i, 1);
    auto [b, cb] = act(window_, i + 1, -1);
    return !root_image_positive(a, ca, b, cb);
  }
  if (type_.family == Family::D) {
    auto [a, ca] = act(window_, rank - 1, 1);
    auto [b, cb] = act(window_, rank, 1);
    return !root_image_positive(a, ca, b, cb);
  }
  return window_[rank - 1] < 0;
}

bool WeylElement::is_left_descent(int i) const { return inverse().is_right_descent(i); }

std::vector<int> WeylElement::right_descents() const {
  std::vector<int> d;
  for (int i = 1; i <= type_.rank; ++i)
    if (is_right_descent(i)) d.push_back(i);
  return d;
}

std::vector<int> WeylElement::left_descents() const { return inverse().right_descents(); }

std::vector<int> WeylElement::reduced_word() const {
  std::vector<int> word;
  WeylElement cur = inverse();  // left descents of w are right descents of w^{-1}
  while (!cur.is_identity()) {
    for (int i = 1; i <= type_.rank; ++i) {
      if (cur.is_right_descent(i)) {
        word.push_back(i);
        cur = cur.right_mul_simple(i);
        break;
      }
    }
  }
  return word;
}

std::string WeylElement::word_string() const {
  auto word = reduced_word();
  if (word.empty()) return "e";
  std::string s;
  for (int i : word) s += "s" + std::to_string(i);
  return s;
}

bool canonical_less(const WeylElement& a, const WeylElement& b) {
  int la = a.length(), lb = b.length();
  if (la != lb) return la < lb;
  return a.reduced_word() < b.reduced_word();
}

void sort_canonical(std::vector<WeylElement>& elems) {
  std::vector<std::pair<std::pair<int, std::vector<int>>, std::size_t>> keys;
  keys.reserve(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i)
    keys.push_back({{elems[i].length(), elems[i].reduced_word()}, i});
  std::sort(keys.begin(), keys.end());
  std::vector<WeylElement> out;
  out.reserve(elems.size());
  for (auto& k : keys) out.push_back(elems[k.second]);
  elems = std::move(out);
}

std::size_t WeylElementHash::operator()(const WeylElement& w) const {
  std::size_t h = static_cast<std::size_t>(w.type().family) * 131 + w.type().rank;
  for (int v : w.window()) h = h * 1000003u + static_cast<std::size_t>(v + 64);
  return h;
}

// ---------------------------------------------------------------------------
// WeylGroup

WeylGroup::WeylGroup(Family family, int rank) : type_{family, rank} {
  if (rank < 1) throw InvalidArgument("rank must be at least 1");
  if (family == Family::D && rank < 2) throw InvalidArgument("type D needs rank at least 2");
  if (rank > 60) throw InvalidArgument("rank too large");
  switch (family) {
    case Family::A: positive_roots_ = rank * (rank + 1) / 2; break;
    case Family::B:
    case Family::C: positive_roots_ = rank * rank; break;
    case Family::D: positive_roots_ = rank * (rank - 1); break;
  }
  if (longest_element().length() != positive_roots_)
    throw InvariantViolation("longest element length differs from positive root count");
}

std::string WeylGroup::order_string() const {
  // decimal big-number product, kept tiny on purpose
  std::vector<int> digits{1};  // little endian
  auto mul = [&](int f) {
    int carry = 0;
    for (int& d : digits) {
      int v = d * f + carry;
      d = v % 10;
      carry = v / 10;
    }
    while (carry) {
      digits.push_back(carry % 10);
      carry /= 10;
    }
  };
  const int r = rank();
  switch (family()) {
    case Family::A:
      for (int i = 2; i <= r + 1; ++i) mul(i);
      break;
    case Family::B:
    case Family::C:
      for (int i = 1; i <= r; ++i) mul(2 * i);
      break;
    case Family::D:
      for (int i = 1; i <= r; ++i) mul(i);
      for (int i = 1; i < r; ++i) mul(2);
      break;
  }
  std::string s;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) s += static_cast<char>('0' + *it);
  return s;
}

std::uint64_t WeylGroup::order() const {
  auto s = order_string();
  if (s.size() > 19) throw InvalidArgument("group order does not fit in 64 bits: " + s);
  return std::stoull(s);
}

WeylElement WeylGroup::simple(int i) const {
  if (i < 1 || i > rank()) throw InvalidArgument("simple index out of range: " + std::to_string(i));
  return identity().right_mul_simple(i);
}

WeylElement WeylGroup::from_word(const std::vector<int>& word) const {
  WeylElement w = identity();
  for (int i : word) {
    if (i < 1 || i > rank()) throw InvalidArgument("word letter out of range: " + std::to_string(i));
    w = w.right_mul_simple(i);
  }
  return w;
}

std::vector<std::vector<int>> WeylGroup::cartan_matrix() const {
  const int r = rank();
  std::vector<std::vector<int>> a(r, std::vector<int>(r, 0));
  for (int i = 0; i < r; ++i) a[i][i] = 2;
  for (int i = 0; i + 1 < r; ++i) a[i][i + 1] = a[i + 1][i] = -1;
  switch (family()) {
    case Family::A: break;
    case Family::B:
      // a_ij = <alpha_i^vee, alpha_j>; alpha_r short
      if (r >= 2) a[r - 2][r - 1] = -2, a[r - 1][r - 2] = -1;
      break;
    case Family::C:
      if (r >= 2) a[r - 2][r - 1] = -1, a[r - 1][r - 2] = -2;
      break;
    case Family::D:
      if (r == 2) {
        a[0][1] = a[1][0] = 0;
      } else {
        a[r - 2][r - 1] = a[r - 1][r - 2] = 0;
        a[r - 3][r - 1] = a[r - 1][r - 3] = -1;
      }
      break;
  }
  return a;
}

WeylElement WeylGroup::longest_element() const { return longest_element(ParabolicType::full(rank())); }

WeylElement WeylGroup::longest_element(const ParabolicType& k) const {
  WeylElement w = identity();
  bool grew = true;
  while (grew) {
    grew = false;
    for (int i : k.indices()) {
      if (!w.is_right_descent(i)) {
        w = w.right_mul_simple(i);
        grew = true;
      }
    }
  }
  return w;
}

std::vector<WeylElement> WeylGroup::parabolic_elements(const ParabolicType& k) const {
  for (int i : k.indices())
    if (i < 1 || i > rank()) throw InvalidArgument("parabolic index out of range");
  const std::uint64_t expected = parabolic_order(k);
  if (expected > kExhaustionGuard) throw TooLarge("enumerating parabolic subgroup", expected, kExhaustionGuard);
  std::unordered_map<WeylElement, bool, WeylElementHash> seen;
  std::vector<WeylElement> out{identity()};
  seen.emplace(identity(), true);
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (int i : k.indices()) {
      WeylElement x = out[head].right_mul_simple(i);
      if (seen.emplace(x, true).second) out.push_back(x);
    }
  }
  sort_canonical(out);
  return out;
}

std::uint64_t WeylGroup::parabolic_order(const ParabolicType& k) const {
  // connected components of the sub-diagram; each is of a classical type
  auto cart = cartan_matrix();
  std::vector<int> idx = k.indices();
  std::vector<bool> used(rank() + 1, false);
  unsigned __int128 total = 1;
  for (int start : idx) {
    if (used[start]) continue;
    std::vector<int> comp;
    std::deque<int> q{start};
    used[start] = true;
    while (!q.empty()) {
      int a = q.front();
      q.pop_front();
      comp.push_back(a);
      for (int b : idx)
        if (!used[b] && cart[a - 1][b - 1] != 0) {
          used[b] = true;
          q.push_back(b);
        }
    }
    const int m = static_cast<int>(comp.size());
    bool has_last = std::find(comp.begin(), comp.end(), rank()) != comp.end();
    unsigned __int128 ord = 1;
    auto fact = [](int x) {
      unsigned __int128 f = 1;
      for (int i = 2; i <= x; ++i) f *= i;
      return f;
    };
    if (family() == Family::A || !has_last) {
      ord = fact(m + 1);
    } else if (family() == Family::B || family() == Family::C) {
      ord = fact(m);
      for (int i = 0; i < m; ++i) ord *= 2;
    } else if (rank() == 2) {
      ord = 2;
    } else {
      bool has_r1 = std::find(comp.begin(), comp.end(), rank() - 1) != comp.end();
      bool has_r2 = std::find(comp.begin(), comp.end(), rank() - 2) != comp.end();
      if (has_r1 && has_r2) {
        ord = fact(m);  // D_m
        for (int i = 0; i + 1 < m; ++i) ord *= 2;
      } else {
        ord = fact(m + 1);
      }
    }
    total *= ord;
  }
  if (total > static_cast<unsigned __int128>(UINT64_MAX)) return UINT64_MAX;
  return static_cast<std::uint64_t>(total);
}

bool WeylGroup::is_min_coset_rep(const ParabolicType& k, const WeylElement& w) const {
  for (int i : k.indices())
    if (w.is_left_descent(i)) return false;
  return true;
}

std::vector<WeylElement> WeylGroup::min_coset_reps(const ParabolicType& k) const {
  for (int i : k.indices())
    if (i < 1 || i > rank()) throw InvalidArgument("parabolic index out of range");
  // ^K W is an order ideal of the right weak order: grow by right multiplication.
  std::unordered_map<WeylElement, bool, WeylElementHash> seen;
  std::vector<WeylElement> out{identity()};
  seen.emplace(identity(), true);
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (int i = 1; i <= rank(); ++i) {
      const WeylElement& w = out[head];
      if (w.is_right_descent(i)) continue;
      WeylElement x = w.right_mul_simple(i);
      if (!is_min_coset_rep(k, x)) continue;
      if (seen.emplace(x, true).second) {
        out.push_back(x);
        if (out.size() > kExhaustionGuard) throw TooLarge("enumerating ^K W", out.size(), kExhaustionGuard);
      }
    }
  }
  sort_canonical(out);
  return out;
}

WeylElement WeylGroup::min_double_coset_rep(const ParabolicType& k, const WeylElement& w,
                                            const ParabolicType& k2) const {
  check_member(w);
  WeylElement x = w;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i : k.indices())
      if (x.is_left_descent(i)) {
        x = x.left_mul_simple(i);
        changed = true;
      }
    for (int i : k2.indices())
      if (x.is_right_descent(i)) {
        x = x.right_mul_simple(i);
        changed = true;
      }
  }
  return x;
}

WeylElement WeylGroup::min_double_coset_rep_exhaustive(const ParabolicType& k, const WeylElement& w,
                                                       const ParabolicType& k2) const {
  check_member(w);
  auto left = parabolic_elements(k);
  auto right = parabolic_elements(k2);
  WeylElement best = w;
  for (const auto& u : left)
    for (const auto& v : right) {
      WeylElement x = u * w * v;
      if (canonical_less(x, best)) best = x;
    }
  return best;
}

std::vector<WeylElement> WeylGroup::double_coset_reps(const ParabolicType& k, const ParabolicType& k2) const {
  std::vector<WeylElement> out;
  for (const auto& w : min_coset_reps(k)) {
    bool ok = true;
    for (int i : k2.indices())
      if (w.is_right_descent(i)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(w);
  }
  return out;
}

DiagramAutomorphism WeylGroup::identity_automorphism(int rank) {
  DiagramAutomorphism d(rank);
  std::iota(d.begin(), d.end(), 1);
  return d;
}

bool WeylGroup::is_diagram_automorphism(const DiagramAutomorphism& delta) const {
  const int r = rank();
  if (static_cast<int>(delta.size()) != r) return false;
  std::vector<bool> seen(r + 1, false);
  for (int v : delta) {
    if (v < 1 || v > r || seen[v]) return false;
    seen[v] = true;
  }
  auto a = cartan_matrix();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (a[i][j] != a[delta[i] - 1][delta[j] - 1]) return false;
  return true;
}

std::vector<DiagramAutomorphism> WeylGroup::diagram_automorphisms() const {
  std::vector<DiagramAutomorphism> out;
  auto d = identity_automorphism(rank());
  if (rank() > 8) {
    // only the classical candidates: identity, reversal, swap of the two last nodes
    std::vector<DiagramAutomorphism> cands{d};
    auto rev = d;
    std::reverse(rev.begin(), rev.end());
    cands.push_back(rev);
    auto sw = d;
    std::swap(sw[rank() - 2], sw[rank() - 1]);
    cands.push_back(sw);
    for (auto& c : cands)
      if (is_diagram_automorphism(c) && std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    std::sort(out.begin(), out.end());
    return out;
  }
  do {
    if (is_diagram_automorphism(d)) out.push_back(d);
  } while (std::next_permutation(d.begin(), d.end()));
  return out;
}

WeylElement WeylGroup::apply_diagram_automorphism(const DiagramAutomorphism& delta, const WeylElement& w) const {
  if (!is_diagram_automorphism(delta)) throw InvalidArgument("map is not a Coxeter graph automorphism");
  check_member(w);
  WeylElement x = identity();
  for (int i : w.reduced_word()) x = x.right_mul_simple(delta[i - 1]);
  return x;
}

ParabolicType WeylGroup::apply_diagram_automorphism(const DiagramAutomorphism& delta,
                                                    const ParabolicType& k) const {
  if (!is_diagram_automorphism(delta)) throw InvalidArgument("map is not a Coxeter graph automorphism");
  std::vector<int> out;
  for (int i : k.indices()) out.push_back(delta[i - 1]);
  return ParabolicType(out);
}

namespace {

// Permutation of 1..m as 0-based vector; rank matrix dominance test.
bool rank_dominated(const std::vector<int>& v, const std::vector<int>& w) {
  const int m = static_cast<int>(v.size());
  // r(i, j) = #{a <= i : x(a) >= j}
  std::vector<int> cv(m + 2, 0), cw(m + 2, 0);
  for (int i = 0; i < m; ++i) {
    // after adding position i, compare counts for all thresholds j
    for (int j = 1; j <= v[i]; ++j) ++cv[j];
    for (int j = 1; j <= w[i]; ++j) ++cw[j];
    for (int j = 1; j <= m; ++j)
      if (cv[j] > cw[j]) return false;
  }
  return true;
}

// Signed permutation (Bourbaki labelling) as a permutation of [+-n] in the
// order n' < ... , conjugated so that the sign generator is adjacent.
std::vector<int> embed_signed(const WeylElement& w) {
  const int n = static_cast<int>(w.window().size());
  // relabel i -> n+1-i so that the sign change acts on the first letter
  auto rho = [n](int i) { return i > 0 ? n + 1 - i : -(n + 1 + i); };
  auto pos = [n](int i) { return i < 0 ? i + n + 1 : i + n; };  // -n..-1,1..n -> 1..2n
  std::vector<int> out(2 * n);
  for (int i = -n; i <= n; ++i) {
    if (i == 0) continue;
    int img = rho(w(rho(i)));
    out[pos(i) - 1] = pos(img);
  }
  return out;
}

}  // namespace

bool WeylGroup::bruhat_leq(const WeylElement& v, const WeylElement& w) const {
  check_member(v);
  check_member(w);
  switch (family()) {
    case Family::A: return rank_dominated(v.window(), w.window());
    case Family::B:
    case Family::C: return rank_dominated(embed_signed(v), embed_signed(w));
    case Family::D: return bruhat_leq_lifting(v, w);
  }
  return false;
}

bool WeylGroup::bruhat_leq_lifting(const WeylElement& v0, const WeylElement& w0) const {
  check_member(v0);
  check_member(w0);
  WeylElement v = v0, w = w0;
  while (true) {
    if (v.length() > w.length()) return false;
    if (w.is_identity()) return v.is_identity();
    int s = w.right_descents().front();
    if (v.is_right_descent(s)) v = v.right_mul_simple(s);
    w = w.right_mul_simple(s);
  }
}

std::vector<WeylElement> WeylGroup::bruhat_ideal_subword(const WeylElement& w) const {
  check_member(w);
  auto word = w.reduced_word();
  std::unordered_map<WeylElement, bool, WeylElementHash> seen;
  std::vector<WeylElement> frontier{identity()};
  seen.emplace(identity(), true);
  // products of all subwords, built letter by letter
  for (int letter : word) {
    std::vector<WeylElement> next = frontier;
    for (const auto& x : frontier) {
      WeylElement y = x.right_mul_simple(letter);
      if (seen.emplace(y, true).second) next.push_back(y);
    }
    frontier = std::move(next);
  }
  sort_canonical(frontier);
  return frontier;
}

bool WeylGroup::bruhat_leq_subword(const WeylElement& v, const WeylElement& w) const {
  check_member(v);
  auto ideal = bruhat_ideal_subword(w);
  return std::find(ideal.begin(), ideal.end(), v) != ideal.end();
}

int WeylGroup::w0_conjugate_index(int i) const {
  WeylElement w0 = longest_element();
  WeylElement x = w0 * simple(i) * w0;
  for (int j = 1; j <= rank(); ++j)
    if (x == simple(j)) return j;
  throw InvariantViolation("w0 s_i w0 is not simple");
}

void WeylGroup::check_member(const WeylElement& w) const {
  if (!(w.type() == type_)) throw GroupMismatch("element does not belong to this Weyl group");
}

// ---------------------------------------------------------------------------
// IndexedWeylGroup

IndexedWeylGroup::IndexedWeylGroup(const WeylGroup& group) : group_(group) {
  elements_ = group_.elements();
  const std::size_t n = elements_.size();
  index_.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) index_.emplace(elements_[i], i);
  lengths_.resize(n);
  inverse_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    lengths_[i] = elements_[i].length();
    inverse_[i] = index_.at(elements_[i].inverse());
  }
  const std::size_t words = (n + 63) / 64;
  ideals_.assign(n, std::vector<std::uint64_t>(words, 0));
  // elements_ is sorted by length, so ideals of shorter elements are ready.
  for (std::size_t i = 0; i < n; ++i) {
    const WeylElement& w = elements_[i];
    auto& ideal = ideals_[i];
    ideal[i / 64] |= std::uint64_t{1} << (i % 64);
    if (lengths_[i] == 0) continue;
    int s = w.right_descents().front();
    std::size_t ws = index_.at(w.right_mul_simple(s));
    const auto& lower = ideals_[ws];
    // [e, w] = [e, ws] u [e, ws] s
    for (std::size_t x = 0; x < n; ++x) {
      if (!((lower[x / 64] >> (x % 64)) & 1U)) continue;
      ideal[x / 64] |= std::uint64_t{1} << (x % 64);
      std::size_t xs = index_.at(elements_[x].right_mul_simple(s));
      ideal[xs / 64] |= std::uint64_t{1} << (xs % 64);
    }
  }
}

std::size_t IndexedWeylGroup::index_of(const WeylElement& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) throw GroupMismatch("element not in indexed group");
  return it->second;
}

std::size_t IndexedWeylGroup::mul(std::size_t a, std::size_t b) const {
  return index_.at(elements_[a] * elements_[b]);
}

}  // namespace zipstrata::coxeter
