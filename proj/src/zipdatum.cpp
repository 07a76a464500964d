#include "zipstrata/zipdatum.hpp"

#include <algorithm>
#include <memory>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "zipstrata/errors.hpp"

namespace zipstrata::zip {

using coxeter::CoxeterType;
using coxeter::IndexedWeylGroup;
using coxeter::WeylElementHash;
using nlohmann::json;

WeylElement ZipCombinatorics::psi(const WeylElement& w) const {
  return theta0 * group.apply_diagram_automorphism(delta, w) * theta0.inverse();
}

ZipCombinatorics build_zip(const WeylGroup& group, const ParabolicType& I, const ParabolicType& J,
                           const DiagramAutomorphism& delta, bool gl_center) {
  if (!group.is_diagram_automorphism(delta)) throw InvalidArgument("delta is not a Coxeter graph automorphism");
  for (const auto* k : {&I, &J})
    for (int i : k->indices())
      if (i < 1 || i > group.rank()) throw InvalidArgument("parabolic index out of range");
  const ParabolicType dI = group.apply_diagram_automorphism(delta, I);
  WeylElement theta0 = group.min_double_coset_rep(J, group.longest_element(), dI);
  ZipCombinatorics z{group, I, J, delta, theta0, gl_center};
  if (I.size() != J.size()) throw PsiMismatch("|I| != |J|");
  std::vector<int> hit;
  for (int i : I.indices()) {
    WeylElement image = z.psi(group.simple(i));
    int j = 0;
    if (image.length() == 1) j = image.right_descents().front();
    if (j == 0 || !J.contains(j))
      throw PsiMismatch("psi(s" + std::to_string(i) + ") = " + image.word_string() +
                        " is not a simple reflection of J");
    hit.push_back(j);
  }
  std::sort(hit.begin(), hit.end());
  if (std::adjacent_find(hit.begin(), hit.end()) != hit.end()) throw PsiMismatch("psi is not injective on I");
  return z;
}

ZipCombinatorics zip_from_cocharacter(const WeylGroup& group, const ParabolicType& I,
                                      const DiagramAutomorphism& delta, bool gl_center) {
  if (!group.is_diagram_automorphism(delta)) throw InvalidArgument("delta is not a Coxeter graph automorphism");
  std::vector<int> j;
  for (int i : I.indices()) j.push_back(group.w0_conjugate_index(delta.at(i - 1)));
  return build_zip(group, I, ParabolicType(j), delta, gl_center);
}

bool is_in_carrier(const ZipCombinatorics& z, const WeylElement& w) {
  return w.type() == z.group.type() && z.group.is_min_coset_rep(z.I, w);
}

bool twisted_leq(const ZipCombinatorics& z, const WeylElement& wp, const WeylElement& w) {
  if (!is_in_carrier(z, wp) || !is_in_carrier(z, w)) throw InvalidArgument("argument not in ^I W");
  for (const auto& u : z.group.parabolic_elements(z.I))
    if (z.group.bruhat_leq(u * wp * z.psi(u).inverse(), w)) return true;
  return false;
}

int parabolic_dimension(const ZipCombinatorics& z) {
  const int torus = z.group.rank() + (z.gl_center ? 1 : 0);
  return torus + z.group.positive_root_count() + z.group.longest_element(z.I).length();
}

int group_dimension(const ZipCombinatorics& z) {
  return z.group.rank() + (z.gl_center ? 1 : 0) + 2 * z.group.positive_root_count();
}

int stratum_dimension(const ZipCombinatorics& z, const WeylElement& w) {
  if (!is_in_carrier(z, w)) throw InvalidArgument("argument not in ^I W");
  return parabolic_dimension(z) + w.length();
}

std::size_t StratumPoset::index_of(const WeylElement& w) const {
  for (std::size_t i = 0; i < carrier.size(); ++i)
    if (carrier[i] == w) return i;
  throw InvalidArgument("element " + w.word_string() + " is not a stratum of this poset");
}

bool StratumPoset::operator==(const StratumPoset& o) const {
  return type == o.type && gl_center == o.gl_center && I == o.I && J == o.J && delta == o.delta &&
         carrier == o.carrier && lengths == o.lengths && dims == o.dims && has_relation == o.has_relation &&
         leq == o.leq && covers == o.covers;
}

void compute_covers(StratumPoset& p) {
  p.covers.clear();
  if (!p.has_relation) return;
  const std::size_t n = p.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !p.leq[a][b]) continue;
      bool cover = true;
      for (std::size_t c = 0; c < n && cover; ++c)
        if (c != a && c != b && p.leq[a][c] && p.leq[c][b]) cover = false;
      if (cover) p.covers.emplace_back(a, b);
    }
}

StratumPoset stratum_poset(const ZipCombinatorics& z, std::uint64_t work_bound) {
  StratumPoset p;
  p.type = z.group.type();
  p.gl_center = z.gl_center;
  p.I = z.I.indices();
  p.J = z.J.indices();
  p.delta = z.delta;
  p.carrier = z.group.min_coset_reps(z.I);
  const int dimp = parabolic_dimension(z);
  for (const auto& w : p.carrier) {
    p.lengths.push_back(w.length());
    p.dims.push_back(dimp + w.length());
  }
  const std::size_t n = p.size();

  // |W_I| may not fit in 64 bits for large Levis; string length is a cheap guard.
  const std::string order = z.group.order_string();
  if (order.size() > 18) return p;
  const std::uint64_t wi = z.group.parabolic_order(z.I);
  const long double work = static_cast<long double>(wi) * n * n;
  if (work > static_cast<long double>(work_bound)) return p;

  p.has_relation = true;
  p.leq.assign(n, std::vector<char>(n, 0));
  const auto wI = z.group.parabolic_elements(z.I);
  std::vector<WeylElement> psi_inv;
  for (const auto& u : wI) psi_inv.push_back(z.psi(u).inverse());

  if (z.group.order() <= 10000) {
    IndexedWeylGroup ix(z.group);
    std::vector<std::size_t> carrier_ix;
    for (const auto& w : p.carrier) carrier_ix.push_back(ix.index_of(w));
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<std::size_t> twisted;
      for (std::size_t t = 0; t < wI.size(); ++t) twisted.push_back(ix.index_of(wI[t] * p.carrier[a] * psi_inv[t]));
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t t : twisted)
          if (ix.bruhat_leq(t, carrier_ix[b])) {
            p.leq[a][b] = 1;
            break;
          }
    }
  } else {
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<WeylElement> twisted;
      for (std::size_t t = 0; t < wI.size(); ++t) twisted.push_back(wI[t] * p.carrier[a] * psi_inv[t]);
      for (std::size_t b = 0; b < n; ++b)
        for (const auto& t : twisted)
          if (z.group.bruhat_leq(t, p.carrier[b])) {
            p.leq[a][b] = 1;
            break;
          }
    }
  }
  compute_covers(p);
  return p;
}

namespace {

void require_relation(const StratumPoset& p) {
  if (!p.has_relation) throw InvalidArgument("twisted order was not computed for this poset (size guard)");
}

}  // namespace

std::vector<WeylElement> closure(const StratumPoset& p, const WeylElement& w) {
  require_relation(p);
  const std::size_t b = p.index_of(w);
  std::vector<WeylElement> out;
  for (std::size_t a = 0; a < p.size(); ++a)
    if (p.leq[a][b]) out.push_back(p.carrier[a]);
  return out;
}

std::vector<WeylElement> boundary_maximal(const StratumPoset& p, const WeylElement& w) {
  require_relation(p);
  const std::size_t b = p.index_of(w);
  std::vector<std::size_t> below;
  for (std::size_t a = 0; a < p.size(); ++a)
    if (a != b && p.leq[a][b]) below.push_back(a);
  std::vector<WeylElement> out;
  for (std::size_t a : below) {
    bool maximal = true;
    for (std::size_t c : below)
      if (c != a && p.leq[a][c]) maximal = false;
    if (maximal) out.push_back(p.carrier[a]);
  }
  return out;
}

std::vector<WeylElement> closure(const ZipCombinatorics& z, const WeylElement& w) {
  return closure(stratum_poset(z), w);
}

std::vector<WeylElement> boundary_maximal(const ZipCombinatorics& z, const WeylElement& w) {
  return boundary_maximal(stratum_poset(z), w);
}

PurityReport purity_check(const StratumPoset& p) {
  require_relation(p);
  PurityReport r;
  r.strata = p.size();
  for (std::size_t b = 0; b < p.size(); ++b) {
    const WeylElement& w = p.carrier[b];
    for (const auto& wp : boundary_maximal(p, w)) {
      ++r.boundary_pairs;
      const int drop = p.lengths[b] - p.lengths[p.index_of(wp)];
      if (drop != 1) r.violations.push_back({w, wp, drop});
    }
  }
  r.pass = r.violations.empty();
  return r;
}

PurityReport purity_check(const ZipCombinatorics& z) { return purity_check(stratum_poset(z)); }

OrderReport check_partial_order(const StratumPoset& p) {
  require_relation(p);
  OrderReport r;
  const std::size_t n = p.size();
  std::size_t mins = 0, maxs = 0;
  for (std::size_t a = 0; a < n; ++a) {
    if (!p.leq[a][a]) r.reflexive = false;
    bool is_min = true, is_max = true;
    for (std::size_t b = 0; b < n; ++b) {
      if (!p.leq[a][b]) is_min = false;
      if (!p.leq[b][a]) is_max = false;
      if (a != b && p.leq[a][b] && p.leq[b][a]) r.antisymmetric = false;
      if (p.leq[a][b] && p.lengths[a] > p.lengths[b]) r.refines_length = false;
      if (!p.leq[a][b]) continue;
      for (std::size_t c = 0; c < n; ++c)
        if (p.leq[b][c] && !p.leq[a][c]) r.transitive = false;
    }
    mins += is_min;
    maxs += is_max;
  }
  r.unique_min = mins == 1;
  r.unique_max = maxs == 1;
  return r;
}

CarrierAction diagram_action(const ZipCombinatorics& z, const DiagramAutomorphism& delta) {
  auto group = std::make_shared<WeylGroup>(z.group);
  if (!group->is_diagram_automorphism(delta)) throw InvalidArgument("delta is not a Coxeter graph automorphism");
  return [group, delta](const WeylElement& w) { return group->apply_diagram_automorphism(delta, w); };
}

GaloisQuotient galois_quotient(const StratumPoset& p, const CarrierAction& action) {
  require_relation(p);
  const std::size_t n = p.size();
  std::vector<std::size_t> image(n);
  std::vector<char> hit(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    WeylElement x = action(p.carrier[a]);
    std::size_t b = n;
    for (std::size_t c = 0; c < n; ++c)
      if (p.carrier[c] == x) b = c;
    if (b == n) throw InvalidArgument("action does not preserve ^I W: " + p.carrier[a].word_string() + " -> " +
                                      x.word_string());
    if (hit[b]) throw InvalidArgument("action is not bijective on ^I W");
    hit[b] = 1;
    image[a] = b;
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (p.leq[a][b] != p.leq[image[a]][image[b]]) throw InvalidArgument("action does not preserve the order");

  GaloisQuotient q;
  q.orbit_of.assign(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    if (q.orbit_of[a] != n) continue;
    std::vector<std::size_t> orbit;
    std::size_t x = a;
    do {
      orbit.push_back(x);
      q.orbit_of[x] = q.orbits.size();
      x = image[x];
    } while (x != a);
    std::sort(orbit.begin(), orbit.end());
    q.orbits.push_back(orbit);
  }
  const std::size_t m = q.orbits.size();
  q.induced_leq.assign(m, std::vector<char>(m, 0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (p.leq[a][b]) q.induced_leq[q.orbit_of[a]][q.orbit_of[b]] = 1;
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y)
      if (x != y && q.induced_leq[x][y] && q.induced_leq[y][x]) q.antisymmetric = false;
  return q;
}

ExportFormat parse_export_format(const std::string& s) {
  if (s == "json") return ExportFormat::Json;
  if (s == "dot") return ExportFormat::Dot;
  throw InvalidArgument("unknown export format '" + s + "'");
}

std::string export_poset(const StratumPoset& p, ExportFormat format) {
  if (format == ExportFormat::Dot) {
    std::ostringstream os;
    os << "digraph strata {\n  rankdir=BT;\n";
    for (std::size_t a = 0; a < p.size(); ++a)
      os << "  n" << a << " [label=\"" << p.carrier[a].word_string() << " | " << p.lengths[a] << " | "
         << p.dims[a] << "\"];\n";
    for (const auto& [a, b] : p.covers) os << "  n" << a << " -> n" << b << ";\n";
    os << "}\n";
    return os.str();
  }
  json j;
  j["group"] = {{"family", std::string(1, coxeter::family_letter(p.type.family))},
                {"rank", p.type.rank},
                {"gl_center", p.gl_center}};
  j["I"] = p.I;
  j["J"] = p.J;
  j["delta"] = p.delta;
  json strata = json::array();
  for (std::size_t a = 0; a < p.size(); ++a)
    strata.push_back({{"word", p.carrier[a].reduced_word()}, {"length", p.lengths[a]}, {"dim", p.dims[a]}});
  j["strata"] = strata;
  j["relation_complete"] = p.has_relation;
  if (p.has_relation) {
    json covers = json::array();
    for (const auto& [a, b] : p.covers) covers.push_back({a, b});
    j["covers"] = covers;
  }
  return j.dump(2) + "\n";
}

StratumPoset parse_poset_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("poset JSON: ") + e.what());
  }
  try {
    StratumPoset p;
    const auto& g = j.at("group");
    p.type = CoxeterType{coxeter::parse_family(g.at("family").get<std::string>()), g.at("rank").get<int>()};
    p.gl_center = g.value("gl_center", false);
    WeylGroup group(p.type);
    p.I = j.at("I").get<std::vector<int>>();
    p.J = j.at("J").get<std::vector<int>>();
    p.delta = j.at("delta").get<std::vector<int>>();
    for (const auto& s : j.at("strata")) {
      WeylElement w = group.from_word(s.at("word").get<std::vector<int>>());
      p.carrier.push_back(w);
      p.lengths.push_back(s.at("length").get<int>());
      p.dims.push_back(s.at("dim").get<int>());
    }
    const std::size_t n = p.size();
    p.has_relation = j.contains("covers");
    if (p.has_relation) {
      p.leq.assign(n, std::vector<char>(n, 0));
      for (std::size_t a = 0; a < n; ++a) p.leq[a][a] = 1;
      for (const auto& c : j.at("covers")) {
        auto a = c.at(0).get<std::size_t>(), b = c.at(1).get<std::size_t>();
        if (a >= n || b >= n) throw InvalidArgument("cover index out of range");
        p.leq[a][b] = 1;
      }
      // transitive closure
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t a = 0; a < n; ++a)
          if (p.leq[a][k])
            for (std::size_t b = 0; b < n; ++b)
              if (p.leq[k][b]) p.leq[a][b] = 1;
      compute_covers(p);
    }
    return p;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("poset JSON: ") + e.what());
  }
}

}  // namespace zipstrata::zip
