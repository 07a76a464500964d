#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "zipstrata/coxeter.hpp"

namespace zipstrata::zip {

using coxeter::DiagramAutomorphism;
using coxeter::ParabolicType;
using coxeter::WeylElement;
using coxeter::WeylGroup;

/// (W, I, J, delta, theta0) with psi(w) = theta0 delta(w) theta0^{-1}.
struct ZipCombinatorics {
  WeylGroup group;
  ParabolicType I;
  ParabolicType J;
  DiagramAutomorphism delta;
  WeylElement theta0;
  /// GL_n convention: one extra central torus dimension.
  bool gl_center = false;

  WeylElement psi(const WeylElement& w) const;
};

/// theta0 is the minimal element of W_J w0 W_{delta(I)}; throws PsiMismatch
/// unless psi carries {s_i : i in I} onto {s_j : j in J}.
ZipCombinatorics build_zip(const WeylGroup& group, const ParabolicType& I, const ParabolicType& J,
                           const DiagramAutomorphism& delta, bool gl_center = false);

/// J = { w0 s_delta(i) w0 : i in I }.
ZipCombinatorics zip_from_cocharacter(const WeylGroup& group, const ParabolicType& I,
                                      const DiagramAutomorphism& delta, bool gl_center = false);

bool is_in_carrier(const ZipCombinatorics& z, const WeylElement& w);

/// w' is below w iff u w' psi(u)^{-1} <= w (Bruhat) for some u in W_I.
/// Throws InvalidArgument when either argument is not in ^I W.
bool twisted_leq(const ZipCombinatorics& z, const WeylElement& wp, const WeylElement& w);

/// dim P + l(w), dim P = torus rank + |Phi+| + |Phi_I+|.
int parabolic_dimension(const ZipCombinatorics& z);
int group_dimension(const ZipCombinatorics& z);
int stratum_dimension(const ZipCombinatorics& z, const WeylElement& w);

struct StratumPoset {
  coxeter::CoxeterType type;
  bool gl_center = false;
  std::vector<int> I;
  std::vector<int> J;
  std::vector<int> delta;
  std::vector<WeylElement> carrier;
  std::vector<int> lengths;
  std::vector<int> dims;
  /// False when the twisted relation was too large to compute; leq and covers
  /// are then empty.
  bool has_relation = false;
  std::vector<std::vector<char>> leq;  // leq[a][b]: carrier[a] below carrier[b]
  std::vector<std::pair<std::size_t, std::size_t>> covers;

  std::size_t size() const { return carrier.size(); }
  std::size_t index_of(const WeylElement& w) const;
  bool operator==(const StratumPoset& o) const;
};

/// Bound on |W_I| * |^I W|^2 for computing the relation.
inline constexpr std::uint64_t kRelationWorkBound = 200'000'000;

StratumPoset stratum_poset(const ZipCombinatorics& z, std::uint64_t work_bound = kRelationWorkBound);

/// Recomputes covers from leq.
void compute_covers(StratumPoset& p);

std::vector<WeylElement> closure(const StratumPoset& p, const WeylElement& w);
std::vector<WeylElement> boundary_maximal(const StratumPoset& p, const WeylElement& w);
std::vector<WeylElement> closure(const ZipCombinatorics& z, const WeylElement& w);
std::vector<WeylElement> boundary_maximal(const ZipCombinatorics& z, const WeylElement& w);

struct PurityViolation {
  WeylElement w;
  WeylElement below;
  int length_drop;
};

struct PurityReport {
  bool pass = true;
  std::size_t strata = 0;
  std::size_t boundary_pairs = 0;
  std::vector<PurityViolation> violations;
};

PurityReport purity_check(const StratumPoset& p);
PurityReport purity_check(const ZipCombinatorics& z);

struct OrderReport {
  bool reflexive = true;
  bool antisymmetric = true;
  bool transitive = true;
  bool refines_length = true;
  bool unique_min = true;
  bool unique_max = true;
  bool ok() const {
    return reflexive && antisymmetric && transitive && refines_length && unique_min && unique_max;
  }
};

OrderReport check_partial_order(const StratumPoset& p);

struct GaloisQuotient {
  /// Orbits as carrier indices; each sorted, orbits ordered by their first index.
  std::vector<std::vector<std::size_t>> orbits;
  std::vector<std::size_t> orbit_of;
  std::vector<std::vector<char>> induced_leq;
  bool antisymmetric = true;
};

using CarrierAction = std::function<WeylElement(const WeylElement&)>;

/// Action w -> delta(w) of a diagram automorphism.
CarrierAction diagram_action(const ZipCombinatorics& z, const DiagramAutomorphism& delta);

/// Throws InvalidArgument when the action leaves ^I W, is not bijective or
/// does not preserve the order.
GaloisQuotient galois_quotient(const StratumPoset& p, const CarrierAction& action);

enum class ExportFormat { Json, Dot };
ExportFormat parse_export_format(const std::string& s);
std::string export_poset(const StratumPoset& p, ExportFormat format);
/// Inverse of the JSON export; the relation is rebuilt from covers.
StratumPoset parse_poset_json(const std::string& text);

}  // namespace zipstrata::zip
