#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zipstrata/coxeter.hpp"
#include "zipstrata/finite_field.hpp"
#include "zipstrata/grouplab.hpp"
#include "zipstrata/zipdatum.hpp"

namespace zipstrata::fzip {

using ff::Field;
using ff::Mat;

/// The function n-bar: weight -> multiplicity. Zero multiplicities are ignored.
using FZipType = std::map<int, int>;

struct TypeParabolic {
  int n = 0;
  coxeter::ParabolicType I;
  std::vector<int> weights;  // support of the type, increasing
  std::vector<int> blocks;   // multiplicities in the same order
};

/// Blocks are ordered by increasing weight.
TypeParabolic type_to_parabolic(const FZipType& t);
/// Type of rank 1 has no Weyl group; callers get InvalidArgument from the poset.
zip::StratumPoset enumerate_strata(const FZipType& t);
std::string type_to_string(const FZipType& t);
/// Convolution of types and the sign flip.
FZipType tensor_type(const FZipType& a, const FZipType& b);
FZipType dual_type(const FZipType& a);

/// Frobenius-semilinear map stored as its matrix and the exponent e of x -> x^(p^e).
struct Semilinear {
  Mat matrix;
  int frob_exp = 1;
};

/// F-zip on F_{q^s}^n, q = p^d, with phi_i semilinear for x -> x^q.
///
/// C is descending: C^i is the span listed at the smallest listed index >= i,
/// and 0 above every listed index. D is ascending: D_i is the span listed at the
/// largest listed index <= i, and 0 below every listed index. phi_i is written in
/// the canonical graded bases: echelon columns of C^i (resp. D_i) whose pivot
/// rows are not pivots of C^{i+1} (resp. D_{i-1}).
struct FZip {
  int p = 2;
  int d = 1;
  int s = 1;
  int n = 0;
  std::shared_ptr<const Field> field;
  std::map<int, Mat> C;
  std::map<int, Mat> D;
  std::map<int, Semilinear> phi;

  std::uint64_t q() const;
  Mat C_at(int i) const;
  Mat D_at(int i) const;
  /// Graded pieces from C; validate() checks they agree with D.
  FZipType type() const;
  /// Throws InvariantViolation on a malformed filtration or phi.
  void validate() const;
  bool operator==(const FZip& o) const;
};

/// Bases adapted to C and D with phi_i(c_k) = d_k modulo lower terms for the
/// columns of weight i; columns ordered by increasing weight.
struct AdaptedBases {
  Mat c;
  Mat d;
  std::vector<int> weights;
};

/// Canonical F-zip with the given adapted bases (c, d invertible).
FZip from_adapted_bases(int p, int d, int s, const Mat& c, const Mat& dm, const std::vector<int>& weights);
AdaptedBases adapted_bases(const FZip& z);
/// The F-zip with C standard and D spanned by the columns of g, phi = 1 on columns.
FZip from_group_element(const FZipType& t, const Mat& g, int p, int d, int s);
/// g = c^{-1} d, well defined up to the zip action of E_Z for the type.
Mat group_element(const FZip& z);
/// Same F-zip written in the basis a (C -> aC, D -> aD, phi transported).
FZip transport(const FZip& z, const Mat& a);

FZip tate_zip(int weight, int p = 2, int d = 1, int s = 1);
FZip tensor(const FZip& a, const FZip& b);
/// C^i(a^v) = (C^{1-i} a)^perp and D_i(a^v) = (D_{-i-1} a)^perp, so dual(tate(d)) = tate(-d).
FZip dual(const FZip& a);

/// F and V over F_{p^k}, F p-semilinear and V p^{-1}-semilinear (columns are the
/// images of the basis vectors). Requires im V = ker F and im F = ker V.
/// Result: q = p, s = k, type supported on {0, 1}.
FZip dieudonne_to_fzip(const Field& field, const Mat& F, const Mat& V);

struct StratumLabel {
  std::optional<coxeter::WeylElement> w;  // empty for rank 1
  int length = 0;
  std::vector<int> word;
  int ext = 0;  // extension degree s' (over F_q) where the match was found
  Mat g;        // group element over F_{q^s'}
  lab::ZipElement certificate;  // p' g p^{-1} = standard representative
  std::string word_string() const;
};

/// Label w in ^I W. Searches s' = s, 2s, ... <= max_ext. Throws Undetermined.
StratumLabel classify(const FZip& z, int max_ext);

/// JSON input format with "p", "q", "ext_deg", "n", "C", "D", "phi".
FZip parse_fzip_json(const std::string& text);
std::string fzip_to_json(const FZip& z);

}  // namespace zipstrata::fzip
