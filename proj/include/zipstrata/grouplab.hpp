#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zipstrata/coxeter.hpp"
#include "zipstrata/errors.hpp"
#include "zipstrata/finite_field.hpp"

namespace zipstrata::lab {

using ff::Field;
using ff::Mat;

/// Zip datum on a block-diagonal subgroup G of GL_n over a finite field.
///
/// G   = {(i,j) : comp[i] == comp[j]}
/// P   = {(i,j) in G : level[i] <= level[j]},        L  = equality part
/// P'  = {(i,j) in G : level_prime[i] <= level_prime[j]}, L' = equality part
/// phi(l) = Frob(x l x^{-1}) maps L' onto L, Frob(a) = a^(p^frob_exp).
///
/// The standard GL_n datum has one component, level = block index (P upper
/// block triangular), level_prime = -block index (P' lower block triangular),
/// x = id and base point g0 = w_{0,I} w0.
struct GroupZipDatum {
  std::shared_ptr<const Field> field;
  int frob_exp = 1;
  int n = 0;
  std::vector<int> comp;
  std::vector<int> level;
  std::vector<int> level_prime;
  std::vector<int> x;  // 1-based window
  Mat g0;
  /// Block sizes for standard GL_n data; empty for reduced data.
  std::vector<int> blocks;

  bool in_G(int i, int j) const { return comp[i] == comp[j]; }
  bool in_P(int i, int j) const { return in_G(i, j) && level[i] <= level[j]; }
  bool in_L(int i, int j) const { return in_G(i, j) && level[i] == level[j]; }
  bool in_Pp(int i, int j) const { return in_G(i, j) && level_prime[i] <= level_prime[j]; }
  bool in_Lp(int i, int j) const { return in_G(i, j) && level_prime[i] == level_prime[j]; }
  bool is_standard() const { return !blocks.empty(); }
  /// Order q of the base field of the Frobenius twist.
  std::uint64_t q() const;
  /// Working extension degree s with field = F_{q^s}.
  int ext() const { return field->degree() / frob_exp; }

  /// Levi isogeny phi on an element of L'.
  Mat phi(const Mat& lp) const;
  void validate() const;
  std::string describe() const;
};

/// Standard GL_n datum for block sizes over F_{q^s}, q = p^d.
GroupZipDatum standard_datum(const std::vector<int>& blocks, int p, int d, int s);
/// Same datum with an explicit base point (must be a permutation matrix).
GroupZipDatum standard_datum(const std::vector<int>& blocks, int p, int d, int s, const Mat& g0);
/// P = P' = G = GL_n with the Frobenius twist.
GroupZipDatum terminal_datum(int n, int p, int d, int s);

/// Weyl group of GL_n (type A_{n-1}) and I from the block sizes.
coxeter::WeylGroup gl_weyl(int n);
coxeter::ParabolicType blocks_to_parabolic(const std::vector<int>& blocks);

struct ZipElement {
  Mat pp;  // p' in P'
  Mat p;   // p in P
};

std::uint64_t gl_order(int n, std::uint64_t q);
/// |E_Z(F)|; throws TooLarge if it does not fit in 64 bits.
std::uint64_t zip_group_order(const GroupZipDatum& zd);

std::vector<Mat> gl_points(int n, const Field& field, std::uint64_t bound = kExhaustionGuard);
enum class Side { Upper, Lower };
std::vector<Mat> parabolic_points(int n, const Field& field, const std::vector<int>& blocks, Side side,
                                  std::uint64_t bound = kExhaustionGuard);
/// Invertible matrices of G(F).
std::vector<Mat> ambient_points(const GroupZipDatum& zd, std::uint64_t bound = kExhaustionGuard);
std::vector<ZipElement> zip_group_points(const GroupZipDatum& zd, std::uint64_t bound = kExhaustionGuard);

/// p' g p^{-1}.
Mat zip_act(const GroupZipDatum& zd, const ZipElement& e, const Mat& g);
bool in_zip_group(const GroupZipDatum& zd, const ZipElement& e);

struct OrbitCensus {
  std::string action_tag;
  std::uint64_t acting_order = 0;
  std::vector<std::vector<Mat>> orbits;  // sorted, canonical minimal representative first
  std::vector<std::uint64_t> stabilizer_orders;
  std::size_t total() const;
};

/// Exact orbit partition of G(F) under the zip action.
OrbitCensus zip_orbit_census(const GroupZipDatum& zd, std::uint64_t bound = kExhaustionGuard);
/// Orbit partition of GL_n(F) under conjugation.
OrbitCensus conjugation_census(int n, const Field& field, std::uint64_t bound = kExhaustionGuard);

/// All (p',p) in E_Z with p' g p^{-1} = h, from the F_p-linear solution space.
std::vector<ZipElement> transporter(const GroupZipDatum& zd, const Mat& g, const Mat& h,
                                    std::uint64_t bound = kExhaustionGuard, std::size_t limit = 0);
std::vector<ZipElement> stabilizer(const GroupZipDatum& zd, const Mat& g, std::uint64_t bound = kExhaustionGuard);
std::uint64_t orbit_size(const GroupZipDatum& zd, const Mat& g, std::uint64_t bound = kExhaustionGuard);

/// Centralizer of g in GL_n(F) and the conjugation orbit size.
std::uint64_t centralizer_order(const Field& field, const Mat& g, std::uint64_t bound = kExhaustionGuard);
std::uint64_t conjugation_orbit_size(const Field& field, const Mat& g, std::uint64_t bound = kExhaustionGuard);

/// Permutation matrix of a type-A Weyl element.
Mat weyl_matrix(const coxeter::WeylElement& w);
/// w0 w w0. Labels w in ^I W are carried to the frame's own index set ^K W,
/// K = g0^{-1} I g0, by this length-preserving bijection.
coxeter::WeylElement frame_conjugate(const coxeter::WeylElement& w);
/// g0 * (w0 w w0) for w in ^I W; for the default g0 this is w_{0,I} w w0.
Mat standard_representative(const GroupZipDatum& zd, const coxeter::WeylElement& w);

/// Label of the double coset cell P' g P: the minimal representative of
/// W_A \ W / W_B with (A, B) = cell_parabolics(zd), and standard_representative
/// of the label lies in the cell. For the default g0, A = I and B = w0 I w0 = J.
/// Requires a standard datum whose g0 is a permutation matrix normalizing the simple reflections of I.
coxeter::WeylElement bruhat_cell(const GroupZipDatum& zd, const Mat& g);
std::pair<coxeter::ParabolicType, coxeter::ParabolicType> cell_parabolics(const GroupZipDatum& zd);
/// The permutation y with g in B^- y B.
std::vector<int> opposite_bruhat_permutation(const Field& field, const Mat& g);

struct LangResult {
  bool found = false;
  int ext = 0;  // s' with h over F_{q^{s'}}
  std::shared_ptr<const Field> field;
  Mat h;
};

/// Searches h in GL_n(F_{q^{s'}}), s' = 1..max_ext, with h^{-1} F(h) = g, where
/// F(a) = a^(p^frob_exp) entrywise and g is given over base (embedded into each
/// extension). frob_exp = 0 is the identity twist.
LangResult lang_preimage(const Field& base, const Mat& g, int frob_exp, int max_ext,
                         std::uint64_t bound = kExhaustionGuard);

/// One step of the reduction: datum on L with Q = phi(L' cap y P y^{-1}),
/// Q' = L cap y^{-1} P' y and psi = phi o int(y). The window overload takes y = g0 * window
/// directly; the WeylElement overload takes a cell label and uses its standard
/// representative. The new base point is 1.
GroupZipDatum reduce_datum(const GroupZipDatum& zd, const std::vector<int>& w_window);
GroupZipDatum reduce_datum(const GroupZipDatum& zd, const coxeter::WeylElement& w);
bool is_terminal(const GroupZipDatum& zd);
/// Data Z, Z_1, ..., Z_k: first reduction by w, then by the identity until terminal.
std::vector<GroupZipDatum> reduction_trace(const GroupZipDatum& zd, const coxeter::WeylElement& w);

/// Leading exponent of polynomial growth: e_s = round(log_q(size_{s+1}/size_s));
/// the last two exponents must agree. Throws InvalidArgument with fewer than
/// three sizes and InconsistentGrowth otherwise.
int dimension_estimate(const std::vector<std::uint64_t>& sizes, std::uint64_t q);
/// Per-step exponents, for reports.
std::vector<int> growth_exponents(const std::vector<std::uint64_t>& sizes, std::uint64_t q);

/// |O^w(F_{q^s})|, the rational points of the geometric stratum of w. The
/// stabilizer of the standard representative is a finite group extended by a
/// connected unipotent group; the finite part is read off the terminal datum of
/// reduction_trace, and Lang's theorem gives |E_Z(F)| / |unipotent part(F)|.
std::uint64_t stratum_point_count(const GroupZipDatum& zd, const coxeter::WeylElement& w,
                                  std::uint64_t bound = 1ULL << 24);
/// stratum_point_count over F_{q^s}, s = 1..s_max.
std::vector<std::uint64_t> stratum_point_counts(const std::vector<int>& blocks, int p, int d,
                                                const coxeter::WeylElement& w, int s_max,
                                                std::uint64_t bound = 1ULL << 24);

struct CounterexampleRow {
  std::uint64_t q = 0;
  std::uint64_t orbit_size = 0;
  std::uint64_t expected_size = 0;
  bool lambda_constant = false;        // (trace, det) = (2, 1) on O_1
  bool identity_in_fiber = false;      // lambda(1) = (2, 1)
  bool identity_outside_orbit = false;
  std::vector<std::uint64_t> growth_sizes;  // |O_1(F_{q^s})|
  int dim_orbit = -1;
  int dim_identity_orbit = -1;
  int ambient_dim = 4;
  int boundary_codim = -1;
  bool ok() const;
};

struct CounterexampleReport {
  std::vector<CounterexampleRow> rows;
  bool ok() const;
};

/// q must be a prime power.
CounterexampleReport counterexample_gl2(const std::vector<std::uint64_t>& q_list, int growth_degrees = 4);

/// (p, d) with q = p^d; throws InvalidArgument if q is not a prime power.
std::pair<int, int> prime_power(std::uint64_t q);

std::string census_to_json(const GroupZipDatum& zd, const OrbitCensus& census);
std::string counterexample_to_json(const CounterexampleReport& r);

}  // namespace zipstrata::lab
