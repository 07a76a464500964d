#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace zipstrata::coxeter {

enum class Family { A, B, C, D };

char family_letter(Family f);
Family parse_family(const std::string& s);

/// Family and rank; the identity of a Weyl group.
struct CoxeterType {
  Family family = Family::A;
  int rank = 1;

  /// Number of letters the signed permutations act on.
  int degree() const { return family == Family::A ? rank + 1 : rank; }
  bool operator==(const CoxeterType&) const = default;
};

/// Set of simple indices in 1..rank.
class ParabolicType {
 public:
  ParabolicType() = default;
  explicit ParabolicType(std::vector<int> indices);

  static ParabolicType full(int rank);

  const std::vector<int>& indices() const { return indices_; }
  bool contains(int i) const;
  bool empty() const { return indices_.empty(); }
  std::size_t size() const { return indices_.size(); }
  bool operator==(const ParabolicType&) const = default;

 private:
  std::vector<int> indices_;
};

/// Element of a classical Weyl group, stored as a signed permutation in window
/// notation: window[i-1] = w(i), with w(-i) = -w(i). Type A uses plain
/// permutations of 1..rank+1.
class WeylElement {
 public:
  WeylElement(CoxeterType type, std::vector<int> window);

  static WeylElement identity(CoxeterType type);

  CoxeterType type() const { return type_; }
  const std::vector<int>& window() const { return window_; }

  /// Signed image of a nonzero i in [-n, n].
  int operator()(int i) const { return i > 0 ? window_[i - 1] : -window_[-i - 1]; }

  WeylElement operator*(const WeylElement& other) const;
  WeylElement inverse() const;
  WeylElement right_mul_simple(int i) const;
  WeylElement left_mul_simple(int i) const;

  /// Number of positive roots sent to negative roots.
  int length() const;
  bool is_identity() const;
  bool is_right_descent(int i) const;
  bool is_left_descent(int i) const;
  std::vector<int> right_descents() const;
  std::vector<int> left_descents() const;

  /// Lexicographically smallest reduced word.
  std::vector<int> reduced_word() const;
  /// "e" or "s1s2s1".
  std::string word_string() const;

  bool operator==(const WeylElement& other) const {
    return type_ == other.type_ && window_ == other.window_;
  }
  bool operator!=(const WeylElement& other) const { return !(*this == other); }

 private:
  CoxeterType type_;
  std::vector<int> window_;
};

/// Ordering by (length, lexicographic reduced word).
bool canonical_less(const WeylElement& a, const WeylElement& b);
void sort_canonical(std::vector<WeylElement>& elems);

struct WeylElementHash {
  std::size_t operator()(const WeylElement& w) const;
};

/// Diagram automorphism as images of the simple indices: images[i-1] = delta(i).
using DiagramAutomorphism = std::vector<int>;

class WeylGroup {
 public:
  WeylGroup(Family family, int rank);
  explicit WeylGroup(CoxeterType type) : WeylGroup(type.family, type.rank) {}

  CoxeterType type() const { return type_; }
  Family family() const { return type_.family; }
  int rank() const { return type_.rank; }
  int degree() const { return type_.degree(); }

  /// Group order as a decimal string (exceeds 64 bits for large type A).
  std::string order_string() const;
  /// Group order; throws InvalidArgument if it does not fit in 64 bits.
  std::uint64_t order() const;
  int positive_root_count() const { return positive_roots_; }

  WeylElement identity() const { return WeylElement::identity(type_); }
  WeylElement simple(int i) const;
  WeylElement from_word(const std::vector<int>& word) const;
  std::vector<std::vector<int>> cartan_matrix() const;

  WeylElement longest_element() const;
  WeylElement longest_element(const ParabolicType& k) const;

  /// All elements of the parabolic subgroup W_K in canonical order.
  std::vector<WeylElement> parabolic_elements(const ParabolicType& k) const;
  std::vector<WeylElement> elements() const { return parabolic_elements(ParabolicType::full(rank())); }
  std::uint64_t parabolic_order(const ParabolicType& k) const;

  /// ^K W: minimal-length representatives of the right cosets W_K w, canonical order.
  std::vector<WeylElement> min_coset_reps(const ParabolicType& k) const;
  bool is_min_coset_rep(const ParabolicType& k, const WeylElement& w) const;

  /// Unique minimal-length element of W_K w W_K2 (descent reduction).
  WeylElement min_double_coset_rep(const ParabolicType& k, const WeylElement& w,
                                   const ParabolicType& k2) const;
  /// Same element found by scanning the whole double coset.
  WeylElement min_double_coset_rep_exhaustive(const ParabolicType& k, const WeylElement& w,
                                              const ParabolicType& k2) const;
  /// Minimal representatives of W_K \ W / W_K2, canonical order.
  std::vector<WeylElement> double_coset_reps(const ParabolicType& k, const ParabolicType& k2) const;

  bool is_diagram_automorphism(const DiagramAutomorphism& delta) const;
  std::vector<DiagramAutomorphism> diagram_automorphisms() const;
  WeylElement apply_diagram_automorphism(const DiagramAutomorphism& delta,
                                         const WeylElement& w) const;
  ParabolicType apply_diagram_automorphism(const DiagramAutomorphism& delta,
                                           const ParabolicType& k) const;
  static DiagramAutomorphism identity_automorphism(int rank);

  /// Bruhat order via the rank-matrix criterion (A, B, C) or the lifting
  /// recursion (D).
  bool bruhat_leq(const WeylElement& v, const WeylElement& w) const;
  /// Bruhat order via the subword property of one reduced word of w.
  bool bruhat_leq_subword(const WeylElement& v, const WeylElement& w) const;
  /// Lower interval [e, w] from subwords of a reduced word of w.
  std::vector<WeylElement> bruhat_ideal_subword(const WeylElement& w) const;
  /// Lifting-property recursion; valid in every family.
  bool bruhat_leq_lifting(const WeylElement& v, const WeylElement& w) const;

  /// Index of s with w0 s_i w0 = s_j.
  int w0_conjugate_index(int i) const;

  void check_member(const WeylElement& w) const;
  bool operator==(const WeylGroup& other) const { return type_ == other.type_; }

 private:
  CoxeterType type_;
  int positive_roots_;
};

/// Whole-group tables for desk-scale groups: canonical indexing, simple
/// multiplication tables and the Bruhat relation as bitsets.
class IndexedWeylGroup {
 public:
  explicit IndexedWeylGroup(const WeylGroup& group);

  const WeylGroup& group() const { return group_; }
  std::size_t size() const { return elements_.size(); }
  const WeylElement& element(std::size_t idx) const { return elements_[idx]; }
  const std::vector<WeylElement>& elements() const { return elements_; }
  std::size_t index_of(const WeylElement& w) const;
  int length(std::size_t idx) const { return lengths_[idx]; }
  std::size_t mul(std::size_t a, std::size_t b) const;
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  bool bruhat_leq(std::size_t v, std::size_t w) const {
    return (ideals_[w][v / 64] >> (v % 64)) & 1U;
  }

 private:
  WeylGroup group_;
  std::vector<WeylElement> elements_;
  std::unordered_map<WeylElement, std::size_t, WeylElementHash> index_;
  std::vector<int> lengths_;
  std::vector<std::size_t> inverse_;
  std::vector<std::vector<std::uint64_t>> ideals_;
};

}  // namespace zipstrata::coxeter
