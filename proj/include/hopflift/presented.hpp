// PBW presentations of R-bar, K and B: straightening, normal forms,
// coproducts on lifts, the antipode of K and retractions R-bar -> K.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hopflift/check.hpp"
#include "hopflift/datum.hpp"
#include "hopflift/freehopf.hpp"
#include "hopflift/lincomb.hpp"

namespace hopflift {

/// Packed exponent vector over the PBW letters: 6 bits per letter, letter 0 in
/// the most significant slot, so integer order is lexicographic order.
class Mono {
 public:
  static constexpr int kBits = 6;
  static constexpr int kMaxLetters = 10;
  static constexpr int kMaxExp = (1 << kBits) - 1;

  Mono() = default;
  static Mono from_exps(const std::vector<int>& exps);

  int operator[](int i) const {
    return static_cast<int>((bits_ >> shift(i)) & kMaxExp);
  }
  Mono with(int i, int e) const;
  Mono plus(int i, int k = 1) const { return with(i, (*this)[i] + k); }
  Mono operator+(Mono o) const;
  bool is_one() const { return bits_ == 0; }
  std::uint64_t bits() const { return bits_; }
  std::vector<int> exps(int n) const;

  friend bool operator==(Mono a, Mono b) { return a.bits_ == b.bits_; }
  friend bool operator<(Mono a, Mono b) { return a.bits_ < b.bits_; }

 private:
  static int shift(int i) { return (kMaxLetters - 1 - i) * kBits; }
  std::uint64_t bits_ = 0;
};

enum class Tag { B, K, Rbar };

using AlgElt = LinComb<Mono>;
using AlgTensor = LinComb<std::pair<Mono, Mono>>;

struct StraighteningRule {
  int hi = 0;  // letter index, hi > lo
  int lo = 0;
  AlgElt rhs;  // e_hi e_lo = rhs, in PBW monomials smaller than (lo, hi)
};

/// R-bar together with its quotient B and its subalgebra K, all in PBW bases.
/// Monomials of K are stored per letter: exponent b at letter l stands for
/// z_l^b. Caches fill lazily; instances are not synchronized.
class PresentedAlgebra {
 public:
  PresentedAlgebra(std::shared_ptr<const CartanDatum> d, int cutoff);

  const CartanDatum& datum() const { return *datum_; }
  const std::shared_ptr<const CartanDatum>& datum_ptr() const { return datum_; }
  int cutoff() const { return cutoff_; }
  int num_letters() const { return static_cast<int>(letters_.size()); }
  const RootVector& letter(int i) const { return letters_[i]; }
  const FreeElt& letter_lift(int i) const { return lifts_[i]; }
  /// Relations of R-bar in T(V) used to derive the rules.
  const std::vector<FreeElt>& relations() const { return relations_; }
  const std::vector<StraighteningRule>& rules() const { return rules_; }

  MultiDeg degree(Mono m) const;
  int height(Mono m) const;
  /// Exponents below the root orders and no linking letters.
  bool in_B(Mono m) const;
  std::string str(Mono m) const;
  std::string k_str(Mono k) const;
  Mono letter_mono(int l) const { return Mono().plus(l); }
  /// PBW letter carrying the simple generator x_i.
  int simple_letter(int i) const { return simple_letter_[i]; }

  /// Free-algebra lift of a PBW monomial (product of letter lifts).
  FreeElt lift(Mono m) const;

  AlgElt mul(const AlgElt& a, const AlgElt& b, Tag tag) const;
  AlgElt mul_mono(Mono a, Mono b, Tag tag) const;
  AlgElt normal_form(const FreeElt& e, Tag tag) const;
  /// Drops everything outside B.
  AlgElt project_B(const AlgElt& a) const;

  /// Braided coproduct of a monomial computed through the letter lifts.
  /// Tag Rbar works in R-bar ⊗ R-bar, tag B in B ⊗ B.
  const AlgTensor& coproduct(Mono m, Tag tag) const;
  AlgTensor coproduct(const AlgElt& a, Tag tag) const;
  /// (a⊗b)(c⊗d) = chi_eval(deg c, deg b) (ac ⊗ bd).
  AlgTensor tensor_mul(const AlgTensor& s, const AlgTensor& t, Tag tag) const;

  // B
  const std::vector<Mono>& b_basis() const { return b_basis_; }
  std::size_t b_index(Mono m) const;
  std::vector<Mono> rbar_basis(int max_height) const;

  // K
  Mono kappa(Mono k) const;
  /// Unique (B-part, K-part) with m = B-part * kappa(K-part).
  std::pair<Mono, Mono> split(Mono m) const;
  MultiDeg k_degree(Mono k) const { return degree(kappa(k)); }
  int k_height(Mono k) const { return height(kappa(k)); }
  std::vector<Mono> k_basis(int max_height) const;
  AlgElt k_mul(const AlgElt& a, const AlgElt& b) const;
  /// Coproduct of K, read off from the R-bar coproduct of kappa(k).
  const AlgTensor& k_coproduct(Mono k) const;
  AlgTensor k_tensor_mul(const AlgTensor& s, const AlgTensor& t) const;
  const AlgElt& antipode_K(Mono k) const;
  AlgElt antipode_K(const AlgElt& a) const;

  /// Overlap ambiguities e_c e_b e_a (c > b > a) resolve identically.
  Check check_confluence() const;

 private:
  struct MemoKey {
    std::uint64_t bits;
    int letter;
    Tag tag;
    bool operator==(const MemoKey& o) const {
      return bits == o.bits && letter == o.letter && tag == o.tag;
    }
  };
  struct MemoHash {
    std::size_t operator()(const MemoKey& k) const {
      return std::hash<std::uint64_t>()(k.bits * 0x9E3779B97F4A7C15ULL + k.letter * 4 +
                                        static_cast<int>(k.tag));
    }
  };

  void derive_rules();
  const AlgElt& mul_letter(Mono m, int l, Tag tag) const;
  const StraighteningRule* rule(int hi, int lo) const;
  void check_height(int h) const;

  std::shared_ptr<const CartanDatum> datum_;
  int cutoff_;
  std::vector<RootVector> letters_;
  std::vector<FreeElt> lifts_;
  std::vector<int> simple_letter_;
  std::vector<FreeElt> relations_;
  std::vector<StraighteningRule> rules_;
  std::vector<std::vector<int>> rule_index_;
  std::vector<Mono> b_basis_;
  std::unordered_map<std::uint64_t, std::size_t> b_index_;

  mutable std::unordered_map<MemoKey, AlgElt, MemoHash> mul_memo_;
  mutable std::unordered_map<MemoKey, AlgTensor, MemoHash> cop_memo_;
  mutable std::unordered_map<std::uint64_t, AlgTensor> k_cop_memo_;
  mutable std::unordered_map<std::uint64_t, AlgElt> antipode_memo_;
};

/// Linear map u: R-bar -> K of the form u = m_K (phi ⊗ 1) theta, where theta
/// splits a monomial into its B-part and K-part.
struct Retraction {
  std::shared_ptr<const PresentedAlgebra> alg;
  std::string name;
  /// Values on B-monomials; absent entries are 0.
  std::map<Mono, AlgElt> phi;
  /// Set when (u⊗u)Δ = Δ_K u is known (proved for the family or verified).
  bool coalgebra = false;

  AlgElt apply(Mono m) const;
  AlgElt apply(const AlgElt& a) const;
};

/// Counit-type retraction phi(x^a) = ε(x^a).
Retraction retraction_u(std::shared_ptr<const PresentedAlgebra> alg);
/// The A2 retraction with the closed-form phi values.
Retraction retraction_u2(std::shared_ptr<const PresentedAlgebra> alg);

struct RetractionBuild {
  std::optional<Retraction> retraction;
  /// B-monomial where the primitive-matching equation has no solution.
  std::optional<Mono> failure;
  std::string note;
};

/// Height-by-height construction of a coalgebra retraction. Extra primitive
/// summands can be supplied per B-monomial to select a non-default solution.
RetractionBuild build_coalgebra_retraction(std::shared_ptr<const PresentedAlgebra> alg,
                                           const std::map<Mono, AlgElt>& seeds = {});

/// u∘κ = id, the K-bimodule law on sampled monomials and the coalgebra law on
/// all R-bar monomials of height <= max_height.
std::vector<Check> verify_retraction(const Retraction& u, int max_height);
Check check_coalgebra_law(const Retraction& u, int max_height);

nlohmann::json retraction_to_json(const Retraction& u);
nlohmann::json alg_to_json(const PresentedAlgebra& alg, const AlgElt& a);

}  // namespace hopflift
