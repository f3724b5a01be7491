// The free braided Hopf algebra T(V) on the letters x_1..x_theta.
#pragma once

#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hopflift/datum.hpp"
#include "hopflift/lincomb.hpp"
#include "hopflift/linalg.hpp"

namespace hopflift {

/// Zero-based generator indices.
using Word = std::vector<int>;
using FreeElt = LinComb<Word>;
using TensorElt = LinComb<std::pair<Word, Word>>;
using Tensor3 = LinComb<std::array<Word, 3>>;

FreeElt free_letter(int i);
FreeElt free_word(const Word& w, const CycNum& c = CycNum(1));
MultiDeg word_degree(const Word& w, int theta);
/// Max word length; -1 for zero.
int free_height(const FreeElt& a);
/// Degree if every term has the same MultiDeg.
std::optional<MultiDeg> homogeneous_degree(const FreeElt& a, int theta);
std::map<MultiDeg, FreeElt> homogeneous_components(const FreeElt& a, int theta);
/// All words of the given degree, in lexicographic order.
const std::vector<Word>& words_of_degree(const MultiDeg& deg);

FreeElt free_mul(const FreeElt& a, const FreeElt& b);
CycNum free_counit(const FreeElt& a);
/// (a⊗b)(c⊗d) = chi_eval(deg c, deg b) (ac ⊗ bd).
TensorElt braided_tensor_mul(const TensorElt& s, const TensorElt& t, const CartanDatum& d);
TensorElt free_coproduct(const FreeElt& a, const CartanDatum& d);
/// (Δ⊗1)Δ and (1⊗Δ)Δ as three-fold tensors.
Tensor3 coproduct_left(const TensorElt& t, const CartanDatum& d);
Tensor3 coproduct_right(const TensorElt& t, const CartanDatum& d);
/// [a,b] = ab - chi_eval(deg b, deg a) ba; both must be homogeneous.
FreeElt braided_commutator(const FreeElt& a, const FreeElt& b, const CartanDatum& d);

/// The homogeneous component of degree D of the ideal generated by gens,
/// as an echelon basis over the words of degree D.
class IdealComponent {
 public:
  IdealComponent(const MultiDeg& D, const std::vector<FreeElt>& gens, int theta);
  const std::vector<Word>& basis() const { return *basis_; }
  Vec to_vec(const FreeElt& x) const;
  FreeElt from_vec(const Vec& v) const;
  RowReducer::Reduction reduce(const FreeElt& x) const { return rr_.reduce(to_vec(x)); }

  struct Span {
    Word left;
    std::size_t gen;
    Word right;
  };
  const std::vector<Span>& spans() const { return spans_; }

 private:
  const std::vector<Word>* basis_;
  std::map<Word, std::size_t> col_;
  RowReducer rr_;
  std::vector<Span> spans_;
};

struct MembershipResult {
  bool member = false;
  /// Residual after reduction by the ideal component(s); zero iff member.
  FreeElt residual;
  /// e - residual = sum coeff * left * gens[gen] * right.
  struct Term {
    Word left;
    std::size_t gen;
    Word right;
    CycNum coeff;
  };
  std::vector<Term> certificate;
};

/// Degree-wise membership of e in the two-sided ideal generated by homogeneous gens.
MembershipResult ideal_membership(const FreeElt& e, const std::vector<FreeElt>& gens, int cutoff,
                                  int theta);

struct Lemma31Result {
  bool member = false;
  FreeElt remainder;
  MembershipResult membership;
};

/// x_j^m x_i^n minus the straightened sum, tested for membership in the ideal
/// generated by [x_i, z_ji] and [x_j, z_ji]. The pair (i < j) is zero-based.
Lemma31Result lemma31_oracle(int m, int n, const CartanDatum& d, std::pair<int, int> pair = {0, 1});

void to_json(nlohmann::json& j, const FreeElt& a);
void from_json(const nlohmann::json& j, FreeElt& a);

}  // namespace hopflift
