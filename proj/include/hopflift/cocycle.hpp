// Cofaces, 2-cocycles on B⊗B and on the bosonization Y = B#kG, the
// connecting maps δ and δ_hoch, twisting, deformed products.
#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hopflift/check.hpp"
#include "hopflift/convolution.hpp"

namespace hopflift {

/// 2·N·|Φ⁺|.
int default_cutoff(const CartanDatum& d);

/// Everything derived from one datum: R-bar, B, B⊗B and K at a cutoff.
struct Workspace {
  std::shared_ptr<const CartanDatum> datum;
  std::shared_ptr<const PresentedAlgebra> alg;
  std::shared_ptr<const BCoalgebra> B;
  std::shared_ptr<const TensorPowerCoalgebra> BB;
  std::shared_ptr<const KCoalgebra> K;

  static Workspace make(const CartanDatum& d, int cutoff = -1);
  /// B-product of basis ids as (id, coeff) pairs.
  const std::vector<std::pair<std::size_t, CycNum>>& b_mul(std::size_t x, std::size_t y) const;
  std::size_t bb(std::size_t x, std::size_t y) const { return x * B->size() + y; }

 private:
  std::shared_ptr<std::vector<std::vector<std::pair<std::size_t, CycNum>>>> b_table_;
};

/// ∂^i f for f on B^{⊗n} (n = 1 for B itself); i ranges over 0..n+1.
Functional coface(int i, const Functional& f, std::shared_ptr<const TensorPowerCoalgebra> target);

/// fu, fsu and σ_R = ∂^0 fu * ∂^2 fu * ∂^1 fsu evaluated on R-bar monomials.
class LiftedCocycle {
 public:
  LiftedCocycle(const Workspace& ws, const Functional& f, const Retraction& u);
  CycNum fu(Mono r) const;
  CycNum fsu(Mono r) const;
  CycNum fsu(const AlgElt& r) const;
  CycNum sigma_R(Mono r, Mono s) const;
  CycNum sigma_R(const AlgElt& r, const AlgElt& s) const;

 private:
  const Workspace* ws_;
  Functional f_, fs_;
  const Retraction* u_;
  mutable std::map<Mono, CycNum> fu_memo_, fsu_memo_;
};

/// σ = ∂(fu)(v⊗v) on B⊗B. f must be an algebra map and u flagged as a
/// coalgebra retraction.
Functional delta_connecting(const Workspace& ws, const Functional& f, const Retraction& u);
/// σ_R vanishes when a K-generator is multiplied onto either argument
/// (sampled on B-range monomials of height <= max_height).
Check check_factorization(const Workspace& ws, const Functional& f, const Retraction& u,
                          int max_height);

/// Normalization and the braided cocycle identity on all B triples.
Check check_cocycle_braided(const Workspace& ws, const Functional& sigma);
Functional coboundary(const Workspace& ws, const Functional& chi);
/// ∂^0χ * ∂^2χ * σ * ∂^1χ^{-1}.
Functional twist(const Workspace& ws, const Functional& sigma, const Functional& chi);

// Bosonization Y = B#kG.
using YBasis = std::pair<std::size_t, std::size_t>;  // (B id, group index)
using YElt = LinComb<YBasis>;
using YPairFn = std::function<CycNum(YBasis, YBasis)>;

class YAlgebra {
 public:
  explicit YAlgebra(const Workspace& ws);
  const Workspace& ws() const { return ws_; }
  std::size_t group_size() const { return ws_.datum->group_size(); }
  std::size_t size() const { return ws_.B->size() * group_size(); }
  YBasis unit() const { return {0, e_}; }
  std::string str(YBasis a) const;
  /// (x g)(y h) = chi_on(deg y, g) xy gh.
  YElt mul(YBasis a, YBasis b) const;
  YElt mul(const YElt& a, const YElt& b) const;
  /// Δ(x g) = sum x_1 g(deg x_2) g ⊗ x_2 g.
  const std::vector<std::tuple<YBasis, YBasis, CycNum>>& coproduct(YBasis a) const;
  /// Group index of the group-like attached to a B basis element.
  std::size_t group_of(std::size_t b) const;
  std::size_t group_mul(std::size_t g, std::size_t h) const;
  CycNum act(std::size_t b, std::size_t g) const;

 private:
  Workspace ws_;
  std::size_t e_;
  std::vector<std::size_t> b_group_;
  std::vector<std::vector<CycNum>> act_;
  std::vector<std::vector<std::size_t>> g_mul_;
  mutable std::map<YBasis, std::vector<std::tuple<YBasis, YBasis, CycNum>>> cop_memo_;
};

/// σ_Y(xh ⊗ yg) = chi_on(deg y, h) σ(x⊗y).
YPairFn bosonize_cocycle(std::shared_ptr<const YAlgebra> Y, const Functional& sigma);
/// χ_Y(x g) = χ(x).
std::function<CycNum(YBasis)> extend_to_Y(const Functional& chi);
/// The ordinary cocycle identity on the given triples.
Check check_cocycle_ordinary(const YAlgebra& Y, const YPairFn& sigma,
                             const std::vector<std::array<YBasis, 3>>& triples);
/// Every B triple with random group parts (seeded).
std::vector<std::array<YBasis, 3>> sample_triples(const YAlgebra& Y, std::size_t count,
                                                  std::uint32_t seed);

/// Y with the product m_σ = σ * m * σ^{-1}.
class LiftedAlgebra {
 public:
  LiftedAlgebra(std::shared_ptr<const YAlgebra> Y, YPairFn sigma, YPairFn sigma_inv,
                bool equivariant);
  const YAlgebra& Y() const { return *Y_; }
  /// The defining formula, evaluated directly.
  YElt mul_direct(YBasis a, YBasis b) const;
  /// Uses the B-pair table and G-equivariance when the cocycle comes from B⊗B.
  YElt mul(YBasis a, YBasis b) const;
  YElt mul(const YElt& a, const YElt& b) const;
  /// m_σ on (x·1) ⊗ (y·1) for all B basis pairs.
  std::map<std::pair<std::size_t, std::size_t>, YElt> table() const;

  std::vector<Check> verify(std::uint32_t seed, std::size_t samples) const;

 private:
  std::shared_ptr<const YAlgebra> Y_;
  YPairFn sigma_, sigma_inv_;
  bool equivariant_;
  mutable std::map<std::pair<YBasis, YBasis>, YElt> memo_;
};

/// Builds the lifted algebra of a braided cocycle on B⊗B; the cocycle must
/// pass check_cocycle_braided.
LiftedAlgebra deform_multiplication(const Workspace& ws, std::shared_ptr<const YAlgebra> Y,
                                    const Functional& sigma);
/// ψ = χ^{-1} * id * χ is an algebra map Y_σ -> Y_σ' for σ' the χ-twist of σ,
/// with χ extended to Y by χ(xg) = χ(x). Checked on all (x·1, y·1) pairs and
/// on sampled pairs with group parts.
Check deformation_iso_check(const Workspace& ws, std::shared_ptr<const YAlgebra> Y,
                            const Functional& sigma, const Functional& chi,
                            std::size_t samples, std::uint32_t seed);

/// ζ(x⊗y) = -d(u(v(x) v(y))).
Functional delta_hoch(const Workspace& ws, const DerivationK& d, const Retraction& u);

struct KunnethParts {
  Functional z1, z2, z21;
};
KunnethParts kunneth_split(const Workspace& ws, const Functional& zeta);
/// e_q^{ζ_1} * e_q^{ζ_2} * e_q^{ζ_21}.
Functional exp_q_total(const Workspace& ws, const Functional& zeta);

/// Graded search for χ on B, supported on invariant degrees, with
/// twist(σ, χ) = target. Height by height the new χ values enter linearly.
struct TwistSearch {
  std::optional<Functional> chi;
  std::string note;
};
TwistSearch find_twist(const Workspace& ws, const Functional& sigma, const Functional& target);

struct Theorem33Report {
  Functional delta_exp;   // δ(e^d)
  Functional exp_q;       // Exp_q(δ_hoch d)
  Check equal;            // value-table equality
  std::string level;      // "cocycle", "class (twist found)" or "differ"
  /// δ(e^d) against the opposite order e_q^{ζ_21} * e_q^{ζ_2} * e_q^{ζ_1}.
  Check reversed;
  std::string note;
};
Theorem33Report theorem33_check(const Workspace& ws, const DerivationK& d);

/// Tensor factorization of δ on a quantum linear space split into S and T (0-based vertices).
Check prop36_check(const CartanDatum& d, const std::vector<int>& S, const std::vector<int>& T,
                   const std::vector<CycNum>& fS, const std::vector<CycNum>& fT);
/// Same, with generator values given per letter of d and split between S and T.
Check prop36_check(const CartanDatum& d, const std::vector<int>& S, const std::vector<int>& T,
                   const std::vector<CycNum>& vals);
/// Every simple generator has some group element acting nontrivially.
Check alg_maps_trivial(const CartanDatum& d);
/// twist(δ_u f, fu' * fsu) = δ_u' f.
Check retraction_independence_check(const Workspace& ws, const Functional& f, const Retraction& u,
                                    const Retraction& u2);

nlohmann::json cocycle_to_json(const Workspace& ws, const Functional& sigma);
nlohmann::json lifted_to_json(const LiftedAlgebra& A);

}  // namespace hopflift
