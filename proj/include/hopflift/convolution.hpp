// Functionals on finite (or height-truncated) coalgebras under convolution.
#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hopflift/presented.hpp"

namespace hopflift {

struct CoTerm {
  std::size_t left;
  std::size_t right;
  CycNum coeff;
};

/// A graded coalgebra with an explicit basis 0..size()-1; element 0 is the
/// unit. Infinite coalgebras are truncated at a height cutoff, which is closed
/// under taking coproduct legs.
class Coalgebra {
 public:
  virtual ~Coalgebra() = default;

  const std::string& name() const { return name_; }
  int cutoff() const { return cutoff_; }
  std::size_t size() const { return labels_.size(); }
  int height(std::size_t i) const { return heights_[i]; }
  const MultiDeg& degree(std::size_t i) const { return degrees_[i]; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<CoTerm>& coproduct(std::size_t i) const { return cops_[i]; }
  int max_height() const;
  const CartanDatum& datum() const { return *datum_; }
  const std::shared_ptr<const CartanDatum>& datum_ptr() const { return datum_; }

 protected:
  explicit Coalgebra(std::shared_ptr<const CartanDatum> d) : datum_(std::move(d)) {}
  std::shared_ptr<const CartanDatum> datum_;
  std::string name_;
  int cutoff_ = -1;
  std::vector<int> heights_;
  std::vector<MultiDeg> degrees_;
  std::vector<std::string> labels_;
  std::vector<std::vector<CoTerm>> cops_;
};

/// The Nichols algebra B in its PBW basis; ids follow alg.b_basis().
class BCoalgebra : public Coalgebra {
 public:
  explicit BCoalgebra(std::shared_ptr<const PresentedAlgebra> alg);
  const PresentedAlgebra& alg() const { return *alg_; }
  const std::shared_ptr<const PresentedAlgebra>& alg_ptr() const { return alg_; }
  Mono mono(std::size_t i) const { return alg_->b_basis()[i]; }
  std::size_t index(Mono m) const { return alg_->b_index(m); }

 private:
  std::shared_ptr<const PresentedAlgebra> alg_;
};

/// K truncated at a height cutoff; monomials are K-monomials (see kappa).
class KCoalgebra : public Coalgebra {
 public:
  KCoalgebra(std::shared_ptr<const PresentedAlgebra> alg, int cutoff);
  const PresentedAlgebra& alg() const { return *alg_; }
  Mono mono(std::size_t i) const { return monos_[i]; }
  /// Index of a K-monomial; throws CutoffExceeded above the cutoff.
  std::size_t index(Mono k) const;

 private:
  std::shared_ptr<const PresentedAlgebra> alg_;
  std::vector<Mono> monos_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// R-bar truncated at a height cutoff, with coproducts through lifts.
class RbarCoalgebra : public Coalgebra {
 public:
  RbarCoalgebra(std::shared_ptr<const PresentedAlgebra> alg, int cutoff);
  const PresentedAlgebra& alg() const { return *alg_; }
  Mono mono(std::size_t i) const { return monos_[i]; }
  std::size_t index(Mono m) const;

 private:
  std::shared_ptr<const PresentedAlgebra> alg_;
  std::vector<Mono> monos_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// X^{⊗n} with the braided coproduct (1⊗c⊗1)(Δ⊗Δ) (iterated), or the plain
/// tensor coproduct when braided is false. Basis ids are mixed-radix tuples
/// with the first factor most significant.
class TensorPowerCoalgebra : public Coalgebra {
 public:
  TensorPowerCoalgebra(std::shared_ptr<const Coalgebra> base, int n, bool braided = true);
  const Coalgebra& base() const { return *base_; }
  const std::shared_ptr<const Coalgebra>& base_ptr() const { return base_; }
  int power() const { return n_; }
  bool braided() const { return braided_; }
  std::size_t index(const std::vector<std::size_t>& parts) const;
  std::vector<std::size_t> parts(std::size_t id) const;

 private:
  std::shared_ptr<const Coalgebra> base_;
  int n_;
  bool braided_;
};

/// A linear functional given by its values on every basis element.
class Functional {
 public:
  Functional() = default;
  explicit Functional(std::shared_ptr<const Coalgebra> dom);
  Functional(std::shared_ptr<const Coalgebra> dom, std::vector<CycNum> values);

  static Functional counit(std::shared_ptr<const Coalgebra> dom);

  const Coalgebra& domain() const { return *dom_; }
  const std::shared_ptr<const Coalgebra>& domain_ptr() const { return dom_; }
  const CycNum& operator()(std::size_t i) const { return values_[i]; }
  CycNum& at(std::size_t i) { return values_[i]; }
  const std::vector<CycNum>& values() const { return values_; }
  bool unital() const { return values_.at(0).is_one(); }
  /// Vanishes on every basis element whose degree is not invariant.
  bool is_invariant() const;
  /// Index of the first basis element where the values differ, or -1.
  long first_difference(const Functional& o) const;

  Functional operator+(const Functional& o) const;
  Functional operator-(const Functional& o) const;
  Functional operator*(const CycNum& s) const;
  friend bool operator==(const Functional& a, const Functional& b);

 private:
  std::shared_ptr<const Coalgebra> dom_;
  std::vector<CycNum> values_;
};

/// An ε-derivation of K: values on the generators z_l (indexed by letter).
struct DerivationK {
  std::vector<CycNum> values;
};

/// Multiplicative extension of generator values to K (truncated).
Functional alg_functional_K(std::shared_ptr<const KCoalgebra> K, const std::vector<CycNum>& vals);
DerivationK derivation_K(const PresentedAlgebra& alg, const std::vector<CycNum>& vals);
Functional derivation_functional(std::shared_ptr<const KCoalgebra> K, const DerivationK& d);

Functional convolve(const Functional& f, const Functional& g);
/// Geometric series sum_k (ε - f)^{*k}; f must be unital.
Functional conv_inverse(const Functional& f);
/// x^{*n}, n >= 0.
Functional conv_power(const Functional& x, int n);
/// sum x^{*n}/n!; x must vanish on the unit.
Functional conv_exp(const Functional& x);
/// sum_{n<N} xi^{*n}/n!_q after checking xi^{*N} = 0.
Functional conv_q_exp(const Functional& xi, const CycNum& q, int N);

/// f ∘ s_K for a functional on K.
Functional compose_antipode(const Functional& f);
/// Evaluates a functional on K at a K-element; monomials above the cutoff throw.
CycNum eval_K(const Functional& f, const AlgElt& k);

void to_json(nlohmann::json& j, const Functional& f);

}  // namespace hopflift
