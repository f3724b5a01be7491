#include "hopflift/convolution.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "hopflift/errors.hpp"

namespace hopflift {

int Coalgebra::max_height() const {
  int h = 0;
  for (int x : heights_) h = std::max(h, x);
  return h;
}

BCoalgebra::BCoalgebra(std::shared_ptr<const PresentedAlgebra> alg)
    : Coalgebra(alg->datum_ptr()), alg_(std::move(alg)) {
  name_ = "B";
  for (Mono m : alg_->b_basis()) {
    heights_.push_back(alg_->height(m));
    degrees_.push_back(alg_->degree(m));
    labels_.push_back(alg_->str(m));
    std::vector<CoTerm> cop;
    for (const auto& [ab, c] : alg_->coproduct(m, Tag::B))
      cop.push_back({alg_->b_index(ab.first), alg_->b_index(ab.second), c});
    cops_.push_back(std::move(cop));
  }
}

KCoalgebra::KCoalgebra(std::shared_ptr<const PresentedAlgebra> alg, int cutoff)
    : Coalgebra(alg->datum_ptr()), alg_(std::move(alg)) {
  name_ = "K";
  cutoff_ = cutoff;
  monos_ = alg_->k_basis(cutoff);
  for (std::size_t i = 0; i < monos_.size(); ++i) index_[monos_[i].bits()] = i;
  for (Mono k : monos_) {
    heights_.push_back(alg_->k_height(k));
    degrees_.push_back(alg_->k_degree(k));
    labels_.push_back(alg_->k_str(k));
    std::vector<CoTerm> cop;
    for (const auto& [ab, c] : alg_->k_coproduct(k))
      cop.push_back({index(ab.first), index(ab.second), c});
    cops_.push_back(std::move(cop));
  }
}

std::size_t KCoalgebra::index(Mono k) const {
  auto it = index_.find(k.bits());
  if (it == index_.end()) throw CutoffExceeded(alg_->k_height(k), cutoff_);
  return it->second;
}

RbarCoalgebra::RbarCoalgebra(std::shared_ptr<const PresentedAlgebra> alg, int cutoff)
    : Coalgebra(alg->datum_ptr()), alg_(std::move(alg)) {
  name_ = "Rbar";
  cutoff_ = cutoff;
  monos_ = alg_->rbar_basis(cutoff);
  for (std::size_t i = 0; i < monos_.size(); ++i) index_[monos_[i].bits()] = i;
  for (Mono m : monos_) {
    heights_.push_back(alg_->height(m));
    degrees_.push_back(alg_->degree(m));
    labels_.push_back(alg_->str(m));
    std::vector<CoTerm> cop;
    for (const auto& [ab, c] : alg_->coproduct(m, Tag::Rbar))
      cop.push_back({index(ab.first), index(ab.second), c});
    cops_.push_back(std::move(cop));
  }
}

std::size_t RbarCoalgebra::index(Mono m) const {
  auto it = index_.find(m.bits());
  if (it == index_.end()) throw CutoffExceeded(alg_->height(m), cutoff_);
  return it->second;
}

TensorPowerCoalgebra::TensorPowerCoalgebra(std::shared_ptr<const Coalgebra> base, int n,
                                           bool braided)
    : Coalgebra(base->datum_ptr()), base_(std::move(base)), n_(n), braided_(braided) {
  if (n < 1) throw InvalidArgument("tensor power must be at least 1");
  name_ = base_->name() + "^" + std::to_string(n) + (braided ? "" : " (plain)");
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= base_->size();
  const CartanDatum& d = *datum_;
  for (std::size_t id = 0; id < total; ++id) {
    auto ps = parts(id);
    int h = 0;
    MultiDeg deg(d.theta(), 0);
    std::string label;
    for (int i = 0; i < n; ++i) {
      h += base_->height(ps[i]);
      deg = deg + base_->degree(ps[i]);
      if (i) label += " ⊗ ";
      label += base_->label(ps[i]);
    }
    heights_.push_back(h);
    degrees_.push_back(deg);
    labels_.push_back(label);

    std::vector<CoTerm> cop;
    std::vector<std::size_t> pick(n, 0);
    std::vector<std::size_t> left(n), right(n);
    auto rec = [&](auto&& self, int pos, CycNum c) -> void {
      if (pos == n) {
        cop.push_back({index(left), index(right), c});
        return;
      }
      for (const auto& t : base_->coproduct(ps[pos])) {
        CycNum s = c * t.coeff;
        if (braided_)
          for (int i = 0; i < pos; ++i)
            s *= d.chi_eval(base_->degree(t.left), base_->degree(right[i]));
        left[pos] = t.left;
        right[pos] = t.right;
        self(self, pos + 1, s);
      }
    };
    rec(rec, 0, CycNum(1));
    // Merge repeated (left, right) pairs.
    std::map<std::pair<std::size_t, std::size_t>, CycNum> merged;
    for (auto& t : cop) merged[{t.left, t.right}] += t.coeff;
    cop.clear();
    for (auto& [k, c] : merged)
      if (!c.is_zero()) cop.push_back({k.first, k.second, c});
    cops_.push_back(std::move(cop));
  }
}

std::size_t TensorPowerCoalgebra::index(const std::vector<std::size_t>& ps) const {
  std::size_t id = 0;
  for (std::size_t p : ps) id = id * base_->size() + p;
  return id;
}

std::vector<std::size_t> TensorPowerCoalgebra::parts(std::size_t id) const {
  std::vector<std::size_t> ps(n_);
  for (int i = n_ - 1; i >= 0; --i) {
    ps[i] = id % base_->size();
    id /= base_->size();
  }
  return ps;
}

Functional::Functional(std::shared_ptr<const Coalgebra> dom)
    : dom_(std::move(dom)), values_(dom_->size()) {}

Functional::Functional(std::shared_ptr<const Coalgebra> dom, std::vector<CycNum> values)
    : dom_(std::move(dom)), values_(std::move(values)) {
  if (values_.size() != dom_->size()) throw InvalidArgument("functional size does not match domain");
}

Functional Functional::counit(std::shared_ptr<const Coalgebra> dom) {
  Functional f(std::move(dom));
  f.values_[0] = CycNum(1);
  return f;
}

bool Functional::is_invariant() const {
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!values_[i].is_zero() && !dom_->datum().is_invariant(dom_->degree(i))) return false;
  return true;
}

long Functional::first_difference(const Functional& o) const {
  if (dom_ != o.dom_) throw DomainMismatch("functionals live on different domains");
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!(values_[i] == o.values_[i])) return static_cast<long>(i);
  return -1;
}

Functional Functional::operator+(const Functional& o) const {
  if (dom_ != o.dom_) throw DomainMismatch("sum of functionals on different domains");
  Functional r = *this;
  for (std::size_t i = 0; i < values_.size(); ++i) r.values_[i] += o.values_[i];
  return r;
}

Functional Functional::operator-(const Functional& o) const { return *this + o * CycNum(-1); }

Functional Functional::operator*(const CycNum& s) const {
  Functional r = *this;
  for (auto& v : r.values_) v *= s;
  return r;
}

bool operator==(const Functional& a, const Functional& b) {
  return a.dom_ == b.dom_ && a.values_ == b.values_;
}

Functional alg_functional_K(std::shared_ptr<const KCoalgebra> K, const std::vector<CycNum>& vals) {
  const PresentedAlgebra& alg = K->alg();
  if (static_cast<int>(vals.size()) != alg.num_letters())
    throw InvalidArgument("need one value per K-generator");
  for (int l = 0; l < alg.num_letters(); ++l)
    if (!vals[l].is_zero() && !alg.datum().is_invariant(alg.k_degree(Mono().plus(l))))
      throw InvarianceViolation("f(" + alg.letter(l).z_name + ") must vanish: " +
                                alg.letter(l).z_name + " is not G-invariant");
  Functional f(K);
  for (std::size_t i = 0; i < K->size(); ++i) {
    CycNum v(1);
    Mono k = K->mono(i);
    for (int l = 0; l < alg.num_letters(); ++l)
      if (k[l]) v *= vals[l].pow(k[l]);
    f.at(i) = v;
  }
  return f;
}

DerivationK derivation_K(const PresentedAlgebra& alg, const std::vector<CycNum>& vals) {
  if (static_cast<int>(vals.size()) != alg.num_letters())
    throw InvalidArgument("need one value per K-generator");
  for (int l = 0; l < alg.num_letters(); ++l)
    if (!vals[l].is_zero() && !alg.datum().is_invariant(alg.k_degree(Mono().plus(l))))
      throw InvarianceViolation("d(" + alg.letter(l).z_name + ") must vanish: " +
                                alg.letter(l).z_name + " is not G-invariant");
  return DerivationK{vals};
}

Functional derivation_functional(std::shared_ptr<const KCoalgebra> K, const DerivationK& d) {
  Functional f(K);
  for (std::size_t l = 0; l < d.values.size(); ++l) f.at(K->index(Mono().plus(l))) = d.values[l];
  return f;
}

Functional convolve(const Functional& f, const Functional& g) {
  if (f.domain_ptr() != g.domain_ptr()) throw DomainMismatch("convolution of functionals on different domains");
  const Coalgebra& dom = f.domain();
  Functional r(f.domain_ptr());
  for (std::size_t i = 0; i < dom.size(); ++i) {
    CycNum v;
    for (const auto& t : dom.coproduct(i)) {
      const CycNum& a = f(t.left);
      if (a.is_zero()) continue;
      const CycNum& b = g(t.right);
      if (b.is_zero()) continue;
      v += t.coeff * a * b;
    }
    r.at(i) = v;
  }
  return r;
}

Functional conv_inverse(const Functional& f) {
  if (!f.unital()) throw InvalidArgument("convolution inverse needs a unital functional");
  Functional eps = Functional::counit(f.domain_ptr());
  Functional g = eps - f;
  Functional result = eps, power = eps;
  for (int k = 1; k <= f.domain().max_height(); ++k) {
    power = convolve(power, g);
    if (std::all_of(power.values().begin(), power.values().end(),
                    [](const CycNum& c) { return c.is_zero(); }))
      break;
    result = result + power;
  }
  return result;
}

Functional conv_power(const Functional& x, int n) {
  Functional r = Functional::counit(x.domain_ptr());
  for (int i = 0; i < n; ++i) r = convolve(r, x);
  return r;
}

Functional conv_exp(const Functional& x) {
  if (!x(0).is_zero()) throw InvalidArgument("exponential needs a functional vanishing at 1");
  Functional result = Functional::counit(x.domain_ptr());
  Functional power = result;
  Rational fact(1);
  for (int n = 1; n <= x.domain().max_height(); ++n) {
    power = convolve(power, x);
    fact = fact * Rational(n);
    result = result + power * CycNum(fact.inv());
  }
  return result;
}

Functional conv_q_exp(const Functional& xi, const CycNum& q, int N) {
  if (!xi(0).is_zero()) throw InvalidArgument("q-exponential needs a functional vanishing at 1");
  Functional result = Functional::counit(xi.domain_ptr());
  Functional power = result;
  for (int n = 1; n < N; ++n) {
    power = convolve(power, xi);
    result = result + power * q_factorial(n, q).inv();
  }
  power = convolve(power, xi);
  long bad = power.first_difference(Functional(xi.domain_ptr()));
  if (bad >= 0)
    throw InvalidArgument("q-exponential undefined: the " + std::to_string(N) +
                          "-th convolution power is nonzero at " + xi.domain().label(bad));
  return result;
}

Functional compose_antipode(const Functional& f) {
  auto K = std::dynamic_pointer_cast<const KCoalgebra>(f.domain_ptr());
  if (!K) throw DomainMismatch("composition with the antipode needs a functional on K");
  Functional r(f.domain_ptr());
  for (std::size_t i = 0; i < K->size(); ++i) r.at(i) = eval_K(f, K->alg().antipode_K(K->mono(i)));
  return r;
}

CycNum eval_K(const Functional& f, const AlgElt& k) {
  const auto* K = dynamic_cast<const KCoalgebra*>(&f.domain());
  if (!K) throw DomainMismatch("eval_K needs a functional on K");
  CycNum v;
  for (const auto& [m, c] : k) v += c * f(K->index(m));
  return v;
}

void to_json(nlohmann::json& j, const Functional& f) {
  nlohmann::json values = nlohmann::json::array();
  for (std::size_t i = 0; i < f.values().size(); ++i)
    if (!f(i).is_zero()) values.push_back({{"basis", f.domain().label(i)}, {"coeff", f(i)}});
  j = nlohmann::json{{"domain", f.domain().name()}, {"cutoff", f.domain().cutoff()}, {"values", values}};
}

}  // namespace hopflift
