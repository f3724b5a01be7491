#include "hopflift/presented.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "hopflift/errors.hpp"
#include "hopflift/linalg.hpp"

namespace hopflift {

Mono Mono::from_exps(const std::vector<int>& exps) {
  if (static_cast<int>(exps.size()) > kMaxLetters) throw InvalidArgument("too many PBW letters");
  Mono m;
  for (std::size_t i = 0; i < exps.size(); ++i) m = m.with(static_cast<int>(i), exps[i]);
  return m;
}

Mono Mono::with(int i, int e) const {
  if (e < 0 || e > kMaxExp) throw InvalidArgument("PBW exponent out of range: " + std::to_string(e));
  Mono m = *this;
  m.bits_ &= ~(static_cast<std::uint64_t>(kMaxExp) << shift(i));
  m.bits_ |= static_cast<std::uint64_t>(e) << shift(i);
  return m;
}

Mono Mono::operator+(Mono o) const {
  Mono m = *this;
  for (int i = 0; i < kMaxLetters; ++i)
    if (o[i]) m = m.with(i, m[i] + o[i]);
  return m;
}

std::vector<int> Mono::exps(int n) const {
  std::vector<int> e(n);
  for (int i = 0; i < n; ++i) e[i] = (*this)[i];
  return e;
}

namespace {

MultiDeg unit_deg(int theta, int i) {
  MultiDeg a(theta, 0);
  a[i] = 1;
  return a;
}

// Enumerates exponent vectors with sum_l e_l * weight_l <= max_weight and
// e_l <= cap_l (cap < 0 means unbounded).
std::vector<Mono> enumerate(const std::vector<int>& weight, const std::vector<int>& cap,
                            int max_weight) {
  std::vector<Mono> out;
  int n = static_cast<int>(weight.size());
  std::vector<int> e(n, 0);
  auto rec = [&](auto&& self, int pos, int used) -> void {
    if (pos == n) {
      out.push_back(Mono::from_exps(e));
      return;
    }
    for (int k = 0;; ++k) {
      if (cap[pos] >= 0 && k > cap[pos]) break;
      if (used + k * weight[pos] > max_weight) break;
      e[pos] = k;
      self(self, pos + 1, used + k * weight[pos]);
      if (weight[pos] == 0) break;
    }
    e[pos] = 0;
  };
  rec(rec, 0, 0);
  return out;
}

}  // namespace

PresentedAlgebra::PresentedAlgebra(std::shared_ptr<const CartanDatum> d, int cutoff)
    : datum_(std::move(d)), cutoff_(cutoff) {
  const CartanDatum& dat = *datum_;
  const int theta = dat.theta();
  if (cutoff_ < 1 || cutoff_ > Mono::kMaxExp)
    throw InvalidArgument("cutoff must lie in 1.." + std::to_string(Mono::kMaxExp));
  letters_ = dat.positive_roots();
  if (static_cast<int>(letters_.size()) > Mono::kMaxLetters)
    throw InvalidArgument("too many PBW letters for the packed representation");

  simple_letter_.assign(theta, -1);
  for (int l = 0; l < num_letters(); ++l) {
    const RootVector& r = letters_[l];
    if (r.linking) {
      auto [i, j] = r.pair;
      lifts_.push_back(braided_commutator(free_letter(j), free_letter(i), dat));
      continue;
    }
    int simple = -1;
    for (int i = 0; i < theta; ++i)
      if (r.degree == unit_deg(theta, i)) simple = i;
    if (simple >= 0) {
      simple_letter_[simple] = l;
      lifts_.push_back(free_letter(simple));
    } else if (dat.family() == Family::A2 && r.name == "e_13") {
      lifts_.push_back(braided_commutator(free_letter(0), free_letter(1), dat));
    } else {
      throw InvalidArgument("no lift for root vector " + r.name);
    }
  }

  switch (dat.family()) {
    case Family::A1: break;
    case Family::QPLANE:
    case Family::QLS: {
      std::vector<std::vector<bool>> linked(theta, std::vector<bool>(theta, false));
      for (auto [i, j] : dat.linking()) linked[i][j] = true;
      for (int i = 0; i < theta; ++i)
        for (int j = i + 1; j < theta; ++j)
          if (!linked[i][j])
            relations_.push_back(braided_commutator(free_letter(j), free_letter(i), dat));
      for (int l = 0; l < num_letters(); ++l)
        if (letters_[l].linking)
          for (int k = 0; k < theta; ++k)
            relations_.push_back(braided_commutator(free_letter(k), lifts_[l], dat));
      break;
    }
    case Family::A2: {
      FreeElt x1 = free_letter(0), x2 = free_letter(1);
      relations_.push_back(braided_commutator(x1, braided_commutator(x1, x2, dat), dat));
      relations_.push_back(braided_commutator(x2, braided_commutator(x2, x1, dat), dat));
      break;
    }
  }
  derive_rules();

  std::vector<int> weight, cap;
  for (const auto& r : letters_) {
    weight.push_back(::hopflift::height(r.degree));
    cap.push_back(r.linking ? 0 : r.order - 1);
  }
  int bmax = 0;
  for (int l = 0; l < num_letters(); ++l) bmax += weight[l] * std::max(cap[l], 0);
  b_basis_ = enumerate(weight, cap, bmax);
  std::sort(b_basis_.begin(), b_basis_.end(), [&](Mono a, Mono b) {
    int ha = height(a), hb = height(b);
    return ha != hb ? ha < hb : b < a;
  });
  for (std::size_t i = 0; i < b_basis_.size(); ++i) b_index_[b_basis_[i].bits()] = i;
}

void PresentedAlgebra::derive_rules() {
  const CartanDatum& dat = *datum_;
  const int theta = dat.theta();
  const int n = num_letters();
  rule_index_.assign(n, std::vector<int>(n, -1));
  for (int hi = 1; hi < n; ++hi)
    for (int lo = 0; lo < hi; ++lo) {
      MultiDeg D = letters_[hi].degree + letters_[lo].degree;
      std::vector<Mono> cands;
      for (int l = 0; l < n; ++l)
        if (letters_[l].degree == D) cands.push_back(letter_mono(l));
      for (int a = 0; a < hi; ++a)
        for (int b = a; b < n; ++b)
          if (letters_[a].degree + letters_[b].degree == D)
            cands.push_back(letter_mono(a).plus(b));
      IdealComponent ideal(D, relations_, theta);
      std::vector<Vec> cols;
      RowReducer indep(ideal.basis().size());
      for (Mono c : cands) {
        Vec v = ideal.reduce(lift(c)).residual;
        if (!indep.insert(v, cols.size()))
          throw Error("PBW candidates are dependent modulo the relations for " +
                      letters_[hi].name + " " + letters_[lo].name);
        cols.push_back(std::move(v));
      }
      FreeElt target = free_mul(lifts_[hi], lifts_[lo]);
      auto sol = solve_columns(cols, ideal.reduce(target).residual);
      if (!sol)
        throw Error("no PBW-compatible straightening rule for " + letters_[hi].name + " " +
                    letters_[lo].name);
      StraighteningRule rule{hi, lo, {}};
      for (std::size_t k = 0; k < cands.size(); ++k) rule.rhs.add(cands[k], (*sol)[k]);
      rule_index_[hi][lo] = static_cast<int>(rules_.size());
      rules_.push_back(std::move(rule));
    }
}

const StraighteningRule* PresentedAlgebra::rule(int hi, int lo) const {
  int idx = rule_index_[hi][lo];
  return idx < 0 ? nullptr : &rules_[idx];
}

MultiDeg PresentedAlgebra::degree(Mono m) const {
  MultiDeg a(datum_->theta(), 0);
  for (int l = 0; l < num_letters(); ++l)
    if (int e = m[l])
      for (std::size_t i = 0; i < a.size(); ++i) a[i] += e * letters_[l].degree[i];
  return a;
}

int PresentedAlgebra::height(Mono m) const {
  int h = 0;
  for (int l = 0; l < num_letters(); ++l) h += m[l] * ::hopflift::height(letters_[l].degree);
  return h;
}

bool PresentedAlgebra::in_B(Mono m) const {
  for (int l = 0; l < num_letters(); ++l) {
    int e = m[l];
    if (e == 0) continue;
    if (letters_[l].linking || e >= letters_[l].order) return false;
  }
  return true;
}

std::string PresentedAlgebra::str(Mono m) const {
  std::string s;
  for (int l = 0; l < num_letters(); ++l) {
    int e = m[l];
    if (!e) continue;
    if (!s.empty()) s += " ";
    s += letters_[l].name;
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

std::string PresentedAlgebra::k_str(Mono k) const {
  std::string s;
  for (int l = 0; l < num_letters(); ++l) {
    int e = k[l];
    if (!e) continue;
    if (!s.empty()) s += " ";
    s += letters_[l].z_name;
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

FreeElt PresentedAlgebra::lift(Mono m) const {
  FreeElt r(Word{});
  for (int l = 0; l < num_letters(); ++l)
    for (int k = 0; k < m[l]; ++k) r = free_mul(r, lifts_[l]);
  return r;
}

void PresentedAlgebra::check_height(int h) const {
  if (h > cutoff_) throw CutoffExceeded(h, cutoff_);
}

const AlgElt& PresentedAlgebra::mul_letter(Mono m, int l, Tag tag) const {
  MemoKey key{m.bits(), l, tag};
  auto it = mul_memo_.find(key);
  if (it != mul_memo_.end()) return it->second;
  int top = -1;
  for (int k = num_letters() - 1; k >= 0; --k)
    if (m[k]) {
      top = k;
      break;
    }
  AlgElt result;
  if (top <= l) {
    Mono r = m.plus(l);
    if (tag != Tag::B || in_B(r)) result.add(r, CycNum(1));
  } else {
    Mono rest = m.with(top, m[top] - 1);
    const StraighteningRule* rl = rule(top, l);
    for (const auto& [p, c] : rl->rhs) {
      if (tag == Tag::B && !in_B(p)) continue;
      result.add(mul_mono(rest, p, tag), c);
    }
  }
  return mul_memo_.emplace(key, std::move(result)).first->second;
}

AlgElt PresentedAlgebra::mul_mono(Mono a, Mono b, Tag tag) const {
  if (tag == Tag::K) return AlgElt(a + b);
  if (tag == Tag::Rbar) check_height(height(a) + height(b));
  AlgElt cur(a);
  for (int l = 0; l < num_letters(); ++l)
    for (int k = 0; k < b[l]; ++k) {
      AlgElt next;
      for (const auto& [m, c] : cur) next.add(mul_letter(m, l, tag), c);
      cur = std::move(next);
      if (cur.is_zero()) return cur;
    }
  return cur;
}

AlgElt PresentedAlgebra::mul(const AlgElt& a, const AlgElt& b, Tag tag) const {
  AlgElt r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) r.add(mul_mono(ma, mb, tag), ca * cb);
  return r;
}

AlgElt PresentedAlgebra::normal_form(const FreeElt& e, Tag tag) const {
  if (tag == Tag::K) throw InvalidArgument("normal_form: K is not presented on T(V)");
  int h = free_height(e);
  if (h > cutoff_) throw CutoffExceeded(h, cutoff_);
  AlgElt r;
  for (const auto& [w, c] : e) {
    AlgElt cur{Mono()};
    for (int i : w) {
      AlgElt next;
      for (const auto& [m, cm] : cur) next.add(mul_letter(m, simple_letter_[i], tag), cm);
      cur = std::move(next);
    }
    r.add(cur, c);
  }
  return r;
}

AlgElt PresentedAlgebra::project_B(const AlgElt& a) const {
  AlgElt r;
  for (const auto& [m, c] : a)
    if (in_B(m)) r.add(m, c);
  return r;
}

AlgTensor PresentedAlgebra::tensor_mul(const AlgTensor& s, const AlgTensor& t, Tag tag) const {
  AlgTensor r;
  for (const auto& [ab, c1] : s) {
    MultiDeg deg_b = degree(ab.second);
    for (const auto& [cd, c2] : t) {
      CycNum scalar = datum_->chi_eval(degree(cd.first), deg_b) * c1 * c2;
      AlgElt left = mul_mono(ab.first, cd.first, tag);
      if (left.is_zero()) continue;
      AlgElt right = mul_mono(ab.second, cd.second, tag);
      for (const auto& [x, cx] : left)
        for (const auto& [y, cy] : right) r.add({x, y}, scalar * cx * cy);
    }
  }
  return r;
}

const AlgTensor& PresentedAlgebra::coproduct(Mono m, Tag tag) const {
  if (tag == Tag::K) return k_coproduct(m);
  MemoKey key{m.bits(), -1, tag};
  auto it = cop_memo_.find(key);
  if (it != cop_memo_.end()) return it->second;
  check_height(height(m));
  if (tag == Tag::B && !in_B(m)) throw InvalidArgument("coproduct: " + str(m) + " is not in B");
  AlgTensor result;
  int top = -1, count = 0;
  for (int k = 0; k < num_letters(); ++k)
    if (m[k]) {
      top = k;
      count += m[k];
    }
  if (top < 0) {
    result.add({Mono(), Mono()}, CycNum(1));
  } else if (count == 1) {
    TensorElt free = free_coproduct(lifts_[top], *datum_);
    for (const auto& [ab, c] : free) {
      AlgElt left = normal_form(FreeElt(ab.first), tag);
      if (left.is_zero()) continue;
      AlgElt right = normal_form(FreeElt(ab.second), tag);
      for (const auto& [x, cx] : left)
        for (const auto& [y, cy] : right) result.add({x, y}, c * cx * cy);
    }
  } else {
    Mono rest = m.with(top, m[top] - 1);
    const AlgTensor& a = coproduct(rest, tag);
    const AlgTensor& b = coproduct(letter_mono(top), tag);
    result = tensor_mul(a, b, tag);
  }
  return cop_memo_.emplace(key, std::move(result)).first->second;
}

AlgTensor PresentedAlgebra::coproduct(const AlgElt& a, Tag tag) const {
  AlgTensor r;
  for (const auto& [m, c] : a) r.add(coproduct(m, tag), c);
  return r;
}

std::size_t PresentedAlgebra::b_index(Mono m) const {
  auto it = b_index_.find(m.bits());
  if (it == b_index_.end()) throw InvalidArgument(str(m) + " is not a B-basis monomial");
  return it->second;
}

std::vector<Mono> PresentedAlgebra::rbar_basis(int max_height) const {
  check_height(max_height);
  std::vector<int> weight, cap;
  for (const auto& r : letters_) {
    weight.push_back(::hopflift::height(r.degree));
    cap.push_back(-1);
  }
  auto out = enumerate(weight, cap, max_height);
  std::sort(out.begin(), out.end(), [&](Mono a, Mono b) {
    int ha = height(a), hb = height(b);
    return ha != hb ? ha < hb : b < a;
  });
  return out;
}

Mono PresentedAlgebra::kappa(Mono k) const {
  Mono m;
  for (int l = 0; l < num_letters(); ++l)
    if (int e = k[l]) m = m.with(l, letters_[l].linking ? e : e * letters_[l].order);
  return m;
}

std::pair<Mono, Mono> PresentedAlgebra::split(Mono m) const {
  Mono b, k;
  for (int l = 0; l < num_letters(); ++l) {
    int e = m[l];
    if (!e) continue;
    if (letters_[l].linking) {
      k = k.with(l, e);
    } else {
      b = b.with(l, e % letters_[l].order);
      k = k.with(l, e / letters_[l].order);
    }
  }
  return {b, k};
}

std::vector<Mono> PresentedAlgebra::k_basis(int max_height) const {
  std::vector<int> weight, cap;
  for (const auto& r : letters_) {
    int h = ::hopflift::height(r.degree);
    weight.push_back(r.linking ? h : h * r.order);
    cap.push_back(-1);
  }
  auto out = enumerate(weight, cap, max_height);
  std::sort(out.begin(), out.end(), [&](Mono a, Mono b) {
    int ha = k_height(a), hb = k_height(b);
    return ha != hb ? ha < hb : b < a;
  });
  return out;
}

AlgElt PresentedAlgebra::k_mul(const AlgElt& a, const AlgElt& b) const {
  AlgElt r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) r.add(ma + mb, ca * cb);
  return r;
}

AlgTensor PresentedAlgebra::k_tensor_mul(const AlgTensor& s, const AlgTensor& t) const {
  AlgTensor r;
  for (const auto& [ab, c1] : s) {
    MultiDeg deg_b = k_degree(ab.second);
    for (const auto& [cd, c2] : t)
      r.add({ab.first + cd.first, ab.second + cd.second},
            datum_->chi_eval(k_degree(cd.first), deg_b) * c1 * c2);
  }
  return r;
}

const AlgTensor& PresentedAlgebra::k_coproduct(Mono k) const {
  auto it = k_cop_memo_.find(k.bits());
  if (it != k_cop_memo_.end()) return it->second;
  AlgTensor result;
  int top = -1, count = 0;
  for (int l = 0; l < num_letters(); ++l)
    if (k[l]) {
      top = l;
      count += k[l];
    }
  if (top < 0) {
    result.add({Mono(), Mono()}, CycNum(1));
  } else if (count == 1) {
    for (const auto& [ab, c] : coproduct(kappa(k), Tag::Rbar)) {
      auto [ba, ka] = split(ab.first);
      auto [bb, kb] = split(ab.second);
      if (!ba.is_one() || !bb.is_one())
        throw Error("K is not a subcoalgebra: " + str(ab.first) + " ⊗ " + str(ab.second) +
                    " in the coproduct of " + k_str(k));
      result.add({ka, kb}, c);
    }
  } else {
    result = k_tensor_mul(k_coproduct(k.with(top, k[top] - 1)), k_coproduct(Mono().plus(top)));
  }
  return k_cop_memo_.emplace(k.bits(), std::move(result)).first->second;
}

const AlgElt& PresentedAlgebra::antipode_K(Mono k) const {
  auto it = antipode_memo_.find(k.bits());
  if (it != antipode_memo_.end()) return it->second;
  check_height(k_height(k));
  AlgElt result;
  if (k.is_one()) {
    result.add(Mono(), CycNum(1));
  } else {
    // From s * id = ιε: s(k) = -sum over legs (a, b) != (k, 1) of s(a) b.
    for (const auto& [ab, c] : k_coproduct(k)) {
      if (ab.first == k) {
        if (!c.is_one()) throw Error("K coproduct of " + k_str(k) + " is not unitriangular");
        continue;
      }
      result.add(k_mul(antipode_K(ab.first), AlgElt(ab.second)), -c);
    }
  }
  return antipode_memo_.emplace(k.bits(), std::move(result)).first->second;
}

AlgElt PresentedAlgebra::antipode_K(const AlgElt& a) const {
  AlgElt r;
  for (const auto& [k, c] : a) r.add(antipode_K(k), c);
  return r;
}

Check PresentedAlgebra::check_confluence() const {
  Check out{"straightening rules are confluent on overlaps", true, ""};
  const int n = num_letters();
  for (int c = 2; c < n; ++c)
    for (int b = 1; b < c; ++b)
      for (int a = 0; a < b; ++a) {
        AlgElt left = mul(mul_mono(letter_mono(c), letter_mono(b), Tag::Rbar), AlgElt(letter_mono(a)),
                          Tag::Rbar);
        AlgElt right = mul(AlgElt(letter_mono(c)), mul_mono(letter_mono(b), letter_mono(a), Tag::Rbar),
                           Tag::Rbar);
        if (!(left == right)) {
          out.pass = false;
          out.witness = letters_[c].name + " " + letters_[b].name + " " + letters_[a].name;
          return out;
        }
      }
  return out;
}

AlgElt Retraction::apply(Mono m) const {
  auto [b, k] = alg->split(m);
  auto it = phi.find(b);
  if (it == phi.end()) return {};
  return alg->k_mul(it->second, AlgElt(k));
}

AlgElt Retraction::apply(const AlgElt& a) const {
  AlgElt r;
  for (const auto& [m, c] : a) r.add(apply(m), c);
  return r;
}

Retraction retraction_u(std::shared_ptr<const PresentedAlgebra> alg) {
  Retraction u;
  u.alg = std::move(alg);
  u.name = "u";
  u.phi[Mono()] = AlgElt(Mono());
  Family f = u.alg->datum().family();
  u.coalgebra = f == Family::A1 || f == Family::QPLANE || f == Family::QLS;
  return u;
}

Retraction retraction_u2(std::shared_ptr<const PresentedAlgebra> alg) {
  const CartanDatum& d = alg->datum();
  if (d.family() != Family::A2) throw InvalidArgument("retraction_u2 needs an A2 datum");
  Retraction u;
  u.alg = alg;
  u.name = "u_2";
  CycNum q = d.q();
  CycNum lambda = CycNum(1) - q.inv();
  CycNum chi = d.chi_eval(alg->letter(0).degree, alg->letter(2).degree);
  auto binom2 = [](long long n) { return n * (n - 1) / 2; };
  for (Mono x : alg->b_basis()) {
    int m = x[0], n = x[1], l = x[2];
    int t = std::min(m, l);
    Mono shifted = Mono().with(0, m - t).with(1, n + t).with(2, l - t);
    auto [b, k] = alg->split(shifted);
    if (!b.is_one()) continue;
    CycNum c = lambda.pow(-m) * chi.pow(binom2(n) - binom2(m + n));
    u.phi[x] = AlgElt(k, c);
  }
  return u;
}

namespace {

// Reduced coproduct Δ(k) - k⊗1 - 1⊗k of a K-monomial.
AlgTensor reduced_k_coproduct(const PresentedAlgebra& alg, Mono k) {
  AlgTensor t = alg.k_coproduct(k);
  t.add({k, Mono()}, CycNum(-1));
  t.add({Mono(), k}, CycNum(-1));
  return t;
}

}  // namespace

RetractionBuild build_coalgebra_retraction(std::shared_ptr<const PresentedAlgebra> alg,
                                           const std::map<Mono, AlgElt>& seeds) {
  RetractionBuild out;
  Retraction u;
  u.alg = alg;
  u.name = "u_built";
  u.phi[Mono()] = AlgElt(Mono());
  std::map<MultiDeg, std::vector<Mono>> k_by_degree;
  int hmax = 0;
  for (Mono x : alg->b_basis()) hmax = std::max(hmax, alg->height(x));
  for (Mono k : alg->k_basis(hmax)) k_by_degree[alg->k_degree(k)].push_back(k);

  for (Mono x : alg->b_basis()) {
    if (x.is_one()) continue;
    // Right-hand side (u⊗u)Δ(v x) with phi(x) still 0.
    AlgTensor rhs;
    for (const auto& [ab, c] : alg->coproduct(x, Tag::Rbar)) {
      AlgElt ua = u.apply(ab.first);
      if (ua.is_zero()) continue;
      AlgElt ub = u.apply(ab.second);
      for (const auto& [ka, ca] : ua)
        for (const auto& [kb, cb] : ub) rhs.add({ka, kb}, c * ca * cb);
    }
    const auto& cands = k_by_degree[alg->degree(x)];
    std::vector<AlgTensor> reduced;
    std::map<std::pair<Mono, Mono>, std::size_t> index;
    auto note = [&](const AlgTensor& t) {
      for (const auto& [ab, c] : t) index.emplace(ab, index.size());
    };
    note(rhs);
    for (Mono k : cands) {
      reduced.push_back(reduced_k_coproduct(*alg, k));
      note(reduced.back());
    }
    auto vec = [&](const AlgTensor& t) {
      Vec v(index.size());
      for (const auto& [ab, c] : t) v[index.at(ab)] = c;
      return v;
    };
    std::vector<Vec> cols;
    for (const auto& t : reduced) cols.push_back(vec(t));
    auto sol = solve_columns(cols, vec(rhs));
    if (!sol) {
      out.failure = x;
      out.note = "no z in K solves the primitive-matching equation at " + alg->str(x);
      return out;
    }
    AlgElt value;
    for (std::size_t i = 0; i < cands.size(); ++i) value.add(cands[i], (*sol)[i]);
    auto seed = seeds.find(x);
    if (seed != seeds.end()) {
      for (const auto& [k, c] : seed->second) {
        if (alg->k_degree(k) != alg->degree(x) || !reduced_k_coproduct(*alg, k).is_zero())
          throw InvalidArgument("seed for " + alg->str(x) + " must be a primitive of its degree");
      }
      value.add(seed->second);
    }
    if (!value.is_zero()) u.phi[x] = value;
  }
  u.coalgebra = true;
  out.retraction = std::move(u);
  return out;
}

Check check_coalgebra_law(const Retraction& u, int max_height) {
  const PresentedAlgebra& alg = *u.alg;
  Check out{"(u⊗u)Δ = Δ_K u (" + u.name + ", height <= " + std::to_string(max_height) + ")", true,
            ""};
  for (Mono r : alg.rbar_basis(max_height)) {
    AlgTensor lhs;
    for (const auto& [ab, c] : alg.coproduct(r, Tag::Rbar)) {
      AlgElt ua = u.apply(ab.first);
      if (ua.is_zero()) continue;
      AlgElt ub = u.apply(ab.second);
      for (const auto& [ka, ca] : ua)
        for (const auto& [kb, cb] : ub) lhs.add({ka, kb}, c * ca * cb);
    }
    AlgTensor rhs;
    for (const auto& [k, c] : u.apply(r)) rhs.add(alg.k_coproduct(k), c);
    if (!(lhs == rhs)) {
      out.pass = false;
      out.witness = alg.str(r);
      return out;
    }
  }
  return out;
}

std::vector<Check> verify_retraction(const Retraction& u, int max_height) {
  const PresentedAlgebra& alg = *u.alg;
  std::vector<Check> out;
  Check kap{"u∘κ = id_K (" + u.name + ")", true, ""};
  for (Mono k : alg.k_basis(max_height))
    if (!(u.apply(alg.kappa(k)) == AlgElt(k))) {
      kap.pass = false;
      kap.witness = alg.k_str(k);
      break;
    }
  out.push_back(kap);

  Check bim{"K-bimodule law (" + u.name + ")", true, ""};
  std::vector<Mono> gens;
  for (int l = 0; l < alg.num_letters(); ++l) gens.push_back(Mono().plus(l));
  for (Mono r : alg.rbar_basis(max_height)) {
    for (Mono g : gens) {
      Mono z = alg.kappa(g);
      if (alg.height(r) + alg.height(z) > max_height) continue;
      AlgElt left = u.apply(alg.mul_mono(z, r, Tag::Rbar));
      AlgElt right = u.apply(alg.mul_mono(r, z, Tag::Rbar));
      AlgElt expect = alg.k_mul(AlgElt(g), u.apply(r));
      if (!(left == expect) || !(right == expect)) {
        bim.pass = false;
        bim.witness = alg.k_str(g) + " with " + alg.str(r);
        break;
      }
    }
    if (!bim.pass) break;
  }
  out.push_back(bim);
  out.push_back(check_coalgebra_law(u, max_height));
  return out;
}

nlohmann::json alg_to_json(const PresentedAlgebra& alg, const AlgElt& a) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : a) terms.push_back({{"exponents", m.exps(alg.num_letters())}, {"coeff", c}});
  return nlohmann::json{{"terms", terms}};
}

nlohmann::json retraction_to_json(const Retraction& u) {
  nlohmann::json phi = nlohmann::json::array();
  for (const auto& [m, v] : u.phi)
    phi.push_back({{"monomial", u.alg->str(m)},
                   {"exponents", m.exps(u.alg->num_letters())},
                   {"value", alg_to_json(*u.alg, v)}});
  return nlohmann::json{{"name", u.name}, {"coalgebra", u.coalgebra}, {"phi", phi}};
}

}  // namespace hopflift
