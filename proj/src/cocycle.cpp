#include "hopflift/cocycle.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "hopflift/errors.hpp"
#include "hopflift/linalg.hpp"

namespace hopflift {

int default_cutoff(const CartanDatum& d) {
  int roots = 0;
  for (const auto& r : d.positive_roots())
    if (!r.linking) ++roots;
  return 2 * d.N() * roots;
}

Workspace Workspace::make(const CartanDatum& d, int cutoff) {
  Workspace ws;
  ws.datum = std::make_shared<const CartanDatum>(d);
  if (cutoff < 0) cutoff = default_cutoff(d);
  ws.alg = std::make_shared<const PresentedAlgebra>(ws.datum, cutoff);
  ws.B = std::make_shared<const BCoalgebra>(ws.alg);
  ws.BB = std::make_shared<const TensorPowerCoalgebra>(ws.B, 2);
  ws.K = std::make_shared<const KCoalgebra>(ws.alg, cutoff);
  const std::size_t n = ws.B->size();
  ws.b_table_ = std::make_shared<std::vector<std::vector<std::pair<std::size_t, CycNum>>>>(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (const auto& [m, c] : ws.alg->mul_mono(ws.B->mono(x), ws.B->mono(y), Tag::B))
        (*ws.b_table_)[x * n + y].push_back({ws.B->index(m), c});
  return ws;
}

const std::vector<std::pair<std::size_t, CycNum>>& Workspace::b_mul(std::size_t x,
                                                                     std::size_t y) const {
  return (*b_table_)[x * B->size() + y];
}

Functional coface(int i, const Functional& f, std::shared_ptr<const TensorPowerCoalgebra> target) {
  const int n = target->power() - 1;
  if (i < 0 || i > n + 1) throw InvalidArgument("coface index out of range");
  const auto* B = dynamic_cast<const BCoalgebra*>(&target->base());
  if (!B) throw DomainMismatch("cofaces are defined on tensor powers of B");
  const TensorPowerCoalgebra* fdom = nullptr;
  if (n == 1) {
    if (f.domain_ptr() != target->base_ptr()) throw DomainMismatch("coface: f must live on B");
  } else {
    fdom = dynamic_cast<const TensorPowerCoalgebra*>(&f.domain());
    if (!fdom || fdom->power() != n || fdom->base_ptr() != target->base_ptr())
      throw DomainMismatch("coface: f must live on B^" + std::to_string(n));
  }
  auto index = [&](const std::vector<std::size_t>& ps) { return fdom ? fdom->index(ps) : ps[0]; };
  const PresentedAlgebra& alg = B->alg();
  Functional r(target);
  for (std::size_t id = 0; id < target->size(); ++id) {
    auto ps = target->parts(id);
    CycNum v;
    if (i == 0) {
      if (ps[0] == 0) v = f(index({ps.begin() + 1, ps.end()}));
    } else if (i == n + 1) {
      if (ps[n] == 0) v = f(index({ps.begin(), ps.end() - 1}));
    } else {
      for (const auto& [m, c] : alg.mul_mono(B->mono(ps[i - 1]), B->mono(ps[i]), Tag::B)) {
        std::vector<std::size_t> q(ps.begin(), ps.begin() + (i - 1));
        q.push_back(B->index(m));
        q.insert(q.end(), ps.begin() + i + 1, ps.end());
        v += c * f(index(q));
      }
    }
    r.at(id) = v;
  }
  return r;
}

LiftedCocycle::LiftedCocycle(const Workspace& ws, const Functional& f, const Retraction& u)
    : ws_(&ws), f_(f), fs_(compose_antipode(f)), u_(&u) {}

CycNum LiftedCocycle::fu(Mono r) const {
  auto it = fu_memo_.find(r);
  if (it != fu_memo_.end()) return it->second;
  CycNum v = eval_K(f_, u_->apply(r));
  fu_memo_.emplace(r, v);
  return v;
}

CycNum LiftedCocycle::fsu(Mono r) const {
  auto it = fsu_memo_.find(r);
  if (it != fsu_memo_.end()) return it->second;
  CycNum v = eval_K(fs_, u_->apply(r));
  fsu_memo_.emplace(r, v);
  return v;
}

CycNum LiftedCocycle::fsu(const AlgElt& r) const {
  CycNum v;
  for (const auto& [m, c] : r) v += c * fsu(m);
  return v;
}

CycNum LiftedCocycle::sigma_R(Mono r, Mono s) const {
  const PresentedAlgebra& alg = *ws_->alg;
  const CartanDatum& d = alg.datum();
  MultiDeg deg_r = alg.degree(r);
  CycNum v;
  for (const auto& [ac, c1] : alg.coproduct(r, Tag::Rbar)) {
    CycNum fa = fu(ac.first);
    if (fa.is_zero()) continue;
    for (const auto& [bd, c2] : alg.coproduct(s, Tag::Rbar)) {
      CycNum fb = fu(bd.first);
      if (fb.is_zero()) continue;
      CycNum tail = fsu(alg.mul_mono(ac.second, bd.second, Tag::Rbar));
      if (tail.is_zero()) continue;
      v += c1 * c2 * d.chi_eval(alg.degree(bd.first), deg_r) * fa * fb * tail;
    }
  }
  return v;
}

CycNum LiftedCocycle::sigma_R(const AlgElt& r, const AlgElt& s) const {
  CycNum v;
  for (const auto& [a, ca] : r)
    for (const auto& [b, cb] : s) v += ca * cb * sigma_R(a, b);
  return v;
}

namespace {

void require_algebra_map(const Functional& f) {
  const auto* K = dynamic_cast<const KCoalgebra*>(&f.domain());
  if (!K) throw DomainMismatch("expected a functional on K");
  if (!f.unital()) throw InvalidArgument("f is not an algebra map: f(1) != 1");
  const PresentedAlgebra& alg = K->alg();
  for (std::size_t i = 0; i < K->size(); ++i)
    for (int l = 0; l < alg.num_letters(); ++l) {
      Mono g = Mono().plus(l);
      Mono k = K->mono(i) + g;
      if (alg.k_height(k) > K->cutoff()) continue;
      if (!(f(K->index(k)) == f(i) * f(K->index(g))))
        throw InvalidArgument("f is not an algebra map at " + K->label(i) + " * " + K->label(K->index(g)));
    }
}

std::string bb_label(const Workspace& ws, std::size_t x, std::size_t y) {
  return ws.B->label(x) + " ⊗ " + ws.B->label(y);
}

}  // namespace

Functional delta_connecting(const Workspace& ws, const Functional& f, const Retraction& u) {
  if (!u.coalgebra) throw InvalidArgument("retraction " + u.name + " is not flagged as a coalgebra map");
  require_algebra_map(f);
  LiftedCocycle L(ws, f, u);
  Functional s(ws.BB);
  for (std::size_t x = 0; x < ws.B->size(); ++x)
    for (std::size_t y = 0; y < ws.B->size(); ++y)
      s.at(ws.bb(x, y)) = L.sigma_R(ws.B->mono(x), ws.B->mono(y));
  return s;
}

Check check_factorization(const Workspace& ws, const Functional& f, const Retraction& u,
                          int max_height) {
  Check out{"∂(fu) factors through B⊗B (" + u.name + ")", true, ""};
  LiftedCocycle L(ws, f, u);
  const PresentedAlgebra& alg = *ws.alg;
  std::vector<Mono> small;
  for (Mono m : alg.b_basis())
    if (alg.height(m) <= max_height) small.push_back(m);
  for (int l = 0; l < alg.num_letters(); ++l) {
    Mono z = alg.kappa(Mono().plus(l));
    for (Mono r : small)
      for (Mono s : small) {
        if (alg.height(r) + alg.height(s) + alg.height(z) > alg.cutoff()) continue;
        AlgElt zr = alg.mul_mono(z, r, Tag::Rbar), rz = alg.mul_mono(r, z, Tag::Rbar);
        AlgElt zs = alg.mul_mono(z, s, Tag::Rbar), sz = alg.mul_mono(s, z, Tag::Rbar);
        std::vector<CycNum> vals{L.sigma_R(zr, AlgElt(s)), L.sigma_R(rz, AlgElt(s)),
                                 L.sigma_R(AlgElt(r), zs), L.sigma_R(AlgElt(r), sz)};
        for (const auto& v : vals)
          if (!v.is_zero()) {
            out.pass = false;
            out.witness = alg.letter(l).z_name + " with " + alg.str(r) + " ⊗ " + alg.str(s) +
                          ": value " + v.str();
            return out;
          }
      }
  }
  return out;
}

Check check_cocycle_braided(const Workspace& ws, const Functional& sigma) {
  Check out{"braided 2-cocycle condition", true, ""};
  const Coalgebra& B = *ws.B;
  const CartanDatum& d = *ws.datum;
  const std::size_t n = B.size();
  for (std::size_t x = 0; x < n; ++x) {
    CycNum e = x == 0 ? CycNum(1) : CycNum();
    if (!(sigma(ws.bb(0, x)) == e) || !(sigma(ws.bb(x, 0)) == e)) {
      out.pass = false;
      out.witness = "normalization fails at " + B.label(x);
      return out;
    }
  }
  using Sparse = std::vector<std::pair<std::size_t, CycNum>>;
  auto sparse = [](std::vector<CycNum>& dense) {
    Sparse s;
    for (std::size_t w = 0; w < dense.size(); ++w)
      if (!dense[w].is_zero()) s.push_back({w, dense[w]});
    return s;
  };
  // left[y][z](w): sum σ(y1 ⊗ (y2)_{-1} z1) over terms with y2 z2 -> w.
  // right[x][y](w): sum σ(x1 ⊗ (x2)_{-1} y1) over terms with x2 y2 -> w.
  std::vector<Sparse> left(n * n), right(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<CycNum> dense(n);
      for (const auto& ta : B.coproduct(a))
        for (const auto& tb : B.coproduct(b)) {
          CycNum s = sigma(ws.bb(ta.left, tb.left));
          if (s.is_zero()) continue;
          s *= ta.coeff * tb.coeff * d.chi_eval(B.degree(tb.left), B.degree(ta.right));
          for (const auto& [w, c] : ws.b_mul(ta.right, tb.right)) dense[w] += s * c;
        }
      left[a * n + b] = sparse(dense);
      right[a * n + b] = left[a * n + b];
    }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        CycNum lhs, rhs;
        for (const auto& [w, c] : left[y * n + z]) lhs += c * sigma(ws.bb(x, w));
        for (const auto& [w, c] : right[x * n + y]) rhs += c * sigma(ws.bb(w, z));
        if (!(lhs == rhs)) {
          out.pass = false;
          out.witness = B.label(x) + " | " + B.label(y) + " | " + B.label(z) + ": " + lhs.str() +
                        " != " + rhs.str();
          return out;
        }
      }
  return out;
}

Functional coboundary(const Workspace& ws, const Functional& chi) {
  return twist(ws, Functional::counit(ws.BB), chi);
}

Functional twist(const Workspace& ws, const Functional& sigma, const Functional& chi) {
  if (!chi.unital()) throw InvalidArgument("twisting functional must be unital");
  Functional inv = conv_inverse(chi);
  Functional left = convolve(coface(0, chi, ws.BB), coface(2, chi, ws.BB));
  return convolve(convolve(left, sigma), coface(1, inv, ws.BB));
}

YAlgebra::YAlgebra(const Workspace& ws) : ws_(ws) {
  const CartanDatum& d = *ws_.datum;
  e_ = d.group_index(GroupElem(d.spec().group_orders.size(), 0));
  const std::size_t G = d.group_size();
  for (std::size_t b = 0; b < ws_.B->size(); ++b) {
    b_group_.push_back(d.group_index(d.group_of(ws_.B->degree(b))));
    std::vector<CycNum> row;
    for (std::size_t g = 0; g < G; ++g) row.push_back(d.chi_on(ws_.B->degree(b), d.group_elem(g)));
    act_.push_back(std::move(row));
  }
  g_mul_.assign(G, std::vector<std::size_t>(G));
  for (std::size_t g = 0; g < G; ++g)
    for (std::size_t h = 0; h < G; ++h)
      g_mul_[g][h] = d.group_index(d.group_mul(d.group_elem(g), d.group_elem(h)));
}

std::string YAlgebra::str(YBasis a) const {
  return ws_.B->label(a.first) + " " + ws_.datum->group_str(ws_.datum->group_elem(a.second));
}

std::size_t YAlgebra::group_of(std::size_t b) const { return b_group_[b]; }
std::size_t YAlgebra::group_mul(std::size_t g, std::size_t h) const { return g_mul_[g][h]; }
CycNum YAlgebra::act(std::size_t b, std::size_t g) const { return act_[b][g]; }

YElt YAlgebra::mul(YBasis a, YBasis b) const {
  YElt r;
  CycNum s = act(b.first, a.second);
  std::size_t g = group_mul(a.second, b.second);
  for (const auto& [w, c] : ws_.b_mul(a.first, b.first)) r.add({w, g}, s * c);
  return r;
}

YElt YAlgebra::mul(const YElt& a, const YElt& b) const {
  YElt r;
  for (const auto& [x, cx] : a)
    for (const auto& [y, cy] : b) r.add(mul(x, y), cx * cy);
  return r;
}

const std::vector<std::tuple<YBasis, YBasis, CycNum>>& YAlgebra::coproduct(YBasis a) const {
  auto it = cop_memo_.find(a);
  if (it != cop_memo_.end()) return it->second;
  std::vector<std::tuple<YBasis, YBasis, CycNum>> out;
  for (const auto& t : ws_.B->coproduct(a.first))
    out.emplace_back(YBasis{t.left, group_mul(group_of(t.right), a.second)},
                     YBasis{t.right, a.second}, t.coeff);
  return cop_memo_.emplace(a, std::move(out)).first->second;
}

YPairFn bosonize_cocycle(std::shared_ptr<const YAlgebra> Y, const Functional& sigma) {
  if (sigma.domain_ptr() != Y->ws().BB) throw DomainMismatch("bosonization needs a cocycle on B⊗B");
  return [Y, sigma](YBasis a, YBasis b) {
    const CycNum& s = sigma(Y->ws().bb(a.first, b.first));
    return s.is_zero() ? s : Y->act(b.first, a.second) * s;
  };
}

std::function<CycNum(YBasis)> extend_to_Y(const Functional& chi) {
  return [chi](YBasis a) { return chi(a.first); };
}

Check check_cocycle_ordinary(const YAlgebra& Y, const YPairFn& sigma,
                             const std::vector<std::array<YBasis, 3>>& triples) {
  Check out{"ordinary 2-cocycle condition on Y⊗Y⊗Y", true, ""};
  for (const auto& [x, y, z] : triples) {
    CycNum lhs, rhs;
    for (const auto& [y1, y2, cy] : Y.coproduct(y))
      for (const auto& [z1, z2, cz] : Y.coproduct(z)) {
        CycNum s = sigma(y1, z1);
        if (s.is_zero()) continue;
        for (const auto& [w, cw] : Y.mul(y2, z2)) lhs += cy * cz * cw * s * sigma(x, w);
      }
    for (const auto& [x1, x2, cx] : Y.coproduct(x))
      for (const auto& [y1, y2, cy] : Y.coproduct(y)) {
        CycNum s = sigma(x1, y1);
        if (s.is_zero()) continue;
        for (const auto& [w, cw] : Y.mul(x2, y2)) rhs += cx * cy * cw * s * sigma(w, z);
      }
    if (!(lhs == rhs)) {
      out.pass = false;
      out.witness = Y.str(x) + " | " + Y.str(y) + " | " + Y.str(z) + ": " + lhs.str() + " != " + rhs.str();
      return out;
    }
  }
  return out;
}

std::vector<std::array<YBasis, 3>> sample_triples(const YAlgebra& Y, std::size_t count,
                                                  std::uint32_t seed) {
  std::mt19937 rng(seed);
  const std::size_t n = Y.ws().B->size();
  std::uniform_int_distribution<std::size_t> grp(0, Y.group_size() - 1), bid(0, n - 1);
  std::vector<std::array<YBasis, 3>> out;
  if (count == 0 || count >= n * n * n) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z)
          out.push_back({YBasis{x, grp(rng)}, YBasis{y, grp(rng)}, YBasis{z, grp(rng)}});
  } else {
    for (std::size_t i = 0; i < count; ++i)
      out.push_back({YBasis{bid(rng), grp(rng)}, YBasis{bid(rng), grp(rng)}, YBasis{bid(rng), grp(rng)}});
  }
  return out;
}

LiftedAlgebra::LiftedAlgebra(std::shared_ptr<const YAlgebra> Y, YPairFn sigma, YPairFn sigma_inv,
                             bool equivariant)
    : Y_(std::move(Y)), sigma_(std::move(sigma)), sigma_inv_(std::move(sigma_inv)),
      equivariant_(equivariant) {}

YElt LiftedAlgebra::mul_direct(YBasis a, YBasis b) const {
  auto key = std::make_pair(a, b);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  const YAlgebra& Y = *Y_;
  YElt r;
  for (const auto& [a1, ar, ca] : Y.coproduct(a))
    for (const auto& [b1, br, cb] : Y.coproduct(b)) {
      CycNum s = sigma_(a1, b1);
      if (s.is_zero()) continue;
      s *= ca * cb;
      for (const auto& [a2, a3, ca2] : Y.coproduct(ar))
        for (const auto& [b2, b3, cb2] : Y.coproduct(br)) {
          CycNum t = sigma_inv_(a3, b3);
          if (t.is_zero()) continue;
          r.add(Y.mul(a2, b2), s * t * ca2 * cb2);
        }
    }
  memo_.emplace(key, r);
  return r;
}

YElt LiftedAlgebra::mul(YBasis a, YBasis b) const {
  if (!equivariant_) return mul_direct(a, b);
  const YAlgebra& Y = *Y_;
  std::size_t e = Y.unit().second;
  YElt base = mul_direct({a.first, e}, {b.first, e});
  CycNum s = Y.act(b.first, a.second);
  std::size_t g = Y.group_mul(a.second, b.second);
  YElt r;
  for (const auto& [w, c] : base) r.add({w.first, Y.group_mul(w.second, g)}, c * s);
  return r;
}

YElt LiftedAlgebra::mul(const YElt& a, const YElt& b) const {
  YElt r;
  for (const auto& [x, cx] : a)
    for (const auto& [y, cy] : b) r.add(mul(x, y), cx * cy);
  return r;
}

std::map<std::pair<std::size_t, std::size_t>, YElt> LiftedAlgebra::table() const {
  std::map<std::pair<std::size_t, std::size_t>, YElt> out;
  std::size_t e = Y_->unit().second;
  const std::size_t n = Y_->ws().B->size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) out[{x, y}] = mul(YBasis{x, e}, YBasis{y, e});
  return out;
}

std::vector<Check> LiftedAlgebra::verify(std::uint32_t seed, std::size_t samples) const {
  const YAlgebra& Y = *Y_;
  const std::size_t n = Y.ws().B->size();
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> grp(0, Y.group_size() - 1);
  std::vector<Check> out;

  Check unit{"deformed product is unital", true, ""};
  for (std::size_t x = 0; x < n && unit.pass; ++x) {
    YBasis a{x, grp(rng)};
    if (!(mul(Y.unit(), a) == YElt(a)) || !(mul(a, Y.unit()) == YElt(a))) {
      unit.pass = false;
      unit.witness = Y.str(a);
    }
  }
  out.push_back(unit);

  Check assoc{"deformed product is associative", true, ""};
  for (const auto& [a, b, c] : sample_triples(Y, samples, seed + 1)) {
    YElt l = mul(mul(a, b), YElt(c));
    YElt r = mul(YElt(a), mul(b, c));
    if (!(l == r)) {
      assoc.pass = false;
      assoc.witness = Y.str(a) + " | " + Y.str(b) + " | " + Y.str(c);
      break;
    }
  }
  out.push_back(assoc);

  Check bialg{"Δ_Y is multiplicative for the deformed product", true, ""};
  using YTensor = LinComb<std::pair<YBasis, YBasis>>;
  auto cop = [&](const YElt& x) {
    YTensor t;
    for (const auto& [b, c] : x)
      for (const auto& [l, r, c2] : Y.coproduct(b)) t.add({l, r}, c * c2);
    return t;
  };
  for (std::size_t x = 0; x < n && bialg.pass; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      YBasis a{x, grp(rng)}, b{y, grp(rng)};
      YTensor lhs = cop(mul(a, b));
      YTensor rhs;
      for (const auto& [a1, a2, ca] : Y.coproduct(a))
        for (const auto& [b1, b2, cb] : Y.coproduct(b)) {
          YElt l = mul(a1, b1);
          if (l.is_zero()) continue;
          YElt r = mul(a2, b2);
          for (const auto& [p, cp] : l)
            for (const auto& [q, cq] : r) rhs.add({p, q}, ca * cb * cp * cq);
        }
      if (!(lhs == rhs)) {
        bialg.pass = false;
        bialg.witness = Y.str(a) + " | " + Y.str(b);
        break;
      }
    }
  out.push_back(bialg);

  if (equivariant_) {
    Check eq{"table extension by G-equivariance agrees with the direct formula", true, ""};
    std::uniform_int_distribution<std::size_t> bid(0, n - 1);
    for (std::size_t i = 0; i < std::max<std::size_t>(samples / 8, 32); ++i) {
      YBasis a{bid(rng), grp(rng)}, b{bid(rng), grp(rng)};
      if (!(mul(a, b) == mul_direct(a, b))) {
        eq.pass = false;
        eq.witness = Y.str(a) + " | " + Y.str(b);
        break;
      }
    }
    out.push_back(eq);
  }
  return out;
}

LiftedAlgebra deform_multiplication(const Workspace& ws, std::shared_ptr<const YAlgebra> Y,
                                    const Functional& sigma) {
  Check c = check_cocycle_braided(ws, sigma);
  if (!c.pass) throw InvalidArgument("not a 2-cocycle: " + c.witness);
  Functional inv = conv_inverse(sigma);
  return LiftedAlgebra(Y, bosonize_cocycle(Y, sigma), bosonize_cocycle(Y, inv), true);
}

namespace {

using Leg3 = std::tuple<YBasis, YBasis, YBasis, CycNum>;

std::vector<Leg3> coproduct2(const YAlgebra& Y, YBasis a) {
  std::vector<Leg3> out;
  for (const auto& [a1, ar, c1] : Y.coproduct(a))
    for (const auto& [a2, a3, c2] : Y.coproduct(ar)) out.emplace_back(a1, a2, a3, c1 * c2);
  return out;
}

}  // namespace

Check deformation_iso_check(const Workspace& ws, std::shared_ptr<const YAlgebra> Y,
                            const Functional& sigma, const Functional& chi, std::size_t samples,
                            std::uint32_t seed) {
  Check out{"ψ = χ^{-1} * id * χ is an algebra map Y_σ -> Y_σ'", true, ""};
  LiftedAlgebra A = deform_multiplication(ws, Y, sigma);
  Functional sigma_inv = conv_inverse(sigma);
  YPairFn sY = bosonize_cocycle(Y, sigma), sYinv = bosonize_cocycle(Y, sigma_inv);
  auto chiY = extend_to_Y(chi), chiYinv = extend_to_Y(conv_inverse(chi));
  auto chi_on_elt = [](const std::function<CycNum(YBasis)>& f, const YElt& e) {
    CycNum v;
    for (const auto& [b, c] : e) v += c * f(b);
    return v;
  };
  const YAlgebra& Yr = *Y;
  auto memo1 = std::make_shared<std::map<std::pair<YBasis, YBasis>, CycNum>>();
  auto memo2 = std::make_shared<std::map<std::pair<YBasis, YBasis>, CycNum>>();
  // σ'(a,b) = χ(a1)χ(b1)σ(a2,b2)χ^{-1}(a3 b3)
  YPairFn twisted = [=, &Yr](YBasis a, YBasis b) {
    auto key = std::make_pair(a, b);
    auto it = memo1->find(key);
    if (it != memo1->end()) return it->second;
    CycNum v;
    auto da = coproduct2(Yr, a), db = coproduct2(Yr, b);
    for (const auto& [a1, a2, a3, ca] : da)
      for (const auto& [b1, b2, b3, cb] : db) {
        CycNum s = chiY(a1) * chiY(b1);
        if (s.is_zero()) continue;
        s *= sY(a2, b2);
        if (s.is_zero()) continue;
        v += ca * cb * s * chi_on_elt(chiYinv, Yr.mul(a3, b3));
      }
    memo1->emplace(key, v);
    return v;
  };
  // σ'^{-1}(a,b) = χ(a1 b1)σ^{-1}(a2,b2)χ^{-1}(a3)χ^{-1}(b3)
  YPairFn twisted_inv = [=, &Yr](YBasis a, YBasis b) {
    auto key = std::make_pair(a, b);
    auto it = memo2->find(key);
    if (it != memo2->end()) return it->second;
    CycNum v;
    auto da = coproduct2(Yr, a), db = coproduct2(Yr, b);
    for (const auto& [a1, a2, a3, ca] : da)
      for (const auto& [b1, b2, b3, cb] : db) {
        CycNum s = chiYinv(a3) * chiYinv(b3);
        if (s.is_zero()) continue;
        s *= sYinv(a2, b2);
        if (s.is_zero()) continue;
        v += ca * cb * s * chi_on_elt(chiY, Yr.mul(a1, b1));
      }
    memo2->emplace(key, v);
    return v;
  };
  LiftedAlgebra A2(Y, twisted, twisted_inv, false);
  auto psi = [&](YBasis a) {
    YElt r;
    for (const auto& [a1, a2, a3, c] : coproduct2(Yr, a)) {
      CycNum s = chiYinv(a1) * chiY(a3);
      if (!s.is_zero()) r.add(a2, c * s);
    }
    return r;
  };
  auto psi_elt = [&](const YElt& e) {
    YElt r;
    for (const auto& [b, c] : e) r.add(psi(b), c);
    return r;
  };
  std::vector<std::pair<YBasis, YBasis>> pairs;
  const std::size_t n = ws.B->size();
  std::size_t e = Y->unit().second;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) pairs.push_back({{x, e}, {y, e}});
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> grp(0, Y->group_size() - 1), bid(0, n - 1);
  for (std::size_t i = 0; i < samples; ++i) pairs.push_back({{bid(rng), grp(rng)}, {bid(rng), grp(rng)}});
  for (const auto& [a, b] : pairs) {
    YElt lhs = psi_elt(A.mul(a, b));
    YElt rhs = A2.mul(psi(a), psi(b));
    if (!(lhs == rhs)) {
      out.pass = false;
      out.witness = Y->str(a) + " | " + Y->str(b);
      return out;
    }
  }
  return out;
}

Functional delta_hoch(const Workspace& ws, const DerivationK& d, const Retraction& u) {
  const PresentedAlgebra& alg = *ws.alg;
  auto dval = [&](const AlgElt& k) {
    CycNum v;
    for (const auto& [m, c] : k)
      for (int l = 0; l < alg.num_letters(); ++l)
        if (m == Mono().plus(l)) v += c * d.values[l];
    return v;
  };
  Functional z(ws.BB);
  for (std::size_t x = 0; x < ws.B->size(); ++x)
    for (std::size_t y = 0; y < ws.B->size(); ++y)
      z.at(ws.bb(x, y)) = -dval(u.apply(alg.mul_mono(ws.B->mono(x), ws.B->mono(y), Tag::Rbar)));
  return z;
}

KunnethParts kunneth_split(const Workspace& ws, const Functional& zeta) {
  if (ws.datum->family() != Family::QPLANE)
    throw InvalidArgument("the Künneth split is implemented for the quantum plane");
  KunnethParts p{Functional(ws.BB), Functional(ws.BB), Functional(ws.BB)};
  auto only = [&](std::size_t b, int letter) {
    Mono m = ws.B->mono(b);
    for (int l = 0; l < ws.alg->num_letters(); ++l)
      if (l != letter && m[l]) return false;
    return true;
  };
  for (std::size_t x = 0; x < ws.B->size(); ++x)
    for (std::size_t y = 0; y < ws.B->size(); ++y) {
      std::size_t id = ws.bb(x, y);
      if (only(x, 0) && only(y, 0))
        p.z1.at(id) = zeta(id);
      else if (only(x, 1) && only(y, 1))
        p.z2.at(id) = zeta(id);
      else
        p.z21.at(id) = zeta(id);
    }
  return p;
}

Functional exp_q_total(const Workspace& ws, const Functional& zeta) {
  KunnethParts p = kunneth_split(ws, zeta);
  CycNum q = ws.datum->q();
  int N = ws.datum->N();
  return convolve(convolve(conv_q_exp(p.z1, q, N), conv_q_exp(p.z2, q, N)), conv_q_exp(p.z21, q, N));
}

TwistSearch find_twist(const Workspace& ws, const Functional& sigma, const Functional& target) {
  TwistSearch out;
  if (!check_cocycle_braided(ws, target).pass) {
    out.note = "target is not a 2-cocycle, so no twist of a cocycle reaches it";
    return out;
  }
  const Coalgebra& B = *ws.B;
  const std::size_t n = B.size();
  Functional chi = Functional::counit(ws.B);
  for (int h = 1; h <= 2 * B.max_height(); ++h) {
    std::vector<std::size_t> unknowns;
    for (std::size_t w = 1; w < n; ++w)
      if (B.height(w) == h && ws.datum->is_invariant(B.degree(w))) unknowns.push_back(w);
    Functional cur = twist(ws, sigma, chi);
    std::vector<Vec> cols(unknowns.size());
    Vec rhs;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        int hh = B.height(x) + B.height(y);
        if (hh > h) continue;
        CycNum r = target(ws.bb(x, y)) - cur(ws.bb(x, y));
        if (hh < h || x == 0 || y == 0) {
          if (!r.is_zero()) {
            out.note = "no solution at " + bb_label(ws, x, y);
            return out;
          }
          continue;
        }
        for (std::size_t k = 0; k < unknowns.size(); ++k) {
          CycNum c;
          for (const auto& [w, cw] : ws.b_mul(x, y))
            if (w == unknowns[k]) c -= cw;
          cols[k].push_back(c);
        }
        rhs.push_back(r);
      }
    if (rhs.empty()) continue;
    if (unknowns.empty()) {
      bool zero = std::all_of(rhs.begin(), rhs.end(), [](const CycNum& c) { return c.is_zero(); });
      if (!zero) {
        out.note = "nonzero residual at height " + std::to_string(h) + " with no free values";
        return out;
      }
      continue;
    }
    auto sol = solve_columns(cols, rhs);
    if (!sol) {
      out.note = "linear system at height " + std::to_string(h) + " is inconsistent";
      return out;
    }
    for (std::size_t k = 0; k < unknowns.size(); ++k) chi.at(unknowns[k]) = (*sol)[k];
  }
  if (!(twist(ws, sigma, chi) == target)) {
    out.note = "graded solution does not reproduce the target";
    return out;
  }
  out.chi = chi;
  return out;
}

Theorem33Report theorem33_check(const Workspace& ws, const DerivationK& d) {
  if (ws.datum->family() != Family::QPLANE)
    throw InvalidArgument("theorem33_check needs the quantum plane");
  Retraction u = retraction_u(ws.alg);
  Functional f = conv_exp(derivation_functional(ws.K, d));
  Theorem33Report r;
  r.delta_exp = delta_connecting(ws, f, u);
  Functional zeta = delta_hoch(ws, d, u);
  r.exp_q = exp_q_total(ws, zeta);
  r.equal = Check{"δ(e^d) = Exp_q(δ_hoch d) on all B⊗B pairs", true, ""};
  long bad = r.delta_exp.first_difference(r.exp_q);
  if (bad < 0) {
    r.level = "cocycle";
  } else {
    r.equal.pass = false;
    r.equal.witness = ws.BB->label(bad) + ": " + r.delta_exp(bad).str() + " vs " + r.exp_q(bad).str();
    TwistSearch t = find_twist(ws, r.delta_exp, r.exp_q);
    r.level = t.chi ? "class (twist found)" : "differ";
    r.note = t.chi ? "twist supported on invariant degrees found" : t.note;
  }
  KunnethParts p = kunneth_split(ws, zeta);
  CycNum q = ws.datum->q();
  int N = ws.datum->N();
  Functional rev = convolve(convolve(conv_q_exp(p.z21, q, N), conv_q_exp(p.z2, q, N)), conv_q_exp(p.z1, q, N));
  r.reversed = Check{"δ(e^d) = e_q^{ζ_21} * e_q^{ζ_2} * e_q^{ζ_1} on all B⊗B pairs", true, ""};
  bad = r.delta_exp.first_difference(rev);
  if (bad >= 0) {
    r.reversed.pass = false;
    r.reversed.witness = ws.BB->label(bad) + ": " + r.delta_exp(bad).str() + " vs " + rev(bad).str();
  }
  return r;
}

namespace {

// Maps PBW letters of the restriction of d to vertices onto letters of d.
std::vector<int> letter_map(const CartanDatum& big, const CartanDatum& sub, const std::vector<int>& vertices) {
  std::vector<int> out;
  const auto& small = sub.positive_roots();
  const auto& large = big.positive_roots();
  for (const auto& r : small) {
    MultiDeg deg(big.theta(), 0);
    for (std::size_t i = 0; i < vertices.size(); ++i) deg[vertices[i]] = r.degree[i];
    int found = -1;
    for (std::size_t L = 0; L < large.size(); ++L)
      if (large[L].degree == deg && large[L].linking == r.linking) found = static_cast<int>(L);
    if (found < 0) throw InvalidArgument("no letter matches " + r.name);
    out.push_back(found);
  }
  return out;
}

}  // namespace

Check prop36_check(const CartanDatum& d, const std::vector<int>& S, const std::vector<int>& T,
                   const std::vector<CycNum>& fS, const std::vector<CycNum>& fT) {
  std::set<int> all(S.begin(), S.end());
  for (int t : T)
    if (!all.insert(t).second) throw InvalidArgument("S and T overlap");
  if (static_cast<int>(all.size()) != d.theta() || *all.begin() != 0 || *all.rbegin() != d.theta() - 1)
    throw InvalidArgument("S and T must partition the vertices");
  std::set<int> sset(S.begin(), S.end());
  for (auto [i, j] : d.linking())
    if (sset.count(i) != sset.count(j)) throw InvalidArgument("a vertex of S is linked to a vertex of T");

  Check out{"δ(ρ¹(f_S, f_T)) = ρ²(δf_S, δf_T)", true, ""};
  Workspace ws = Workspace::make(d);
  Workspace wsS = Workspace::make(d.restrict_to(S)), wsT = Workspace::make(d.restrict_to(T));
  auto mapS = letter_map(d, *wsS.datum, S), mapT = letter_map(d, *wsT.datum, T);
  std::vector<CycNum> vals(ws.alg->num_letters());
  for (std::size_t l = 0; l < mapS.size(); ++l) vals[mapS[l]] = fS.at(l);
  for (std::size_t l = 0; l < mapT.size(); ++l) vals[mapT[l]] = fT.at(l);

  Functional sigma = delta_connecting(ws, alg_functional_K(ws.K, vals), retraction_u(ws.alg));
  Functional sS = delta_connecting(wsS, alg_functional_K(wsS.K, fS), retraction_u(wsS.alg));
  Functional sT = delta_connecting(wsT, alg_functional_K(wsT.K, fT), retraction_u(wsT.alg));

  // ρ(x) = (p_S ⊗ p_T)Δ(x) with legs translated to the sub-datum bases.
  auto to_sub = [&](Mono m, const std::vector<int>& map, const Workspace& sub) -> std::optional<std::size_t> {
    Mono r;
    int used = 0;
    for (std::size_t l = 0; l < map.size(); ++l) {
      r = r.with(static_cast<int>(l), m[map[l]]);
      used += m[map[l]];
    }
    int total = 0;
    for (int L = 0; L < ws.alg->num_letters(); ++L) total += m[L];
    if (used != total) return std::nullopt;
    return sub.B->index(r);
  };
  struct RhoTerm {
    std::size_t s, t;
    MultiDeg deg_t;
    CycNum c;
  };
  std::vector<std::vector<RhoTerm>> rho(ws.B->size());
  for (std::size_t x = 0; x < ws.B->size(); ++x)
    for (const auto& t : ws.B->coproduct(x)) {
      auto s = to_sub(ws.B->mono(t.left), mapS, wsS);
      auto r = to_sub(ws.B->mono(t.right), mapT, wsT);
      if (s && r) rho[x].push_back({*s, *r, ws.B->degree(t.right), t.coeff});
    }
  const CartanDatum& D = *ws.datum;
  for (std::size_t x = 0; x < ws.B->size(); ++x)
    for (std::size_t y = 0; y < ws.B->size(); ++y) {
      CycNum v;
      for (const auto& a : rho[x])
        for (const auto& b : rho[y]) {
          CycNum s = sS(wsS.bb(a.s, b.s));
          if (s.is_zero()) continue;
          MultiDeg deg_bs = ws.B->degree(y) - b.deg_t;
          v += a.c * b.c * D.chi_eval(deg_bs, a.deg_t) * s * sT(wsT.bb(a.t, b.t));
        }
      if (!(v == sigma(ws.bb(x, y)))) {
        out.pass = false;
        out.witness = bb_label(ws, x, y) + ": " + sigma(ws.bb(x, y)).str() + " vs " + v.str();
        return out;
      }
    }
  return out;
}

Check prop36_check(const CartanDatum& d, const std::vector<int>& S, const std::vector<int>& T,
                   const std::vector<CycNum>& vals) {
  auto split = [&](const std::vector<int>& V) {
    std::vector<CycNum> out;
    for (int L : letter_map(d, d.restrict_to(V), V)) out.push_back(vals.at(L));
    return out;
  };
  if (vals.size() != d.positive_roots().size()) throw InvalidArgument("expected one value per generator of K");
  return prop36_check(d, S, T, split(S), split(T));
}

Check alg_maps_trivial(const CartanDatum& d) {
  Check out{"Alg_G(R, k) = {ε}: every simple generator is moved by G", true, ""};
  std::size_t k = d.spec().group_orders.size();
  for (int i = 0; i < d.theta(); ++i) {
    MultiDeg a(d.theta(), 0);
    a[i] = 1;
    bool moved = false;
    for (std::size_t j = 0; j < k && !moved; ++j) {
      GroupElem g(k, 0);
      g[j] = 1;
      moved = !d.chi_on(a, g).is_one();
    }
    if (!moved) {
      out.pass = false;
      out.witness = "x_" + std::to_string(i + 1) + " is fixed by every group element";
      return out;
    }
  }
  return out;
}

Check retraction_independence_check(const Workspace& ws, const Functional& f, const Retraction& u,
                                    const Retraction& u2) {
  Check out{"δ does not depend on the retraction (" + u.name + " vs " + u2.name + ")", true, ""};
  LiftedCocycle L(ws, f, u), L2(ws, f, u2);
  Functional chi(ws.B);
  for (std::size_t x = 0; x < ws.B->size(); ++x) {
    CycNum v;
    for (const auto& [ab, c] : ws.alg->coproduct(ws.B->mono(x), Tag::Rbar)) {
      CycNum a = L2.fu(ab.first);
      if (!a.is_zero()) v += c * a * L.fsu(ab.second);
    }
    chi.at(x) = v;
  }
  Functional s1 = delta_connecting(ws, f, u), s2 = delta_connecting(ws, f, u2);
  Functional tw = twist(ws, s1, chi);
  long bad = tw.first_difference(s2);
  if (bad >= 0) {
    out.pass = false;
    out.witness = ws.BB->label(bad) + ": " + tw(bad).str() + " vs " + s2(bad).str();
  }
  return out;
}

nlohmann::json cocycle_to_json(const Workspace& ws, const Functional& sigma) {
  nlohmann::json values = nlohmann::json::array();
  for (std::size_t x = 0; x < ws.B->size(); ++x)
    for (std::size_t y = 0; y < ws.B->size(); ++y) {
      const CycNum& c = sigma(ws.bb(x, y));
      if (!c.is_zero()) values.push_back({{"left", ws.B->label(x)}, {"right", ws.B->label(y)}, {"coeff", c}});
    }
  return nlohmann::json{{"domain", "B⊗B"}, {"values", values}};
}

nlohmann::json lifted_to_json(const LiftedAlgebra& A) {
  const YAlgebra& Y = A.Y();
  const auto& d = *Y.ws().datum;
  nlohmann::json table = nlohmann::json::array();
  for (const auto& [xy, prod] : A.table()) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [b, c] : prod)
      terms.push_back({{"monomial", Y.ws().B->label(b.first)},
                       {"group", d.group_elem(b.second)},
                       {"coeff", c}});
    table.push_back({{"left", Y.ws().B->label(xy.first)}, {"right", Y.ws().B->label(xy.second)}, {"product", terms}});
  }
  return nlohmann::json{{"basis", "B#kG"}, {"group_orders", d.spec().group_orders}, {"table", table}};
}

}  // namespace hopflift
