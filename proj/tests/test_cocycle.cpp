#include <random>
#include <set>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "hopflift/cocycle.hpp"
#include "hopflift/cyclotomic.hpp"
#include "hopflift/errors.hpp"

using namespace hopflift;

namespace {

CycNum random_cyc(std::mt19937& rng, int order) {
  std::uniform_int_distribution<int> dist(-3, 3);
  CycNum::Coeffs c;
  for (int i = 0; i < euler_phi(order); ++i) c.push_back(Rational(dist(rng)));
  return CycNum(order, c);
}

Functional random_unital(std::shared_ptr<const Coalgebra> dom, std::mt19937& rng, bool invariant) {
  Functional f(dom);
  f.at(0) = CycNum(1);
  for (std::size_t i = 1; i < dom->size(); ++i)
    if (!invariant || dom->datum().is_invariant(dom->degree(i))) f.at(i) = random_cyc(rng, 3);
  return f;
}

std::size_t bid(const Workspace& ws, std::vector<int> exps) {
  return ws.B->index(Mono::from_exps(exps));
}

CycNum qfact(const CycNum& q, int n) {
  CycNum r(1), qi(1), s;
  for (int i = 1; i <= n; ++i) {
    s += qi;
    qi *= q;
    r *= s;
  }
  return r;
}

Functional delta_of(const Workspace& ws, const std::vector<CycNum>& vals) {
  return delta_connecting(ws, alg_functional_K(ws.K, vals), retraction_u(ws.alg));
}

}  // namespace

TEST_CASE("default cutoff") {
  CHECK(default_cutoff(CartanDatum::a1(3)) == 6);
  CHECK(default_cutoff(CartanDatum::qplane(3)) == 12);
  CHECK(default_cutoff(CartanDatum::a2(3)) == 18);
}

TEST_CASE("cofaces") {
  std::mt19937 rng(3);
  Workspace ws = Workspace::make(CartanDatum::qplane(3));
  auto BBB = std::make_shared<const TensorPowerCoalgebra>(ws.B, 3);
  Functional eps = Functional::counit(ws.B);
  CHECK(coface(0, eps, ws.BB) == Functional::counit(ws.BB));
  CHECK(coface(2, eps, ws.BB) == Functional::counit(ws.BB));
  CHECK_THROWS_AS(coface(3, eps, ws.BB), InvalidArgument);
  CHECK_THROWS_AS(coface(-1, eps, ws.BB), InvalidArgument);

  Functional f = random_unital(ws.B, rng, false);
  Functional d1 = coface(1, f, ws.BB);
  std::size_t x1 = bid(ws, {1, 0, 0}), x2 = bid(ws, {0, 1, 0});
  // x2 x1 = q x1 x2 in B.
  CHECK(d1(ws.bb(x2, x1)) == ws.datum->chi(0, 1) * f(bid(ws, {1, 1, 0})));
  CHECK(d1(ws.bb(x1, x1)) == f(bid(ws, {2, 0, 0})));
  CHECK(d1(ws.bb(bid(ws, {2, 0, 0}), x1)).is_zero());
  Functional d0 = coface(0, f, ws.BB), d2 = coface(2, f, ws.BB);
  CHECK(d0(ws.bb(0, x2)) == f(x2));
  CHECK(d0(ws.bb(x1, x2)).is_zero());
  CHECK(d2(ws.bb(x1, 0)) == f(x1));

  // ∂^j ∂^i = ∂^i ∂^{j-1} for i < j.
  for (int j = 1; j <= 3; ++j)
    for (int i = 0; i < j; ++i)
      CHECK(coface(j, coface(i, f, ws.BB), BBB) == coface(i, coface(j - 1, f, ws.BB), BBB));
  Functional g = random_unital(ws.BB, rng, false);
  CHECK_THROWS_AS(coface(1, g, ws.BB), DomainMismatch);
}

TEST_CASE("A1 cocycle values") {
  Workspace ws = Workspace::make(CartanDatum::a1(3));
  for (int lambda : {1, 2, -5}) {
    Functional f = alg_functional_K(ws.K, {CycNum(lambda)});
    Functional s = delta_connecting(ws, f, retraction_u(ws.alg));
    Functional si = conv_inverse(s);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        CycNum want = i + j == 3 ? CycNum(-lambda) : CycNum(i + j == 0 ? 1 : 0);
        CHECK(s(ws.bb(i, j)) == want);
        CycNum want_inv = i + j == 3 ? CycNum(lambda) : CycNum(i + j == 0 ? 1 : 0);
        CHECK(si(ws.bb(i, j)) == want_inv);
      }
  }
  CHECK(delta_connecting(ws, Functional::counit(ws.K), retraction_u(ws.alg)) ==
        Functional::counit(ws.BB));
}

TEST_CASE("quantum plane cocycle values") {
  Workspace ws = Workspace::make(CartanDatum::qplane(3));
  const CycNum q = ws.datum->q();
  const int N = 3;
  CycNum f1(1), f2(2), f21(1);
  Functional s = delta_of(ws, {f1, f2, f21});
  std::vector<CycNum> fs{-f1, -f2};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int m = 0; m < N; ++m)
        for (int n = 0; n < N; ++n) {
          std::vector<int> a{0, 0, 0}, b{0, 0, 0};
          a[i] = m;
          b[j] = n;
          CycNum v = s(ws.bb(bid(ws, a), bid(ws, b)));
          CycNum want;
          if (m == 0 || n == 0) {
            want = m + n == 0 ? CycNum(1) : CycNum(0);
          } else if (i <= j) {
            want = i == j && m + n == N ? fs[i] : CycNum(0);
          } else {
            want = m == n ? qfact(q, n) * (-f21).pow(n) : CycNum(0);
          }
          CHECK_MESSAGE(v == want, "x_" << i + 1 << "^" << m << " ⊗ x_" << j + 1 << "^" << n);
        }

  // Closed form on x_1^k x_2^m ⊗ x_1^n x_2^l, f = f_1 * f_2 * f_21.
  auto qbin = [&](int a, int b) { return q_binomial(a, b, q); };
  for (int k = 0; k < N; ++k)
    for (int m = 0; m < N; ++m)
      for (int n = 0; n < N; ++n)
        for (int l = 0; l < N; ++l) {
          CycNum want;
          if (k == 0 && l == 0 && m == n) want += qfact(q, n) * (-f21).pow(n);
          if (k == 0 && m + l - N >= 0 && n == m + l - N)
            want += qfact(q, n) * qbin(m, n) * fs[1] * (-f21).pow(n);
          if (l == 0 && k + n - N >= 0 && m == k + n - N)
            want += qfact(q, m) * qbin(n, m) * fs[0] * (-f21).pow(m);
          int r = k + n - N;
          if (k + n == m + l && r >= 0)
            want += q.pow((N - l) * (N - k)) * qfact(q, r) * qbin(m, r) * qbin(n, r) * fs[0] *
                    fs[1] * (-f21).pow(r);
          CycNum v = s(ws.bb(bid(ws, {k, m, 0}), bid(ws, {n, l, 0})));
          CHECK_MESSAGE(v == want, "x1^" << k << "x2^" << m << " ⊗ x1^" << n << "x2^" << l);
        }
}

TEST_CASE("connecting map preconditions and factorization") {
  Workspace ws = Workspace::make(CartanDatum::qplane(3));
  Retraction u = retraction_u(ws.alg);
  Functional f = alg_functional_K(ws.K, {CycNum(1), CycNum(2), CycNum(1)});
  CHECK(check_factorization(ws, f, u, 4).pass);
  Functional bad = f;
  bad.at(ws.K->index(Mono().plus(0))) = CycNum(7);
  CHECK_THROWS_AS(delta_connecting(ws, bad, u), InvalidArgument);
  Retraction nc = u;
  nc.coalgebra = false;
  CHECK_THROWS_AS(delta_connecting(ws, f, nc), InvalidArgument);
}

TEST_CASE("cocycle condition, braided and bosonized") {
  std::mt19937 rng(11);
  struct Case {
    CartanDatum d;
    std::vector<CycNum> vals;
  };
  std::vector<Case> cases{{CartanDatum::a1(3), {CycNum(2)}},
                          {CartanDatum::qplane(3), {CycNum(1), CycNum(2), CycNum(1)}},
                          {CartanDatum::qls(3, 3, {{0, 1}}), {CycNum(1), CycNum(2), CycNum(3), CycNum(1)}}};
  for (const auto& c : cases) {
    Workspace ws = Workspace::make(c.d);
    Functional s = delta_of(ws, c.vals);
    CHECK(check_cocycle_braided(ws, s).pass);
    CHECK(check_cocycle_braided(ws, Functional::counit(ws.BB)).pass);
    auto Y = std::make_shared<const YAlgebra>(ws);
    auto triples = sample_triples(*Y, 400, 5);
    CHECK(check_cocycle_ordinary(*Y, bosonize_cocycle(Y, s), triples).pass);

    // One changed value is caught in both forms.
    Functional p = s;
    std::size_t x = ws.B->size() - 1;
    p.at(ws.bb(x, 1)) += CycNum(1);
    Check b = check_cocycle_braided(ws, p);
    CHECK_FALSE(b.pass);
    CHECK_FALSE(b.witness.empty());
    Check o = check_cocycle_ordinary(*Y, bosonize_cocycle(Y, p), sample_triples(*Y, 0, 5));
    CHECK_FALSE(o.pass);
    Functional pn = s;
    pn.at(ws.bb(0, 1)) = CycNum(3);
    CHECK_FALSE(check_cocycle_braided(ws, pn).pass);
  }
}

TEST_CASE("bosonized cocycle values") {
  Workspace ws = Workspace::make(CartanDatum::qplane(3));
  Functional s = delta_of(ws, {CycNum(1), CycNum(2), CycNum(1)});
  auto Y = std::make_shared<const YAlgebra>(ws);
  auto sY = bosonize_cocycle(Y, s);
  const auto& d = *ws.datum;
  for (std::size_t g = 0; g < Y->group_size(); g += 7)
    for (std::size_t x = 0; x < ws.B->size(); ++x)
      for (std::size_t y = 0; y < ws.B->size(); ++y) {
        CHECK(sY({x, g}, {y, 0}) == d.chi_on(ws.B->degree(y), d.group_elem(g)) * s(ws.bb(x, y)));
        CHECK(sY({x, 0}, {y, g}) == s(ws.bb(x, y)));
      }
  CHECK(sY({0, 5}, {0, 9}) == CycNum(1));
}

TEST_CASE("coboundaries and twists") {
  std::mt19937 rng(5);
  for (const auto& d : {CartanDatum::qplane(3), CartanDatum::a1(3)}) {
    Workspace ws = Workspace::make(d);
    Functional s = d.family() == Family::A1 ? delta_of(ws, {CycNum(3)})
                                            : delta_of(ws, {CycNum(1), CycNum(2), CycNum(1)});
    Functional eps = Functional::counit(ws.B);
    CHECK(coboundary(ws, eps) == Functional::counit(ws.BB));
    CHECK(twist(ws, s, eps) == s);
    for (int t = 0; t < 3; ++t) {
      Functional chi = random_unital(ws.B, rng, true);
      Functional dchi = coboundary(ws, chi);
      CHECK(check_cocycle_braided(ws, dchi).pass);
      CHECK(twist(ws, Functional::counit(ws.BB), chi) == dchi);
      Functional s2 = twist(ws, s, chi);
      CHECK(check_cocycle_braided(ws, s2).pass);
      CHECK(s2.is_invariant());
      CHECK(twist(ws, s2, conv_inverse(chi)) == s);
      // ∂^0 f' * ∂^2 f'' = ∂^2 f'' * ∂^0 f'.
      Functional g = random_unital(ws.B, rng, true);
      CHECK(convolve(coface(0, chi, ws.BB), coface(2, g, ws.BB)) ==
            convolve(coface(2, g, ws.BB), coface(0, chi, ws.BB)));
    }
    Functional bad(ws.B);
    CHECK_THROWS_AS(coboundary(ws, bad), InvalidArgument);
  }
}

TEST_CASE("A1 deformed product") {
  Workspace ws = Workspace::make(CartanDatum::a1(3));
  auto Y = std::make_shared<const YAlgebra>(ws);
  REQUIRE(Y->group_size() == 9);
  const auto& d = *ws.datum;
  std::size_t e = Y->unit().second, g3 = d.group_index({3});
  for (int lambda : {1, 2, -3}) {
    Functional s = delta_of(ws, {CycNum(lambda)});
    LiftedAlgebra A = deform_multiplication(ws, Y, s);
    for (std::size_t m = 0; m < 3; ++m)
      for (std::size_t n = 0; n < 3; ++n) {
        YElt want;
        if (m + n < 3) {
          want.add({m + n, e}, CycNum(1));
        } else {
          want.add({m + n - 3, e}, CycNum(-lambda));
          want.add({m + n - 3, g3}, CycNum(lambda));
        }
        CHECK(A.mul({m, e}, {n, e}) == want);
        CHECK(A.mul_direct({m, e}, {n, e}) == want);
      }
    CHECK(all_pass(A.verify(1, 200)));
  }
  LiftedAlgebra plain = deform_multiplication(ws, Y, Functional::counit(ws.BB));
  CHECK(plain.mul({1, 2}, {2, 4}) == Y->mul({1, 2}, {2, 4}));
  Functional p = delta_of(ws, {CycNum(1)});
  p.at(ws.bb(1, 1)) = CycNum(4);
  CHECK_THROWS_AS(deform_multiplication(ws, Y, p), InvalidArgument);
}

TEST_CASE("quantum plane deformed product") {
  Workspace ws = Workspace::make(CartanDatum::qplane(3));
  auto Y = std::make_shared<const YAlgebra>(ws);
  const auto& d = *ws.datum;
  Functional s = delta_of(ws, {CycNum(1), CycNum(2), CycNum(1)});
  LiftedAlgebra A = deform_multiplication(ws, Y, s);
  CHECK(all_pass(A.verify(2, 300)));
  std::size_t e = Y->unit().second;
  std::size_t x1 = bid(ws, {1, 0, 0}), x2 = bid(ws, {0, 1, 0}), x12 = bid(ws, {1, 1, 0});
  // x_2 x_1 = q x_1 x_2 + f s(z_21)(1 - g_1 g_2).
  std::size_t g12 = d.group_index(d.group_of({1, 1}));
  YElt want;
  want.add({x12, e}, d.chi(0, 1));
  want.add({0, e}, CycNum(-1));
  want.add({0, g12}, CycNum(1));
  CHECK(A.mul({x2, e}, {x1, e}) == want);
  CHECK(A.mul({x1, e}, {x2, e}) == YElt({x12, e}));
  auto j = lifted_to_json(A);
  CHECK(j["table"].size() == 81);
  CHECK(j.dump() == lifted_to_json(deform_multiplication(ws, Y, s)).dump());
}

TEST_CASE("deformation isomorphism") {
  std::mt19937 rng(17);
  for (const auto& d : {CartanDatum::a1(3), CartanDatum::qplane(3)}) {
    Workspace ws = Workspace::make(d);
    auto Y = std::make_shared<const YAlgebra>(ws);
    Functional s = d.family() == Family::A1 ? delta_of(ws, {CycNum(2)})
                                            : delta_of(ws, {CycNum(1), CycNum(2), CycNum(1)});
    CHECK(deformation_iso_check(ws, Y, s, Functional::counit(ws.B), 20, 1).pass);
    for (int t = 0; t < 2; ++t) {
      Functional chi = random_unital(ws.B, rng, false);
      CHECK(deformation_iso_check(ws, Y, s, chi, 30, 1 + t).pass);
    }
  }
}

TEST_CASE("Hochschild connecting map") {
  Workspace a1 = Workspace::make(CartanDatum::a1(3));
  Retraction ua = retraction_u(a1.alg);
  auto z = delta_hoch(a1, derivation_K(*a1.alg, {CycNum(5)}), ua);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(z(a1.bb(i, j)) == CycNum(i + j == 3 ? -5 : 0));
  CHECK(delta_hoch(a1, derivation_K(*a1.alg, {CycNum()}), ua) == Functional(a1.BB));

  // Linked pair: supported on x_2 ⊗ x_1 only, with value -d(z_21).
  Workspace ws = Workspace::make(CartanDatum::qplane(3));
  Retraction u = retraction_u(ws.alg);
  DerivationK d21 = derivation_K(*ws.alg, {CycNum(), CycNum(), CycNum(4)});
  Functional zeta = delta_hoch(ws, d21, u);
  std::size_t x1 = bid(ws, {1, 0, 0}), x2 = bid(ws, {0, 1, 0});
  for (std::size_t id = 0; id < ws.BB->size(); ++id)
    CHECK(zeta(id) == (id == ws.bb(x2, x1) ? CycNum(-4) : CycNum()));
  // The same form via d∘s: d s u m = -d u m.
  Functional dsum(ws.BB);
  Functional dK = derivation_functional(ws.K, d21);
  Functional ds = compose_antipode(dK);
  for (std::size_t x = 0; x < ws.B->size(); ++x)
    for (std::size_t y = 0; y < ws.B->size(); ++y)
      dsum.at(ws.bb(x, y)) = eval_K(ds, u.apply(ws.alg->mul_mono(ws.B->mono(x), ws.B->mono(y), Tag::Rbar)));
  CHECK(dsum == zeta);
}

TEST_CASE("Kunneth split") {
  Workspace ws = Workspace::make(CartanDatum::qplane(3));
  Retraction u = retraction_u(ws.alg);
  Functional zero(ws.BB);
  auto z1 = delta_hoch(ws, derivation_K(*ws.alg, {CycNum(1), CycNum(), CycNum()}), u);
  auto p1 = kunneth_split(ws, z1);
  CHECK(p1.z1 == z1);
  CHECK(p1.z2 == zero);
  CHECK(p1.z21 == zero);
  auto z21 = delta_hoch(ws, derivation_K(*ws.alg, {CycNum(), CycNum(), CycNum(1)}), u);
  auto p21 = kunneth_split(ws, z21);
  CHECK(p21.z1 == zero);
  CHECK(p21.z2 == zero);
  CHECK(p21.z21 == z21);
  auto all = delta_hoch(ws, derivation_K(*ws.alg, {CycNum(1), CycNum(2), CycNum(3)}), u);
  auto pa = kunneth_split(ws, all);
  CHECK(pa.z1 + pa.z2 + pa.z21 == all);
  CHECK(exp_q_total(ws, zero) == Functional::counit(ws.BB));
  Workspace a1 = Workspace::make(CartanDatum::a1(3));
  CHECK_THROWS_AS(kunneth_split(a1, Functional(a1.BB)), InvalidArgument);
}

TEST_CASE("the linking factors need not commute") {
  for (int N : {3, 5}) {
    Workspace ws = Workspace::make(CartanDatum::qplane(N));
    const CycNum q = ws.datum->q();
    for (auto [a, b] : {std::pair<int, int>{1, 1}, {2, 3}}) {
      Functional s2 = delta_of(ws, {CycNum(), CycNum(a), CycNum()});
      Functional s21 = delta_of(ws, {CycNum(), CycNum(), CycNum(b)});
      std::size_t id = ws.bb(bid(ws, {0, 2, 0}), bid(ws, {1, N - 1, 0}));
      CycNum ab(a * b);
      // Braided coproduct of B⊗B: the x_2^{N-1} ⊗ x_1 leg of x_1 x_2^{N-1} and
      // the crossing of x_2 past x_2^{N-1} each contribute q^{-(N-1)}.
      CHECK(convolve(s21, s2)(id) == (CycNum(1) + q) * ab);
      CHECK(convolve(s2, s21)(id) == (CycNum(1) + q.inv()) * q.pow(-2 * (N - 1)) * ab);
      CHECK_FALSE(convolve(s2, s21)(id) == q.inv() * (CycNum(1) + q) * ab);
      Functional s1 = delta_of(ws, {CycNum(a), CycNum(), CycNum()});
      CHECK(convolve(s1, s2) == convolve(s2, s1));
      CHECK_FALSE(convolve(s1, s21) == convolve(s21, s1));
      // δf = δf_21 * δf_2 * δf_1 = δf_21 * δf_1 * δf_2.
      Functional s = delta_of(ws, {CycNum(a), CycNum(a), CycNum(b)});
      CHECK(convolve(convolve(s21, s2), s1) == s);
      CHECK(convolve(convolve(s21, s1), s2) == s);
      CHECK_FALSE(convolve(convolve(s1, s2), s21) == s);
    }
  }
}

TEST_CASE("q-exponentials of the Kunneth parts") {
  Workspace ws = Workspace::make(CartanDatum::qplane(3));
  const CycNum q = ws.datum->q();
  Retraction u = retraction_u(ws.alg);
  auto d = derivation_K(*ws.alg, {CycNum(1), CycNum(2), CycNum()});
  auto z = delta_hoch(ws, d, u);
  auto zp = kunneth_split(ws, z);
  Functional prod = exp_q_total(ws, z);
  CHECK(prod == delta_connecting(ws, conv_exp(derivation_functional(ws.K, d)), u));
  // A single q-exponential of ζ_1 + ζ_2 is not even a cocycle.
  Functional single = conv_q_exp(zp.z1 + zp.z2, q, 3);
  CHECK_FALSE(check_cocycle_braided(ws, single).pass);
  CHECK_FALSE(single == prod);
}

TEST_CASE("twist search") {
  Workspace ws = Workspace::make(CartanDatum::qplane(3));
  Functional s = delta_of(ws, {CycNum(1), CycNum(2), CycNum(1)});
  Functional chi = Functional::counit(ws.B);
  chi.at(bid(ws, {1, 1, 0})) = CycNum(2);
  chi.at(bid(ws, {2, 2, 0})) = CycNum(-1);
  auto t = find_twist(ws, s, twist(ws, s, chi));
  REQUIRE(t.chi);
  CHECK(*t.chi == chi);
  CHECK(find_twist(ws, s, s).chi == std::optional<Functional>(Functional::counit(ws.B)));
  Functional other = delta_of(ws, {CycNum(1), CycNum(1), CycNum(1)});
  CHECK_FALSE(find_twist(ws, s, other).chi);
}

TEST_CASE("q-exponential of the Hochschild class") {
  Workspace ws = Workspace::make(CartanDatum::qplane(3));
  std::vector<std::vector<CycNum>> single{{CycNum(), CycNum(), CycNum()},
                                          {CycNum(1), CycNum(), CycNum()},
                                          {CycNum(), CycNum(1), CycNum()},
                                          {CycNum(), CycNum(), CycNum(1)},
                                          {CycNum(1), CycNum(2), CycNum()}};
  for (const auto& v : single) {
    auto r = theorem33_check(ws, derivation_K(*ws.alg, v));
    CHECK_MESSAGE(r.equal.pass, r.equal.witness);
    CHECK(r.level == "cocycle");
    CHECK(r.reversed.pass);
  }
  // With a linking part the stated order is not a cocycle; the opposite
  // order reproduces δ(e^d) exactly.
  for (const auto& v : {std::vector<CycNum>{CycNum(1), CycNum(1), CycNum(1)},
                        std::vector<CycNum>{CycNum(2), CycNum(-1), CycNum(3)}}) {
    auto r = theorem33_check(ws, derivation_K(*ws.alg, v));
    CHECK_FALSE(r.equal.pass);
    CHECK(r.level == "differ");
    CHECK_FALSE(check_cocycle_braided(ws, r.exp_q).pass);
    CHECK_MESSAGE(r.reversed.pass, r.reversed.witness);
  }
  auto r1 = theorem33_check(ws, derivation_K(*ws.alg, {CycNum(1), CycNum(), CycNum()}));
  for (int k = 0; k < 3; ++k)
    for (int m = 0; m < 3; ++m)
      for (int n = 0; n < 3; ++n)
        for (int l = 0; l < 3; ++l) {
          CycNum v = r1.delta_exp(ws.bb(bid(ws, {k, m, 0}), bid(ws, {n, l, 0})));
          CycNum want;
          if (m == 0 && l == 0) want = k + n == 3 ? CycNum(-1) : CycNum(k + n == 0 ? 1 : 0);
          CHECK(v == want);
        }
}

TEST_CASE("tensor factorization over a vertex split") {
  CartanDatum d = CartanDatum::qls(3, 3, {{0, 1}});
  std::vector<CycNum> fS{CycNum(1), CycNum(2), CycNum(1)}, fT{CycNum(3)};
  Check c = prop36_check(d, {0, 1}, {2}, fS, fT);
  CHECK_MESSAGE(c.pass, c.witness);
  CHECK(prop36_check(d, {0, 1}, {2}, {CycNum(), CycNum(), CycNum()}, fT).pass);
  CHECK_THROWS_AS(prop36_check(d, {0}, {1, 2}, {CycNum(1)}, {CycNum(1), CycNum(1), CycNum(1)}),
                  InvalidArgument);
  CHECK_THROWS_AS(prop36_check(d, {0, 1}, {1, 2}, fS, fT), InvalidArgument);

  // σ(x_i^m ⊗ x_j^n) on the displayed shapes.
  Workspace ws = Workspace::make(d);
  Functional s = delta_of(ws, {CycNum(1), CycNum(2), CycNum(3), CycNum(1)});
  std::vector<CycNum> fz{CycNum(1), CycNum(2), CycNum(3)};
  const int N = 3;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int m = 1; m < N; ++m)
        for (int n = 1; n < N; ++n) {
          std::vector<int> a(4, 0), b(4, 0);
          a[i] = m;
          b[j] = n;
          CycNum want;
          if (i == j && m + n == N) want = -fz[i];
          if (i == 1 && j == 0 && m == n) want = qfact(d.chi(0, 1), n) * CycNum(-1).pow(n);
          CHECK(s(ws.bb(bid(ws, a), bid(ws, b))) == want);
        }
}

TEST_CASE("algebra maps on R are trivial") {
  for (const char* p : {"a1", "qplane", "a2", "qls"}) CHECK(alg_maps_trivial(CartanDatum::preset(p, 3)).pass);
  DatumSpec s = CartanDatum::a1(3).spec();
  s.character_values = {{CycNum(1)}};
  Check c = alg_maps_trivial(CartanDatum(s));
  CHECK_FALSE(c.pass);
  CHECK(c.witness.find("x_1") != std::string::npos);
}

TEST_CASE("distinct parameters give distinct cocycles") {
  Workspace ws = Workspace::make(CartanDatum::qplane(3));
  std::set<std::string> seen;
  int count = 0;
  for (int a : {0, 1})
    for (int b : {0, 1, 2})
      for (int c : {0, 1}) {
        if (count == 10) break;
        ++count;
        seen.insert(cocycle_to_json(ws, delta_of(ws, {CycNum(a), CycNum(b), CycNum(c)})).dump());
      }
  CHECK(seen.size() == 10);
}

TEST_CASE("retraction independence") {
  Workspace ws = Workspace::make(CartanDatum::qplane(3));
  Retraction u = retraction_u(ws.alg);
  Functional f = alg_functional_K(ws.K, {CycNum(1), CycNum(2), CycNum(1)});
  CHECK(retraction_independence_check(ws, f, u, u).pass);
  auto built = build_coalgebra_retraction(ws.alg);
  REQUIRE(built.retraction);
  CHECK(retraction_independence_check(ws, f, u, *built.retraction).pass);
}

TEST_CASE("A2 lifting") {
  Workspace ws = Workspace::make(CartanDatum::a2(3));
  Retraction u2 = retraction_u2(ws.alg);
  u2.coalgebra = true;
  Functional f = alg_functional_K(ws.K, {CycNum(1), CycNum(1), CycNum(1)});
  Functional s = delta_connecting(ws, f, u2);
  CHECK(check_cocycle_braided(ws, s).pass);
  auto built = build_coalgebra_retraction(ws.alg);
  REQUIRE(built.retraction);
  Check c = retraction_independence_check(ws, f, *built.retraction, u2);
  CHECK_MESSAGE(c.pass, c.witness);
}
