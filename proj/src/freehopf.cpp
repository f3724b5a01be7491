#include "hopflift/freehopf.hpp"

#include <mutex>

#include <nlohmann/json.hpp>

#include "hopflift/errors.hpp"
#include "hopflift/linalg.hpp"

namespace hopflift {

FreeElt free_letter(int i) { return FreeElt(Word{i}); }

FreeElt free_word(const Word& w, const CycNum& c) { return FreeElt(w, c); }

MultiDeg word_degree(const Word& w, int theta) {
  MultiDeg a(theta, 0);
  for (int l : w) {
    if (l < 0 || l >= theta) throw InvalidArgument("letter index out of range");
    ++a[l];
  }
  return a;
}

int free_height(const FreeElt& a) {
  int h = -1;
  for (const auto& [w, c] : a) h = std::max(h, static_cast<int>(w.size()));
  return h;
}

std::optional<MultiDeg> homogeneous_degree(const FreeElt& a, int theta) {
  std::optional<MultiDeg> deg;
  for (const auto& [w, c] : a) {
    MultiDeg dw = word_degree(w, theta);
    if (deg && *deg != dw) return std::nullopt;
    deg = dw;
  }
  if (!deg) deg = MultiDeg(theta, 0);
  return deg;
}

std::map<MultiDeg, FreeElt> homogeneous_components(const FreeElt& a, int theta) {
  std::map<MultiDeg, FreeElt> out;
  for (const auto& [w, c] : a) out[word_degree(w, theta)].add(w, c);
  return out;
}

const std::vector<Word>& words_of_degree(const MultiDeg& deg) {
  static std::map<MultiDeg, std::vector<Word>> cache;
  static std::mutex mu;
  std::lock_guard lock(mu);
  auto it = cache.find(deg);
  if (it != cache.end()) return it->second;
  std::vector<Word> out;
  MultiDeg left = deg;
  Word cur;
  int total = height(deg);
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == total) {
      out.push_back(cur);
      return;
    }
    for (std::size_t l = 0; l < left.size(); ++l) {
      if (left[l] == 0) continue;
      --left[l];
      cur.push_back(static_cast<int>(l));
      self(self);
      cur.pop_back();
      ++left[l];
    }
  };
  rec(rec);
  return cache.emplace(deg, std::move(out)).first->second;
}

FreeElt free_mul(const FreeElt& a, const FreeElt& b) {
  FreeElt r;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      r.add(w, ca * cb);
    }
  return r;
}

CycNum free_counit(const FreeElt& a) { return a.coeff(Word{}); }

TensorElt braided_tensor_mul(const TensorElt& s, const TensorElt& t, const CartanDatum& d) {
  TensorElt r;
  const int theta = d.theta();
  for (const auto& [ab, c1] : s) {
    MultiDeg deg_b = word_degree(ab.second, theta);
    for (const auto& [cd, c2] : t) {
      CycNum scalar = d.chi_eval(word_degree(cd.first, theta), deg_b) * c1 * c2;
      Word left = ab.first, right = ab.second;
      left.insert(left.end(), cd.first.begin(), cd.first.end());
      right.insert(right.end(), cd.second.begin(), cd.second.end());
      r.add({std::move(left), std::move(right)}, scalar);
    }
  }
  return r;
}

TensorElt free_coproduct(const FreeElt& a, const CartanDatum& d) {
  TensorElt r;
  for (const auto& [w, c] : a) {
    TensorElt t({Word{}, Word{}}, c);
    for (int l : w) {
      TensorElt prim;
      prim.add({Word{l}, Word{}}, CycNum(1));
      prim.add({Word{}, Word{l}}, CycNum(1));
      t = braided_tensor_mul(t, prim, d);
    }
    r += t;
  }
  return r;
}

Tensor3 coproduct_left(const TensorElt& t, const CartanDatum& d) {
  Tensor3 r;
  for (const auto& [ab, c] : t) {
    TensorElt da = free_coproduct(FreeElt(ab.first), d);
    for (const auto& [xy, c2] : da) r.add({xy.first, xy.second, ab.second}, c * c2);
  }
  return r;
}

Tensor3 coproduct_right(const TensorElt& t, const CartanDatum& d) {
  Tensor3 r;
  for (const auto& [ab, c] : t) {
    TensorElt db = free_coproduct(FreeElt(ab.second), d);
    for (const auto& [xy, c2] : db) r.add({ab.first, xy.first, xy.second}, c * c2);
  }
  return r;
}

FreeElt braided_commutator(const FreeElt& a, const FreeElt& b, const CartanDatum& d) {
  auto da = homogeneous_degree(a, d.theta());
  auto db = homogeneous_degree(b, d.theta());
  if (!da || !db) throw InvalidArgument("braided commutator needs homogeneous arguments");
  return free_mul(a, b) - free_mul(b, a) * d.chi_eval(*db, *da);
}

IdealComponent::IdealComponent(const MultiDeg& D, const std::vector<FreeElt>& gens, int theta)
    : basis_(&words_of_degree(D)), rr_(words_of_degree(D).size()) {
  for (std::size_t i = 0; i < basis_->size(); ++i) col_[(*basis_)[i]] = i;
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    if (gens[gi].is_zero()) continue;
    auto dg = homogeneous_degree(gens[gi], theta);
    if (!dg) throw InvalidArgument("ideal generators must be homogeneous");
    if (!dominated(*dg, D)) continue;
    MultiDeg rest = D - *dg;
    // Every split rest = d1 + d2 with d1 on the left of the generator.
    MultiDeg d1(theta, 0);
    auto rec = [&](auto&& self, int pos) -> void {
      if (pos == theta) {
        for (const Word& wl : words_of_degree(d1))
          for (const Word& wr : words_of_degree(rest - d1)) {
            FreeElt v = free_mul(free_mul(FreeElt(wl), gens[gi]), FreeElt(wr));
            spans_.push_back({wl, gi, wr});
            rr_.insert(to_vec(v), spans_.size() - 1);
          }
        return;
      }
      for (int k = 0; k <= rest[pos]; ++k) {
        d1[pos] = k;
        self(self, pos + 1);
      }
      d1[pos] = 0;
    };
    rec(rec, 0);
  }
}

Vec IdealComponent::to_vec(const FreeElt& x) const {
  Vec v(basis_->size());
  for (const auto& [w, c] : x) {
    auto it = col_.find(w);
    if (it == col_.end()) throw InvalidArgument("element is not in this homogeneous component");
    v[it->second] = c;
  }
  return v;
}

FreeElt IdealComponent::from_vec(const Vec& v) const {
  FreeElt r;
  for (std::size_t i = 0; i < v.size(); ++i) r.add((*basis_)[i], v[i]);
  return r;
}

MembershipResult ideal_membership(const FreeElt& e, const std::vector<FreeElt>& gens, int cutoff,
                                  int theta) {
  int h = free_height(e);
  if (h > cutoff) throw CutoffExceeded(h, cutoff);
  MembershipResult out;
  out.member = true;
  for (const auto& [D, comp] : homogeneous_components(e, theta)) {
    IdealComponent ic(D, gens, theta);
    auto red = ic.reduce(comp);
    out.residual += ic.from_vec(red.residual);
    if (!red.in_span()) out.member = false;
    for (const auto& [label, c] : red.combination) {
      const auto& s = ic.spans()[label];
      out.certificate.push_back({s.left, s.gen, s.right, c});
    }
  }
  return out;
}

Lemma31Result lemma31_oracle(int m, int n, const CartanDatum& d, std::pair<int, int> pair) {
  if (m < 0 || n < 0) throw InvalidArgument("lemma31: m, n must be nonnegative");
  auto [i, j] = pair;
  if (i < 0 || j >= d.theta() || i >= j) throw InvalidArgument("lemma31: need a pair i < j");
  FreeElt xi = free_letter(i), xj = free_letter(j);
  FreeElt z = braided_commutator(xj, xi, d);
  MultiDeg ai(d.theta(), 0), aj(d.theta(), 0);
  ai[i] = 1;
  aj[j] = 1;
  CycNum q = d.chi_eval(ai, aj);
  auto power = [](const FreeElt& x, int k) {
    FreeElt r(Word{});
    for (int t = 0; t < k; ++t) r = free_mul(r, x);
    return r;
  };
  FreeElt lhs = free_mul(power(xj, m), power(xi, n));
  FreeElt rhs;
  QBinomialTable binom(q, std::max(m, n));
  for (int r = 0; r <= std::min(m, n); ++r) {
    CycNum c = q.pow(static_cast<long long>(m - r) * (n - r)) * q_factorial(r, q) * binom(m, r) *
               binom(n, r);
    rhs.add(free_mul(free_mul(power(xi, n - r), power(xj, m - r)), power(z, r)), c);
  }
  Lemma31Result out;
  out.remainder = lhs - rhs;
  std::vector<FreeElt> gens{braided_commutator(xi, z, d), braided_commutator(xj, z, d)};
  out.membership = ideal_membership(out.remainder, gens, m + n, d.theta());
  out.member = out.membership.member;
  return out;
}

void to_json(nlohmann::json& j, const FreeElt& a) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [w, c] : a) {
    Word one_based = w;
    for (auto& l : one_based) ++l;
    terms.push_back({{"word", one_based}, {"coeff", c}});
  }
  j = nlohmann::json{{"terms", terms}};
}

void from_json(const nlohmann::json& j, FreeElt& a) {
  a = FreeElt();
  for (const auto& t : j.at("terms")) {
    Word w = t.at("word").get<Word>();
    for (auto& l : w) {
      if (l < 1) throw InvalidArgument("word letters are 1-based");
      --l;
    }
    a.add(w, t.at("coeff").get<CycNum>());
  }
}

}  // namespace hopflift
