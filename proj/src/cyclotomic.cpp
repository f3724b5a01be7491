#include "hopflift/cyclotomic.hpp"

#include <array>
#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include <nlohmann/json.hpp>

#include "hopflift/errors.hpp"

namespace hopflift {
namespace {

using IntPoly = std::vector<long long>;

// Reduction data for one order m: powers zeta^k (0 <= k < m) written in the
// basis 1, zeta, ..., zeta^{phi-1}.
struct FieldTable {
  int m = 1;
  int phi = 1;
  std::vector<std::vector<long long>> pow;
};

IntPoly poly_div_exact(IntPoly num, const IntPoly& den) {
  // den is monic; returns num / den, asserting zero remainder.
  int dn = static_cast<int>(den.size()) - 1;
  int nn = static_cast<int>(num.size()) - 1;
  IntPoly quot(std::max(nn - dn + 1, 1), 0);
  for (int i = nn; i >= dn; --i) {
    long long c = num[i];
    if (c == 0) continue;
    quot[i - dn] = c;
    for (int k = 0; k <= dn; ++k) num[i - dn + k] -= c * den[k];
  }
  return quot;
}

const IntPoly& cyclotomic_poly(int m) {
  static std::map<int, IntPoly> cache;
  static std::mutex mu;
  {
    std::lock_guard lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  IntPoly p(m + 1, 0);
  p[0] = -1;
  p[m] = 1;
  for (int d = 1; d < m; ++d)
    if (m % d == 0) p = poly_div_exact(p, cyclotomic_poly(d));
  std::lock_guard lock(mu);
  return cache.emplace(m, std::move(p)).first->second;
}

std::unique_ptr<FieldTable> make_table(int m) {
  auto t = std::make_unique<FieldTable>();
  const IntPoly& cp = cyclotomic_poly(m);
  t->m = m;
  t->phi = static_cast<int>(cp.size()) - 1;
  int phi = t->phi;
  t->pow.assign(m, std::vector<long long>(phi, 0));
  t->pow[0][0] = 1;
  for (int k = 1; k < m; ++k) {
    const auto& prev = t->pow[k - 1];
    auto& cur = t->pow[k];
    long long top = prev[phi - 1];
    for (int i = phi - 1; i >= 1; --i) cur[i] = prev[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (int i = 0; i < phi; ++i) cur[i] -= top * cp[i];
  }
  return t;
}

const FieldTable& table(int m) {
  if (m < 1 || m > kMaxCyclotomicOrder)
    throw InvalidArgument("cyclotomic order out of range: " + std::to_string(m));
  static std::array<std::atomic<const FieldTable*>, kMaxCyclotomicOrder + 1> slots{};
  static std::mutex mu;
  const FieldTable* t = slots[m].load(std::memory_order_acquire);
  if (t) return *t;
  auto made = make_table(m);
  std::lock_guard lock(mu);
  t = slots[m].load(std::memory_order_acquire);
  if (t) return *t;
  t = made.release();
  slots[m].store(t, std::memory_order_release);
  return *t;
}

Rational times_int(const Rational& r, long long k) {
  if (k == 1) return r;
  if (k == -1) return -r;
  return r * Rational(k);
}

}  // namespace

int euler_phi(int m) {
  int result = m;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

CycNum::CycNum(int order, Coeffs coeffs) : order_(order), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != table(order).phi)
    throw InvalidArgument("coefficient count must equal phi(order) for order " +
                          std::to_string(order));
}

CycNum CycNum::root_of_unity(int order, long long k) {
  const FieldTable& t = table(order);
  long long r = ((k % order) + order) % order;
  Coeffs c(t.phi);
  for (int i = 0; i < t.phi; ++i)
    if (t.pow[r][i] != 0) c[i] = Rational(t.pow[r][i]);
  return CycNum(order, std::move(c));
}

bool CycNum::is_zero() const {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

bool CycNum::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (!coeffs_[i].is_zero()) return false;
  return true;
}

bool CycNum::is_one() const { return is_rational() && coeffs_[0].is_one(); }

CycNum CycNum::embed(int target) const {
  if (target == order_) return *this;
  if (target % order_ != 0)
    throw InvalidArgument("cannot embed order " + std::to_string(order_) + " into " +
                          std::to_string(target));
  const FieldTable& t = table(target);
  Coeffs out(t.phi);
  int step = target / order_;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    const auto& p = t.pow[(static_cast<long long>(i) * step) % target];
    for (int k = 0; k < t.phi; ++k)
      if (p[k] != 0) out[k] += times_int(coeffs_[i], p[k]);
  }
  CycNum r;
  r.order_ = target;
  r.coeffs_ = std::move(out);
  return r;
}

CycNum& CycNum::operator+=(const CycNum& b) {
  if (b.order_ == order_) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (!b.coeffs_[i].is_zero()) coeffs_[i] += b.coeffs_[i];
    return *this;
  }
  int l = std::lcm(order_, b.order_);
  if (l != order_) *this = embed(l);
  CycNum bb = b.embed(l);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (!bb.coeffs_[i].is_zero()) coeffs_[i] += bb.coeffs_[i];
  return *this;
}

CycNum& CycNum::operator-=(const CycNum& b) { return *this += -b; }

CycNum operator+(const CycNum& a, const CycNum& b) {
  CycNum r = a;
  r += b;
  return r;
}

CycNum operator-(const CycNum& a, const CycNum& b) {
  CycNum r = a;
  r += -b;
  return r;
}

CycNum CycNum::operator-() const {
  CycNum r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CycNum operator*(const CycNum& a, const Rational& r) {
  CycNum out = a;
  for (auto& c : out.coeffs_) c *= r;
  return out;
}

CycNum operator*(const CycNum& a, const CycNum& b) {
  if (a.order_ != b.order_) {
    int l = std::lcm(a.order_, b.order_);
    if (a.order_ == 1 && a.is_rational()) return b.embed(l) * a.coeffs_[0];
    if (b.order_ == 1 && b.is_rational()) return a.embed(l) * b.coeffs_[0];
    return a.embed(l) * b.embed(l);
  }
  if (a.order_ <= 2) return CycNum(a.order_, {a.coeffs_[0] * b.coeffs_[0]});
  const FieldTable& t = table(a.order_);
  int phi = t.phi;
  boost::container::small_vector<Rational, 12> raw(2 * phi - 1);
  for (int i = 0; i < phi; ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (int j = 0; j < phi; ++j) {
      if (b.coeffs_[j].is_zero()) continue;
      raw[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  CycNum::Coeffs out(raw.begin(), raw.begin() + phi);
  for (int k = phi; k < 2 * phi - 1; ++k) {
    if (raw[k].is_zero()) continue;
    const auto& p = t.pow[k % t.m];
    for (int i = 0; i < phi; ++i)
      if (p[i] != 0) out[i] += times_int(raw[k], p[i]);
  }
  CycNum r;
  r.order_ = a.order_;
  r.coeffs_ = std::move(out);
  return r;
}

CycNum CycNum::inv() const {
  if (is_zero()) throw DivisionByZero();
  if (is_rational()) {
    CycNum r;
    r.order_ = order_;
    r.coeffs_.assign(coeffs_.size(), Rational());
    r.coeffs_[0] = coeffs_[0].inv();
    return r;
  }
  // Solve (a * x) = 1 with x unknown: column j holds a * zeta^j.
  int phi = static_cast<int>(coeffs_.size());
  std::vector<std::vector<Rational>> m(phi, std::vector<Rational>(phi + 1));
  for (int j = 0; j < phi; ++j) {
    CycNum col = *this * root_of_unity(order_, j);
    for (int i = 0; i < phi; ++i) m[i][j] = col.coeffs_[i];
  }
  m[0][phi] = Rational(1);
  for (int c = 0; c < phi; ++c) {
    int piv = c;
    while (piv < phi && m[piv][c].is_zero()) ++piv;
    if (piv == phi) throw DivisionByZero();
    std::swap(m[piv], m[c]);
    Rational s = m[c][c].inv();
    for (int k = c; k <= phi; ++k) m[c][k] *= s;
    for (int r = 0; r < phi; ++r) {
      if (r == c || m[r][c].is_zero()) continue;
      Rational f = m[r][c];
      for (int k = c; k <= phi; ++k)
        if (!m[c][k].is_zero()) m[r][k] -= f * m[c][k];
    }
  }
  CycNum r;
  r.order_ = order_;
  r.coeffs_.resize(phi);
  for (int i = 0; i < phi; ++i) r.coeffs_[i] = m[i][phi];
  return r;
}

CycNum operator/(const CycNum& a, const CycNum& b) { return a * b.inv(); }

CycNum CycNum::pow(long long e) const {
  if (e < 0) return inv().pow(-e);
  CycNum result(Rational(1));
  result = result.embed(order_);
  CycNum base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

bool operator==(const CycNum& a, const CycNum& b) {
  if (a.order_ == b.order_) {
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      if (!(a.coeffs_[i] == b.coeffs_[i])) return false;
    return true;
  }
  int l = std::lcm(a.order_, b.order_);
  return a.embed(l) == b.embed(l);
}

std::string CycNum::str() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c.is_zero()) continue;
    std::string cs = c.str();
    bool neg = c.sign() < 0;
    if (neg) cs = cs.substr(1);
    if (out.empty())
      out = neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (i == 0) {
      out += cs;
      continue;
    }
    if (cs != "1") out += cs + "*";
    out += "z" + std::to_string(order_);
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

void to_json(nlohmann::json& j, const CycNum& x) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : x.coeffs()) coeffs.push_back(c.str());
  j = nlohmann::json{{"order", x.order()}, {"coeffs", coeffs}};
}

namespace {

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw InvalidArgument("expected integer or rational string, got " + j.dump());
}

}  // namespace

void from_json(const nlohmann::json& j, CycNum& x) {
  if (j.is_number_integer() || j.is_string()) {
    x = CycNum(rational_from_json(j));
    return;
  }
  if (!j.is_object() || !j.contains("order") || !j.contains("coeffs"))
    throw InvalidArgument("expected {\"order\", \"coeffs\"} record, got " + j.dump());
  int order = j.at("order").get<int>();
  const auto& cs = j.at("coeffs");
  if (!cs.is_array()) throw InvalidArgument("\"coeffs\" must be an array");
  CycNum::Coeffs c;
  for (const auto& e : cs) c.push_back(rational_from_json(e));
  x = CycNum(order, std::move(c));
}

CycNum q_int(int n, const CycNum& q) {
  CycNum sum, p(1);
  for (int k = 0; k < n; ++k) {
    sum += p;
    p *= q;
  }
  return sum;
}

CycNum q_factorial(int n, const CycNum& q) {
  CycNum r(1);
  for (int k = 1; k <= n; ++k) r *= q_int(k, q);
  return r;
}

CycNum q_binomial(int n, int r, const CycNum& q) {
  if (r < 0 || r > n) return CycNum();
  QBinomialTable t(q, n);
  return t(n, r);
}

QBinomialTable::QBinomialTable(const CycNum& q, int max_n) {
  std::vector<CycNum> qpow(max_n + 2);
  qpow[0] = CycNum(1);
  for (int k = 1; k <= max_n + 1; ++k) qpow[k] = qpow[k - 1] * q;
  rows_.resize(max_n + 1);
  rows_[0] = {CycNum(1)};
  for (int n = 0; n < max_n; ++n) {
    auto& next = rows_[n + 1];
    next.resize(n + 2);
    for (int r = 0; r <= n + 1; ++r) {
      CycNum v = r <= n ? rows_[n][r] : CycNum();
      if (r >= 1) v += qpow[n + 1 - r] * rows_[n][r - 1];
      next[r] = v;
    }
  }
}

const CycNum& QBinomialTable::operator()(int n, int r) const {
  if (n < 0 || n >= static_cast<int>(rows_.size()))
    throw InvalidArgument("q-binomial row out of table range");
  if (r < 0 || r > n) return zero_;
  return rows_[n][r];
}

}  // namespace hopflift
