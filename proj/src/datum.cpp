#include "hopflift/datum.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include <nlohmann/json.hpp>

#include "hopflift/errors.hpp"

namespace hopflift {
namespace {

int mod(long long a, int m) { return static_cast<int>(((a % m) + m) % m); }

// Finds (o, e) with x = zeta_o^e, gcd(e, o) = 1, or o = 0 if x is not a root of unity.
std::pair<int, int> as_root_of_unity(const CycNum& x) {
  int m = x.order();
  int mm = m % 2 ? 2 * m : m;
  for (int k = 0; k < mm; ++k) {
    if (CycNum::root_of_unity(mm, k) == x) {
      int g = std::gcd(k, mm);
      return {mm / g, k / g};
    }
  }
  return {0, 0};
}

std::string vertex_name(int i) { return std::to_string(i + 1); }

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::A1: return "A1";
    case Family::QLS: return "QLS";
    case Family::QPLANE: return "QPLANE";
    case Family::A2: return "A2";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  std::string up = name;
  for (auto& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (up == "A1") return Family::A1;
  if (up == "QLS") return Family::QLS;
  if (up == "QPLANE") return Family::QPLANE;
  if (up == "A2") return Family::A2;
  throw InvalidArgument("unsupported family '" + name + "'");
}

int height(const MultiDeg& a) { return std::accumulate(a.begin(), a.end(), 0); }

MultiDeg operator+(const MultiDeg& a, const MultiDeg& b) {
  MultiDeg r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

MultiDeg operator-(const MultiDeg& a, const MultiDeg& b) {
  MultiDeg r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

bool dominated(const MultiDeg& a, const MultiDeg& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

void to_json(nlohmann::json& j, const DatumSpec& s) {
  nlohmann::json link = nlohmann::json::array();
  for (auto [i, k] : s.linking) link.push_back({i + 1, k + 1});
  j = nlohmann::json{{"family", family_name(s.family)},
                     {"theta", s.theta},
                     {"N", s.N},
                     {"group_orders", s.group_orders},
                     {"generator_images", s.generator_images},
                     {"character_values", s.character_values},
                     {"linking", link}};
}

void from_json(const nlohmann::json& j, DatumSpec& s) {
  auto need = [&](const char* key) -> const nlohmann::json& {
    if (!j.contains(key)) throw InvalidArgument(std::string("datum: missing field '") + key + "'");
    return j.at(key);
  };
  s.family = parse_family(need("family").get<std::string>());
  s.theta = need("theta").get<int>();
  s.N = need("N").get<int>();
  s.group_orders = need("group_orders").get<std::vector<int>>();
  s.generator_images = need("generator_images").get<std::vector<std::vector<int>>>();
  s.character_values = need("character_values").get<std::vector<std::vector<CycNum>>>();
  s.linking.clear();
  if (j.contains("linking"))
    for (const auto& p : j.at("linking")) {
      auto v = p.get<std::vector<int>>();
      if (v.size() != 2) throw InvalidArgument("datum: linking entries are pairs");
      s.linking.emplace_back(v[0] - 1, v[1] - 1);
    }
}

CartanDatum::CartanDatum(DatumSpec spec) : spec_(std::move(spec)) {
  const int theta = spec_.theta;
  const std::size_t nf = spec_.group_orders.size();
  if (theta < 1) throw InvalidArgument("datum: theta must be positive");
  if (spec_.N <= 2) throw InvalidArgument("datum: N must exceed 2");
  if (nf == 0) throw InvalidArgument("datum: group needs at least one cyclic factor");
  for (int o : spec_.group_orders)
    if (o < 1) throw InvalidArgument("datum: cyclic orders must be positive");
  if (spec_.generator_images.size() != static_cast<std::size_t>(theta) ||
      spec_.character_values.size() != static_cast<std::size_t>(theta))
    throw InvalidArgument("datum: generator_images and character_values need theta rows");
  for (int i = 0; i < theta; ++i)
    if (spec_.generator_images[i].size() != nf || spec_.character_values[i].size() != nf)
      throw InvalidArgument("datum: every row needs one entry per cyclic factor");
  for (auto [i, k] : spec_.linking)
    if (i < 0 || k < 0 || i >= theta || k >= theta || i >= k)
      throw InvalidArgument("datum: linking pairs must be i < j within 1..theta");
  switch (spec_.family) {
    case Family::A1:
      if (theta != 1) throw InvalidArgument("datum: A1 has theta = 1");
      break;
    case Family::QPLANE:
    case Family::A2:
      if (theta != 2) throw InvalidArgument("datum: " + family_name(spec_.family) + " has theta = 2");
      break;
    case Family::QLS: break;
  }
  if (spec_.family == Family::QPLANE && spec_.linking.empty()) spec_.linking = {{0, 1}};

  // Express every character value as a power of one root of unity.
  std::vector<std::vector<std::pair<int, int>>> raw(theta);
  root_order_ = 1;
  for (int i = 0; i < theta; ++i)
    for (std::size_t k = 0; k < nf; ++k) {
      auto re = as_root_of_unity(spec_.character_values[i][k]);
      if (re.first == 0)
        throw InvalidArgument("datum: chi_" + vertex_name(i) + " on factor " +
                              std::to_string(k + 1) + " is not a root of unity");
      raw[i].push_back(re);
      root_order_ = std::lcm(root_order_, re.first);
    }
  const int L = root_order_;
  char_exp_.assign(theta, std::vector<int>(nf));
  for (int i = 0; i < theta; ++i)
    for (std::size_t k = 0; k < nf; ++k)
      char_exp_[i][k] = raw[i][k].second * (L / raw[i][k].first) % L;
  braid_exp_.assign(theta, std::vector<int>(theta));
  for (int i = 0; i < theta; ++i)
    for (int j = 0; j < theta; ++j) {
      long long e = 0;
      for (std::size_t k = 0; k < nf; ++k)
        e += static_cast<long long>(spec_.generator_images[j][k]) * char_exp_[i][k];
      braid_exp_[i][j] = mod(e, L);
    }
  zeta_powers_.resize(L);
  for (int e = 0; e < L; ++e) zeta_powers_[e] = CycNum::root_of_unity(L, e);
  group_size_ = 1;
  for (int o : spec_.group_orders) group_size_ *= static_cast<std::size_t>(o);

  // Letters.
  auto unit = [&](int i) {
    MultiDeg a(theta, 0);
    a[i] = 1;
    return a;
  };
  auto add_root = [&](std::string name, MultiDeg deg, std::string z) {
    RootVector r;
    r.name = std::move(name);
    r.order = self_braiding_order(deg);
    r.degree = std::move(deg);
    r.z_name = std::move(z);
    roots_.push_back(std::move(r));
  };
  auto add_links = [&]() {
    for (auto [i, j] : spec_.linking) {
      RootVector r;
      std::string tag = vertex_name(j) + vertex_name(i);
      r.name = "z_" + tag;
      r.z_name = r.name;
      r.degree = unit(i) + unit(j);
      r.linking = true;
      r.pair = {i, j};
      roots_.push_back(std::move(r));
    }
  };
  switch (spec_.family) {
    case Family::A1:
      add_root("x", unit(0), "z");
      break;
    case Family::QPLANE:
    case Family::QLS:
      for (int i = 0; i < theta; ++i) add_root("x_" + vertex_name(i), unit(i), "z_" + vertex_name(i));
      add_links();
      break;
    case Family::A2:
      if (!spec_.linking.empty()) throw InvalidArgument("datum: A2 has no linking");
      add_root("e_12", unit(0), "z_12");
      add_root("e_13", unit(0) + unit(1), "z_13");
      add_root("e_23", unit(1), "z_23");
      break;
  }
}

int CartanDatum::exponent_of(const MultiDeg& a, const MultiDeg& b) const {
  long long e = 0;
  for (int i = 0; i < theta(); ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < theta(); ++j)
      if (b[j] != 0) e += static_cast<long long>(a[i]) * b[j] * braid_exp_[i][j];
  }
  return mod(e, root_order_);
}

CycNum CartanDatum::chi(int i, int j) const { return zeta_powers_[braid_exp_[i][j]]; }

CycNum CartanDatum::chi_eval(const MultiDeg& a, const MultiDeg& b) const {
  if (static_cast<int>(a.size()) != theta() || static_cast<int>(b.size()) != theta())
    throw InvalidArgument("chi_eval: degree length must equal theta");
  return zeta_powers_[exponent_of(a, b)];
}

CycNum CartanDatum::chi_on(const MultiDeg& a, const GroupElem& h) const {
  long long e = 0;
  for (int i = 0; i < theta(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t k = 0; k < h.size(); ++k)
      e += static_cast<long long>(a[i]) * h[k] * char_exp_[i][k];
  }
  return zeta_powers_[mod(e, root_order_)];
}

bool CartanDatum::is_invariant(const MultiDeg& a) const {
  for (std::size_t k = 0; k < spec_.group_orders.size(); ++k) {
    long long e = 0;
    for (int i = 0; i < theta(); ++i) e += static_cast<long long>(a[i]) * char_exp_[i][k];
    if (mod(e, root_order_) != 0) return false;
  }
  return true;
}

int CartanDatum::self_braiding_order(const MultiDeg& a) const {
  int e = exponent_of(a, a);
  return root_order_ / std::gcd(e, root_order_);
}

int CartanDatum::vertex_order(int i) const {
  return root_order_ / std::gcd(braid_exp_[i][i], root_order_);
}

std::size_t CartanDatum::group_index(const GroupElem& g) const {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < g.size(); ++k)
    idx = idx * spec_.group_orders[k] + mod(g[k], spec_.group_orders[k]);
  return idx;
}

GroupElem CartanDatum::group_elem(std::size_t index) const {
  GroupElem g(spec_.group_orders.size());
  for (std::size_t k = g.size(); k-- > 0;) {
    g[k] = static_cast<int>(index % spec_.group_orders[k]);
    index /= spec_.group_orders[k];
  }
  return g;
}

GroupElem CartanDatum::group_of(const MultiDeg& a) const {
  GroupElem g(spec_.group_orders.size(), 0);
  for (int i = 0; i < theta(); ++i)
    for (std::size_t k = 0; k < g.size(); ++k)
      g[k] = mod(g[k] + static_cast<long long>(a[i]) * spec_.generator_images[i][k],
                 spec_.group_orders[k]);
  return g;
}

GroupElem CartanDatum::group_mul(const GroupElem& a, const GroupElem& b) const {
  GroupElem g(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) g[k] = mod(a[k] + b[k], spec_.group_orders[k]);
  return g;
}

std::string CartanDatum::group_str(const GroupElem& g) const {
  std::string s = "(";
  for (std::size_t k = 0; k < g.size(); ++k) s += (k ? "," : "") + std::to_string(g[k]);
  return s + ")";
}

CartanDatum CartanDatum::restrict_to(const std::vector<int>& vertices) const {
  DatumSpec s;
  s.family = Family::QLS;
  s.theta = static_cast<int>(vertices.size());
  s.N = spec_.N;
  s.group_orders = spec_.group_orders;
  for (int v : vertices) {
    s.generator_images.push_back(spec_.generator_images.at(v));
    s.character_values.push_back(spec_.character_values.at(v));
  }
  auto pos = [&](int v) {
    return static_cast<int>(std::find(vertices.begin(), vertices.end(), v) - vertices.begin());
  };
  for (auto [i, j] : spec_.linking) {
    int pi = pos(i), pj = pos(j);
    bool in_i = pi < s.theta, in_j = pj < s.theta;
    if (in_i != in_j) throw InvalidArgument("restriction separates the linked pair (" +
                                            vertex_name(i) + "," + vertex_name(j) + ")");
    if (in_i) s.linking.emplace_back(std::min(pi, pj), std::max(pi, pj));
  }
  return CartanDatum(std::move(s));
}

namespace {

// zeta_N as an element of Q(zeta_N); this equals zeta_{N^2}^N.
CycNum qpow(int N, int e) { return CycNum::root_of_unity(N, e); }

}  // namespace

CartanDatum CartanDatum::a1(int N) {
  DatumSpec s;
  s.family = Family::A1;
  s.theta = 1;
  s.N = N;
  s.group_orders = {N * N};
  s.generator_images = {{1}};
  s.character_values = {{qpow(N, 1)}};
  return CartanDatum(std::move(s));
}

CartanDatum CartanDatum::qplane(int N) {
  DatumSpec s;
  s.family = Family::QPLANE;
  s.theta = 2;
  s.N = N;
  s.group_orders = {N * N, N * N};
  s.generator_images = {{1, 0}, {0, 1}};
  s.character_values = {{qpow(N, 1), qpow(N, 1)}, {qpow(N, -1), qpow(N, -1)}};
  s.linking = {{0, 1}};
  return CartanDatum(std::move(s));
}

CartanDatum CartanDatum::a2(int N, int a) {
  DatumSpec s;
  s.family = Family::A2;
  s.theta = 2;
  s.N = N;
  s.group_orders = {N * N, N * N};
  s.generator_images = {{1, 0}, {0, 1}};
  s.character_values = {{qpow(N, 1), qpow(N, a)}, {qpow(N, -1 - a), qpow(N, 1)}};
  return CartanDatum(std::move(s));
}

CartanDatum CartanDatum::qls(int theta, int N, const std::vector<std::pair<int, int>>& linking) {
  // chi_i(g_k) = q^{A[i][k]}. Each component (pair or singleton) has a lead
  // vertex; leads braid as q^{+1} below the diagonal partner and q^{-1} above,
  // and a partner's row and column are the negatives of its lead's.
  std::vector<int> lead(theta), sign(theta, 1);
  std::iota(lead.begin(), lead.end(), 0);
  for (auto [i, j] : linking) {
    if (i < 0 || j >= theta || i >= j) throw InvalidArgument("qls: bad linking pair");
    if (lead[i] != i || lead[j] != j) throw InvalidArgument("qls: a vertex is linked twice");
    lead[j] = i;
    sign[j] = -1;
  }
  std::vector<std::vector<int>> A(theta, std::vector<int>(theta, 0));
  for (int i = 0; i < theta; ++i)
    for (int k = 0; k < theta; ++k) {
      int li = lead[i], lk = lead[k];
      int base;
      if (li == lk)
        base = 1;  // within one component: chi_i(g_k) = q^{sign_i}
      else
        base = li < lk ? 1 : -1;
      A[i][k] = li == lk ? sign[i] * base : sign[i] * sign[k] * base;
    }
  DatumSpec s;
  s.family = Family::QLS;
  s.theta = theta;
  s.N = N;
  s.group_orders.assign(theta, N * N);
  s.generator_images.assign(theta, std::vector<int>(theta, 0));
  for (int i = 0; i < theta; ++i) s.generator_images[i][i] = 1;
  s.character_values.assign(theta, std::vector<CycNum>(theta));
  for (int i = 0; i < theta; ++i)
    for (int k = 0; k < theta; ++k) s.character_values[i][k] = qpow(N, A[i][k]);
  s.linking = linking;
  return CartanDatum(std::move(s));
}

CartanDatum CartanDatum::preset(const std::string& name, int N) {
  std::string up = name;
  for (auto& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (up == "A1") return a1(N);
  if (up == "QPLANE") return qplane(N);
  if (up == "A2") return a2(N);
  if (up == "QLS") return qls(3, N, {{0, 1}});
  throw InvalidArgument("unknown preset '" + name + "'");
}

std::vector<Check> validate_datum(const CartanDatum& d) {
  std::vector<Check> out;
  const int theta = d.theta();
  const auto& s = d.spec();
  const std::size_t nf = s.group_orders.size();
  auto unit = [&](int i) {
    MultiDeg a(theta, 0);
    a[i] = 1;
    return a;
  };
  auto on_gen = [&](const MultiDeg& a, std::size_t k) {
    GroupElem e(nf, 0);
    e[k] = 1;
    return d.chi_on(a, e);
  };

  {
    Check c{"characters are well defined on the cyclic factors", true, ""};
    for (int i = 0; i < theta && c.pass; ++i)
      for (std::size_t k = 0; k < nf; ++k)
        if (!on_gen(unit(i), k).pow(s.group_orders[k]).is_one()) {
          c.pass = false;
          c.witness = "chi_" + std::to_string(i + 1) + " on factor " + std::to_string(k + 1);
          break;
        }
    out.push_back(c);
  }
  {
    Check c{"chi_i(g_i) has the required order", true, ""};
    for (int i = 0; i < theta; ++i) {
      int o = d.vertex_order(i);
      bool ok = s.family == Family::QLS ? o > 2 : o == s.N;
      if (!ok) {
        c.pass = false;
        c.witness = "vertex " + std::to_string(i + 1) + " has order " + std::to_string(o);
        break;
      }
    }
    out.push_back(c);
  }
  {
    Check c{"chi_i^N = epsilon", true, ""};
    for (int i = 0; i < theta && c.pass; ++i) {
      int Ni = s.family == Family::QLS ? d.vertex_order(i) : s.N;
      for (std::size_t k = 0; k < nf; ++k)
        if (!on_gen(unit(i), k).pow(Ni).is_one()) {
          c.pass = false;
          c.witness = "chi_" + std::to_string(i + 1) + " on factor " + std::to_string(k + 1);
          break;
        }
    }
    out.push_back(c);
  }
  if (s.family == Family::QPLANE) {
    Check c{"chi_1 chi_2 = epsilon", true, ""};
    MultiDeg both{1, 1};
    for (std::size_t k = 0; k < nf; ++k)
      if (!on_gen(both, k).is_one()) {
        c.pass = false;
        c.witness = "factor " + std::to_string(k + 1) + ": " + on_gen(both, k).str();
        break;
      }
    out.push_back(c);
    CycNum p = d.chi(0, 1) * d.chi(1, 0);
    out.push_back({"chi_1(g_2) chi_2(g_1) = 1", p.is_one(), p.is_one() ? "" : p.str()});
  }
  if (s.family == Family::QLS) {
    Check c{"chi_i(g_j) chi_j(g_i) = 1 for i != j", true, ""};
    for (int i = 0; i < theta && c.pass; ++i)
      for (int j = i + 1; j < theta; ++j)
        if (!(d.chi(i, j) * d.chi(j, i)).is_one()) {
          c.pass = false;
          c.witness = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
          break;
        }
    out.push_back(c);
    Check l{"linked pairs satisfy chi_i chi_j = epsilon", true, ""};
    std::vector<int> seen(theta, 0);
    for (auto [i, j] : s.linking) {
      if (++seen[i] > 1 || ++seen[j] > 1) {
        l.pass = false;
        l.witness = "vertex linked twice";
        break;
      }
      for (std::size_t k = 0; k < nf; ++k)
        if (!on_gen(unit(i) + unit(j), k).is_one()) {
          l.pass = false;
          l.witness = "z_" + std::to_string(std::max(i, j) + 1) + std::to_string(std::min(i, j) + 1) +
                      " is not G-invariant: chi_" + std::to_string(i + 1) + " chi_" + std::to_string(j + 1) +
                      " is nontrivial on factor " + std::to_string(k + 1);
          break;
        }
    }
    out.push_back(l);
  }
  if (s.family == Family::A2) {
    bool same = d.chi(0, 0) == d.chi(1, 1);
    out.push_back({"chi_1(g_1) = chi_2(g_2) = q", same,
                   same ? "" : d.chi(0, 0).str() + " vs " + d.chi(1, 1).str()});
    CycNum p = d.chi(0, 1) * d.chi(1, 0);
    bool ok = p == d.q().inv();
    out.push_back({"chi_1(g_2) chi_2(g_1) = q^-1", ok, ok ? "" : p.str()});
  }
  return out;
}

}  // namespace hopflift
