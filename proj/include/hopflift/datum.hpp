// Diagonal braiding data: group, characters, grading and root vectors.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hopflift/check.hpp"
#include "hopflift/cyclotomic.hpp"

namespace hopflift {

enum class Family { A1, QLS, QPLANE, A2 };

std::string family_name(Family f);
Family parse_family(const std::string& name);

/// Exponents over the simple roots.
using MultiDeg = std::vector<int>;
int height(const MultiDeg& a);
MultiDeg operator+(const MultiDeg& a, const MultiDeg& b);
MultiDeg operator-(const MultiDeg& a, const MultiDeg& b);
/// Entrywise a <= b.
bool dominated(const MultiDeg& a, const MultiDeg& b);

/// Element of the finite abelian group, one exponent per cyclic factor.
using GroupElem = std::vector<int>;

/// One PBW letter: a root vector x_alpha, or the slot z_ji of a linked pair.
struct RootVector {
  std::string name;
  MultiDeg degree;
  bool linking = false;
  /// Order of chi_alpha(g_alpha); x_alpha^order is the K-generator. 0 for linking slots.
  int order = 0;
  /// Name of the K-generator this letter produces.
  std::string z_name;
  /// Linked pair (i < j, zero-based) for linking slots.
  std::pair<int, int> pair{-1, -1};
};

/// Raw datum as read from JSON. Vertex and factor indices are zero-based here,
/// one-based in JSON.
struct DatumSpec {
  Family family = Family::A1;
  int theta = 1;
  int N = 3;
  std::vector<int> group_orders;
  std::vector<std::vector<int>> generator_images;    // theta x factors
  std::vector<std::vector<CycNum>> character_values;  // theta x factors
  std::vector<std::pair<int, int>> linking;

  friend bool operator==(const DatumSpec&, const DatumSpec&) = default;
};

void to_json(nlohmann::json& j, const DatumSpec& s);
void from_json(const nlohmann::json& j, DatumSpec& s);

class CartanDatum {
 public:
  /// Throws InvalidArgument on shape errors or character values that are not
  /// roots of unity; the algebraic constraints are left to validate().
  explicit CartanDatum(DatumSpec spec);

  static CartanDatum a1(int N);
  static CartanDatum qplane(int N);
  /// chi_1(g_2) = q^a, chi_2(g_1) = q^{-1-a}.
  static CartanDatum a2(int N, int a = -1);
  /// Linked pairs are zero-based (i < j); every vertex has order N.
  static CartanDatum qls(int theta, int N, const std::vector<std::pair<int, int>>& linking);
  static CartanDatum preset(const std::string& name, int N);

  const DatumSpec& spec() const { return spec_; }
  Family family() const { return spec_.family; }
  int theta() const { return spec_.theta; }
  int N() const { return spec_.N; }
  const std::vector<std::pair<int, int>>& linking() const { return spec_.linking; }

  /// chi_i(g_j).
  CycNum chi(int i, int j) const;
  /// Q[i][j] = chi_j(g_i).
  CycNum braid(int i, int j) const { return chi(j, i); }
  /// chi^a(g^b) = prod chi_i(g_j)^{a_i b_j}.
  CycNum chi_eval(const MultiDeg& a, const MultiDeg& b) const;
  /// chi^a(h).
  CycNum chi_on(const MultiDeg& a, const GroupElem& h) const;
  bool is_invariant(const MultiDeg& a) const;
  /// chi_1(g_1).
  CycNum q() const { return chi(0, 0); }
  /// Multiplicative order of chi_i(g_i).
  int vertex_order(int i) const;
  /// Multiplicative order of chi^a(g^a).
  int self_braiding_order(const MultiDeg& a) const;

  std::size_t group_size() const { return group_size_; }
  std::size_t group_index(const GroupElem& g) const;
  GroupElem group_elem(std::size_t index) const;
  GroupElem group_of(const MultiDeg& a) const;
  GroupElem group_mul(const GroupElem& a, const GroupElem& b) const;
  std::string group_str(const GroupElem& g) const;

  /// PBW letters in order. Throws for families without a hardcoded root system.
  const std::vector<RootVector>& positive_roots() const { return roots_; }

  /// The datum restricted to a subset of vertices (same group).
  CartanDatum restrict_to(const std::vector<int>& vertices) const;

 private:
  int exponent_of(const MultiDeg& a, const MultiDeg& b) const;

  DatumSpec spec_;
  int root_order_ = 1;                         // chi values are powers of zeta_L
  std::vector<std::vector<int>> char_exp_;     // theta x factors, over zeta_L
  std::vector<std::vector<int>> braid_exp_;    // chi_i(g_j) over zeta_L
  std::vector<CycNum> zeta_powers_;
  std::size_t group_size_ = 1;
  std::vector<RootVector> roots_;
};

std::vector<Check> validate_datum(const CartanDatum& d);

}  // namespace hopflift
