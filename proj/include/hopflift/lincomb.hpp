// Finitely supported linear combinations keyed by an ordered basis type.
#pragma once

#include <map>

#include "hopflift/cyclotomic.hpp"

namespace hopflift {

/// Never stores a zero coefficient; iteration follows the key order.
template <class Key>
class LinComb {
 public:
  using Map = std::map<Key, CycNum>;

  LinComb() = default;
  LinComb(const Key& k, const CycNum& c = CycNum(1)) { add(k, c); }  // NOLINT

  void add(const Key& k, const CycNum& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(k, c);
    if (fresh) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
  void add(const LinComb& other, const CycNum& scale = CycNum(1)) {
    if (scale.is_zero()) return;
    bool unit = scale.is_one();
    for (const auto& [k, c] : other.terms_) add(k, unit ? c : c * scale);
  }

  CycNum coeff(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? CycNum() : it->second;
  }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }
  const Map& terms() const { return terms_; }

  LinComb operator*(const CycNum& s) const {
    LinComb r;
    if (s.is_zero()) return r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, c * s);
    return r;
  }
  LinComb operator+(const LinComb& o) const {
    LinComb r = *this;
    r.add(o);
    return r;
  }
  LinComb operator-(const LinComb& o) const {
    LinComb r = *this;
    r.add(o, CycNum(-1));
    return r;
  }
  LinComb& operator+=(const LinComb& o) {
    add(o);
    return *this;
  }
  friend bool operator==(const LinComb& a, const LinComb& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto it = b.terms_.begin();
    for (const auto& [k, c] : a.terms_) {
      if (!(it->first == k) || !(it->second == c)) return false;
      ++it;
    }
    return true;
  }

 private:
  Map terms_;
};

}  // namespace hopflift
