#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "opconvex/errors.hpp"

namespace opconvex {

/// A subset of a finite carrier, stored as a bitset over element ids.
class Subset {
 public:
  Subset() = default;
  explicit Subset(std::size_t universe, bool all = false) : bits_(universe, all) {}

  static Subset of(std::size_t universe, std::initializer_list<std::size_t> xs) {
    Subset s(universe);
    for (auto x : xs) s.add(x);
    return s;
  }
  static Subset from_indices(std::size_t universe, const std::vector<std::size_t>& xs) {
    Subset s(universe);
    for (auto x : xs) s.add(x);
    return s;
  }

  std::size_t universe_size() const { return bits_.size(); }
  bool contains(std::size_t i) const { return bits_[i]; }
  void add(std::size_t i) {
    if (i >= bits_.size()) fail(Errc::out_of_range, "subset element out of range");
    bits_[i] = true;
  }
  void remove(std::size_t i) { bits_.at(i) = false; }

  std::size_t count() const {
    std::size_t c = 0;
    for (bool b : bits_) c += b;
    return c;
  }
  bool empty() const { return count() == 0; }
  bool full() const { return count() == bits_.size(); }

  bool subset_of(const Subset& other) const {
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] && !other.bits_[i]) return false;
    return true;
  }
  Subset complement() const {
    Subset s(*this);
    for (std::size_t i = 0; i < bits_.size(); ++i) s.bits_[i] = !s.bits_[i];
    return s;
  }
  Subset union_with(const Subset& other) const {
    Subset s(*this);
    for (std::size_t i = 0; i < bits_.size(); ++i) s.bits_[i] = s.bits_[i] || other.bits_[i];
    return s;
  }
  Subset intersect(const Subset& other) const {
    Subset s(*this);
    for (std::size_t i = 0; i < bits_.size(); ++i) s.bits_[i] = s.bits_[i] && other.bits_[i];
    return s;
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) out.push_back(i);
    return out;
  }

  bool operator==(const Subset&) const = default;

 private:
  std::vector<bool> bits_;
};

}  // namespace opconvex
