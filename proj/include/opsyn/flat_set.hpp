#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <iterator>
#include <span>
#include <vector>

namespace opsyn {

/// Sorted, duplicate-free vector. Iteration order is the element order, which
/// for ids is the canonical name order of the owning plant.
template <class T>
class FlatSet {
 public:
  using value_type = T;
  using const_iterator = typename std::vector<T>::const_iterator;

  FlatSet() = default;
  FlatSet(std::initializer_list<T> init) : items_(init) { normalize(); }
  explicit FlatSet(std::vector<T> items) : items_(std::move(items)) { normalize(); }
  template <class It>
  FlatSet(It first, It last) : items_(first, last) {
    normalize();
  }

  bool insert(const T& value) {
    auto it = std::lower_bound(items_.begin(), items_.end(), value);
    if (it != items_.end() && *it == value) return false;
    items_.insert(it, value);
    return true;
  }

  void insert_all(const FlatSet& other) {
    if (other.empty()) return;
    std::vector<T> merged;
    merged.reserve(items_.size() + other.items_.size());
    std::set_union(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                   std::back_inserter(merged));
    items_ = std::move(merged);
  }

  bool contains(const T& value) const {
    return std::binary_search(items_.begin(), items_.end(), value);
  }

  /// Subset-or-equal.
  bool is_subset_of(const FlatSet& other) const {
    return std::includes(other.items_.begin(), other.items_.end(), items_.begin(),
                         items_.end());
  }

  bool is_strict_subset_of(const FlatSet& other) const {
    return items_.size() < other.items_.size() && is_subset_of(other);
  }

  bool empty() const noexcept { return items_.empty(); }
  std::size_t size() const noexcept { return items_.size(); }
  const_iterator begin() const noexcept { return items_.begin(); }
  const_iterator end() const noexcept { return items_.end(); }
  const T& front() const { return items_.front(); }
  std::span<const T> items() const noexcept { return items_; }

  friend bool operator==(const FlatSet&, const FlatSet&) = default;
  friend auto operator<=>(const FlatSet& a, const FlatSet& b) { return a.items_ <=> b.items_; }

 private:
  void normalize() {
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
  }

  std::vector<T> items_;
};

template <class T>
FlatSet<T> set_union(const FlatSet<T>& a, const FlatSet<T>& b) {
  FlatSet<T> out = a;
  out.insert_all(b);
  return out;
}

}  // namespace opsyn
