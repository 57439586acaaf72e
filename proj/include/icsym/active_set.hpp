#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace icsym {

using NodeId = std::size_t;

/// Set of activated nodes over [0, N), stored as packed 64-bit words. This is
/// the boolean form of the state vector: node k is a member iff (v)_k > 0.
class ActiveSet {
 public:
  ActiveSet() = default;
  explicit ActiveSet(std::size_t node_count);
  ActiveSet(std::size_t node_count, std::initializer_list<NodeId> members);

  static ActiveSet singleton(std::size_t node_count, NodeId node);
  static ActiveSet full(std::size_t node_count);
  /// Requires node_count <= 64.
  static ActiveSet from_mask(std::size_t node_count, std::uint64_t mask);

  std::size_t node_count() const noexcept { return node_count_; }
  bool contains(NodeId k) const;
  void insert(NodeId k);
  void clear() noexcept;

  std::size_t size() const noexcept;
  bool empty() const noexcept;
  bool is_subset_of(const ActiveSet& other) const;
  std::vector<NodeId> members() const;
  /// Requires node_count <= 64.
  std::uint64_t to_mask() const;

  ActiveSet& operator|=(const ActiveSet& other);

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }

  template <typename F>
  void for_each_member(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        f(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  friend bool operator==(const ActiveSet&, const ActiveSet&) = default;

 private:
  void check_index(NodeId k) const;
  void check_same_size(const ActiveSet& other) const;

  std::size_t node_count_ = 0;
  std::vector<std::uint64_t> words_;
};

constexpr std::size_t words_for(std::size_t bits) noexcept { return (bits + 63) / 64; }

}  // namespace icsym
