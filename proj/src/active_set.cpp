#include "icsym/active_set.hpp"

#include <stdexcept>
#include <string>

namespace icsym {

ActiveSet::ActiveSet(std::size_t node_count)
    : node_count_(node_count), words_(words_for(node_count), 0) {}

ActiveSet::ActiveSet(std::size_t node_count, std::initializer_list<NodeId> members)
    : ActiveSet(node_count) {
  for (NodeId k : members) insert(k);
}

ActiveSet ActiveSet::singleton(std::size_t node_count, NodeId node) {
  ActiveSet s(node_count);
  s.insert(node);
  return s;
}

ActiveSet ActiveSet::full(std::size_t node_count) {
  ActiveSet s(node_count);
  for (NodeId k = 0; k < node_count; ++k) s.insert(k);
  return s;
}

ActiveSet ActiveSet::from_mask(std::size_t node_count, std::uint64_t mask) {
  if (node_count > 64) throw std::invalid_argument("ActiveSet::from_mask: more than 64 nodes");
  if (node_count < 64 && (mask >> node_count) != 0)
    throw std::out_of_range("ActiveSet::from_mask: mask has bits beyond node count");
  ActiveSet s(node_count);
  if (!s.words_.empty()) s.words_[0] = mask;
  return s;
}

void ActiveSet::check_index(NodeId k) const {
  if (k >= node_count_)
    throw std::out_of_range("node " + std::to_string(k) + " outside [0, " +
                            std::to_string(node_count_) + ")");
}

void ActiveSet::check_same_size(const ActiveSet& other) const {
  if (other.node_count_ != node_count_)
    throw std::invalid_argument("active sets over different node counts");
}

bool ActiveSet::contains(NodeId k) const {
  check_index(k);
  return (words_[k / 64] >> (k % 64)) & 1U;
}

void ActiveSet::insert(NodeId k) {
  check_index(k);
  words_[k / 64] |= std::uint64_t{1} << (k % 64);
}

void ActiveSet::clear() noexcept {
  for (auto& w : words_) w = 0;
}

std::size_t ActiveSet::size() const noexcept {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool ActiveSet::empty() const noexcept {
  for (auto w : words_)
    if (w != 0) return false;
  return true;
}

bool ActiveSet::is_subset_of(const ActiveSet& other) const {
  check_same_size(other);
  for (std::size_t w = 0; w < words_.size(); ++w)
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  return true;
}

std::vector<NodeId> ActiveSet::members() const {
  std::vector<NodeId> out;
  out.reserve(size());
  for_each_member([&](NodeId k) { out.push_back(k); });
  return out;
}

std::uint64_t ActiveSet::to_mask() const {
  if (node_count_ > 64) throw std::invalid_argument("ActiveSet::to_mask: more than 64 nodes");
  return words_.empty() ? 0 : words_[0];
}

ActiveSet& ActiveSet::operator|=(const ActiveSet& other) {
  check_same_size(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

}  // namespace icsym
