#ifndef QVSP_EXACT_COVER_HPP
#define QVSP_EXACT_COVER_HPP

// Algorithm X on dancing links, index based.  Items are 0..n-1; options are
// added in the order they should be tried.  The column chosen at each node is
// the one with the fewest remaining options, ties to the lowest item.

#include <cstdint>
#include <optional>
#include <vector>

#include "qvsp/error.hpp"

namespace qvsp {

class ExactCover {
 public:
  enum class Status { found, exhausted, budget_exhausted };

  struct Result {
    Status status = Status::exhausted;
    std::vector<std::size_t> options;  // indices of the chosen options when found
    std::uint64_t nodes = 0;
  };

  explicit ExactCover(std::size_t items) : items_(items) {
    // Node 0 is the root, nodes 1..items are the column headers.
    const std::size_t n = items + 1;
    left_.resize(n);
    right_.resize(n);
    up_.resize(n);
    down_.resize(n);
    col_.resize(n);
    row_.assign(n, kNone);
    size_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      left_[i] = i == 0 ? items : i - 1;
      right_[i] = i == items ? 0 : i + 1;
      up_[i] = down_[i] = col_[i] = i;
    }
  }

  std::size_t item_count() const noexcept { return items_; }
  std::size_t option_count() const noexcept { return options_; }

  /// Adds an option covering the given distinct items; returns its index.
  std::size_t add_option(const std::vector<std::size_t>& items) {
    if (items.empty()) throw DomainError("exact cover option must cover at least one item");
    const std::size_t id = options_++;
    std::size_t first = kNone;
    for (std::size_t item : items) {
      if (item >= items_) throw DomainError("exact cover item out of range");
      const std::size_t c = item + 1;
      const std::size_t x = left_.size();
      left_.push_back(x);
      right_.push_back(x);
      col_.push_back(c);
      row_.push_back(id);
      size_.push_back(0);
      up_.push_back(up_[c]);
      down_.push_back(c);
      down_[up_[c]] = x;
      up_[c] = x;
      ++size_[c];
      if (first == kNone) {
        first = x;
      } else {
        left_[x] = left_[first];
        right_[x] = first;
        right_[left_[first]] = x;
        left_[first] = x;
      }
    }
    return id;
  }

  /// Depth-first search for one exact cover within `node_budget` search nodes.
  /// A found cover leaves the links in use, so solve runs once per instance.
  Result solve(std::uint64_t node_budget) {
    if (solved_) throw DomainError("ExactCover::solve runs once per instance");
    solved_ = true;
    Result result;
    std::vector<std::size_t> stack;
    const bool hit = search(stack, node_budget, result.nodes);
    if (hit) {
      result.status = Status::found;
      for (std::size_t x : stack) result.options.push_back(row_[x]);
    } else {
      result.status = result.nodes >= node_budget ? Status::budget_exhausted : Status::exhausted;
    }
    return result;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  void cover(std::size_t c) {
    right_[left_[c]] = right_[c];
    left_[right_[c]] = left_[c];
    for (std::size_t i = down_[c]; i != c; i = down_[i])
      for (std::size_t j = right_[i]; j != i; j = right_[j]) {
        down_[up_[j]] = down_[j];
        up_[down_[j]] = up_[j];
        --size_[col_[j]];
      }
  }

  void uncover(std::size_t c) {
    for (std::size_t i = up_[c]; i != c; i = up_[i])
      for (std::size_t j = left_[i]; j != i; j = left_[j]) {
        ++size_[col_[j]];
        down_[up_[j]] = j;
        up_[down_[j]] = j;
      }
    right_[left_[c]] = c;
    left_[right_[c]] = c;
  }

  bool search(std::vector<std::size_t>& stack, std::uint64_t budget, std::uint64_t& nodes) {
    if (right_[0] == 0) return true;
    if (nodes >= budget) return false;
    ++nodes;
    std::size_t best = right_[0];
    for (std::size_t c = right_[best]; c != 0; c = right_[c])
      if (size_[c] < size_[best]) best = c;
    if (size_[best] == 0) return false;
    cover(best);
    for (std::size_t r = down_[best]; r != best; r = down_[r]) {
      stack.push_back(r);
      for (std::size_t j = right_[r]; j != r; j = right_[j]) cover(col_[j]);
      if (search(stack, budget, nodes)) return true;
      for (std::size_t j = left_[r]; j != r; j = left_[j]) uncover(col_[j]);
      stack.pop_back();
      if (nodes >= budget) break;
    }
    uncover(best);
    return false;
  }

  std::size_t items_;
  std::size_t options_ = 0;
  bool solved_ = false;
  std::vector<std::size_t> left_, right_, up_, down_, col_, row_, size_;
};

}  // namespace qvsp

#endif  // QVSP_EXACT_COVER_HPP
