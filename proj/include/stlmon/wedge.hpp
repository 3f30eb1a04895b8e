#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "stlmon/ext_real.hpp"

namespace stlmon {

/// Fixed-capacity FIFO that keeps the most recent `capacity` values.
template <typename T>
class RingBuffer {
 public:
  RingBuffer() = default;
  explicit RingBuffer(std::size_t capacity, T fill = T{}) : data_(capacity, fill), fill_(fill) {}

  std::size_t capacity() const { return data_.size(); }
  std::size_t size() const { return size_; }
  bool full() const { return size_ == data_.size(); }

  /// Appends x; when full, the oldest value is overwritten and returned.
  T push(T x) {
    T evicted = fill_;
    if (data_.empty()) return x;
    if (full()) evicted = data_[head_];
    data_[head_] = x;
    head_ = head_ + 1 == data_.size() ? 0 : head_ + 1;
    if (!full()) ++size_;
    return evicted;
  }

  /// Value pushed `age` pushes ago (0 is the newest). Requires age < size().
  const T& back(std::size_t age) const {
    std::size_t i = head_ + data_.size() - 1 - age;
    return data_[i >= data_.size() ? i - data_.size() : i];
  }

  void clear() {
    std::fill(data_.begin(), data_.end(), fill_);
    head_ = 0;
    size_ = 0;
  }

 private:
  std::vector<T> data_;
  T fill_{};
  std::size_t head_ = 0;
  std::size_t size_ = 0;
};

/// Sliding-window maximum (or minimum) over the last `width` indices.
/// Entries are kept in a ring-backed deque whose indices increase and whose
/// values strictly decrease (increase for a minimum) from front to back.
class Wedge {
 public:
  enum class Kind { max, min };

  Wedge() = default;
  Wedge(Kind kind, std::int64_t width);

  /// Inserts x at index t (strictly after the previous index) and returns
  /// the extremum over indices (t - width, t].
  ExtReal update(std::int64_t t, ExtReal x);

  /// Inserts x at index t without evicting, for callers that evict by a
  /// different reference index.
  void push(std::int64_t t, ExtReal x);
  /// Drops entries with index < lo.
  void evict_before(std::int64_t lo);
  /// Current extremum; the identity (-inf for max, +inf for min) when empty.
  ExtReal extremum() const;

  void reset();

  std::size_t size() const { return size_; }
  std::size_t capacity() const { return slots_.size(); }
  std::int64_t width() const { return width_; }
  /// Total pushes plus pops since construction or reset.
  std::uint64_t operations() const { return ops_; }

 private:
  struct Entry {
    std::int64_t index;
    ExtReal value;
  };

  bool dominates(ExtReal a, ExtReal b) const { return kind_ == Kind::max ? !(a < b) : !(b < a); }
  Entry& at(std::size_t i) { return slots_[(front_ + i) % slots_.size()]; }
  const Entry& at(std::size_t i) const { return slots_[(front_ + i) % slots_.size()]; }

  Kind kind_ = Kind::max;
  std::int64_t width_ = 1;
  std::vector<Entry> slots_;
  std::size_t front_ = 0;
  std::size_t size_ = 0;
  std::uint64_t ops_ = 0;
};

/// One step of a sliding-window extremum: `w.update(t, x)` with the window
/// width fixed at construction.
ExtReal wedge_update(Wedge& w, std::int64_t t, ExtReal x);

}  // namespace stlmon
