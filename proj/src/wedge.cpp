#include "stlmon/wedge.hpp"

#include <stdexcept>

namespace stlmon {

Wedge::Wedge(Kind kind, std::int64_t width) : kind_(kind), width_(width) {
  if (width < 1) throw std::invalid_argument("wedge width must be at least 1");
  slots_.resize(static_cast<std::size_t>(width));
}

void Wedge::push(std::int64_t t, ExtReal x) {
  // A newer value that dominates older ones makes them irrelevant.
  while (size_ > 0 && dominates(x, at(size_ - 1).value)) {
    --size_;
    ++ops_;
  }
  if (size_ == slots_.size()) {
    // Only reachable if the caller did not evict; drop the oldest.
    front_ = (front_ + 1) % slots_.size();
    --size_;
    ++ops_;
  }
  at(size_) = Entry{t, x};
  ++size_;
  ++ops_;
}

void Wedge::evict_before(std::int64_t lo) {
  while (size_ > 0 && at(0).index < lo) {
    front_ = (front_ + 1) % slots_.size();
    --size_;
    ++ops_;
  }
}

ExtReal Wedge::extremum() const {
  if (size_ == 0) return kind_ == Kind::max ? ExtReal::neg_inf() : ExtReal::pos_inf();
  return at(0).value;
}

ExtReal Wedge::update(std::int64_t t, ExtReal x) {
  evict_before(t - width_ + 1);
  push(t, x);
  return extremum();
}

void Wedge::reset() {
  front_ = 0;
  size_ = 0;
  ops_ = 0;
}

ExtReal wedge_update(Wedge& w, std::int64_t t, ExtReal x) { return w.update(t, x); }

}  // namespace stlmon
