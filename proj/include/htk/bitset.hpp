#pragma once

#include <cassert>
#include <cstdint>
#include <functional>
#include <vector>

namespace htk {

// Fixed-universe bitset. All set operations used by the solvers (component
// enumeration, separator tests, bag arithmetic) run on these.
class DynBitset {
 public:
  DynBitset() = default;
  explicit DynBitset(int size) : size_(size), blocks_((size + 63) / 64, 0) {}

  int size() const { return size_; }

  void set(int i) {
    assert(i >= 0 && i < size_);
    blocks_[i >> 6] |= (std::uint64_t{1} << (i & 63));
  }
  void reset(int i) {
    assert(i >= 0 && i < size_);
    blocks_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  bool test(int i) const {
    assert(i >= 0 && i < size_);
    return (blocks_[i >> 6] >> (i & 63)) & 1;
  }

  bool any() const {
    for (auto b : blocks_)
      if (b) return true;
    return false;
  }
  bool none() const { return !any(); }

  int count() const {
    int c = 0;
    for (auto b : blocks_) c += __builtin_popcountll(b);
    return c;
  }

  DynBitset& operator|=(const DynBitset& o) {
    assert(size_ == o.size_);
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] |= o.blocks_[i];
    return *this;
  }
  DynBitset& operator&=(const DynBitset& o) {
    assert(size_ == o.size_);
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= o.blocks_[i];
    return *this;
  }
  // set difference
  DynBitset& operator-=(const DynBitset& o) {
    assert(size_ == o.size_);
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= ~o.blocks_[i];
    return *this;
  }

  friend DynBitset operator|(DynBitset a, const DynBitset& b) { return a |= b; }
  friend DynBitset operator&(DynBitset a, const DynBitset& b) { return a &= b; }
  friend DynBitset operator-(DynBitset a, const DynBitset& b) { return a -= b; }

  bool subset_of(const DynBitset& o) const {
    assert(size_ == o.size_);
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if (blocks_[i] & ~o.blocks_[i]) return false;
    return true;
  }
  bool intersects(const DynBitset& o) const {
    assert(size_ == o.size_);
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if (blocks_[i] & o.blocks_[i]) return true;
    return false;
  }

  bool operator==(const DynBitset& o) const {
    return size_ == o.size_ && blocks_ == o.blocks_;
  }
  bool operator!=(const DynBitset& o) const { return !(*this == o); }

  // total order: by first differing element (lexicographic on the index list)
  bool lex_less(const DynBitset& o) const {
    assert(size_ == o.size_);
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      std::uint64_t diff = blocks_[i] ^ o.blocks_[i];
      if (diff) {
        std::uint64_t low = diff & (~diff + 1);
        return blocks_[i] & low;  // we own the smaller differing index
      }
    }
    return false;
  }

  int find_first() const { return find_next(-1); }
  int find_next(int i) const {
    for (int j = i + 1; j < size_;) {
      std::uint64_t b = blocks_[j >> 6] >> (j & 63);
      if (b) return j + __builtin_ctzll(b);
      j = (j | 63) + 1;
    }
    return -1;
  }

  template <typename F>
  void for_each(F f) const {
    for (int i = find_first(); i >= 0; i = find_next(i)) f(i);
  }

  std::vector<int> to_vector() const {
    std::vector<int> v;
    v.reserve(count());
    for_each([&](int i) { v.push_back(i); });
    return v;
  }

  std::size_t hash() const {
    std::size_t h = std::hash<int>{}(size_);
    for (auto b : blocks_) h = h * 1099511628211ULL + std::hash<std::uint64_t>{}(b);
    return h;
  }

 private:
  int size_ = 0;
  std::vector<std::uint64_t> blocks_;
};

struct DynBitsetHash {
  std::size_t operator()(const DynBitset& b) const { return b.hash(); }
};

}  // namespace htk
