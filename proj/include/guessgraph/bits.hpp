#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace guessgraph {

// Fixed-size dynamic bitset used for vertex sets of large graphs.
class Bits {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  Bits() = default;
  explicit Bits(std::size_t size) : size_(size), words_((size + kWordBits - 1) / kWordBits, 0) {}

  static Bits full(std::size_t size) {
    Bits b(size);
    for (auto& w : b.words_) w = ~Word{0};
    b.trim();
    return b;
  }

  std::size_t size() const { return size_; }
  std::size_t word_count() const { return words_.size(); }
  Word* data() { return words_.data(); }
  const Word* data() const { return words_.data(); }

  bool test(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i) { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void reset(std::size_t i) { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool any() const {
    for (Word w : words_)
      if (w) return true;
    return false;
  }

  // Index of the lowest set bit, or size() when empty.
  std::size_t first() const { return next(0); }

  std::size_t next(std::size_t from) const {
    if (from >= size_) return size_;
    std::size_t wi = from / kWordBits;
    Word w = words_[wi] & (~Word{0} << (from % kWordBits));
    while (true) {
      if (w) return wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
      if (++wi == words_.size()) return size_;
      w = words_[wi];
    }
  }

  Bits& operator&=(const Bits& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  Bits& operator|=(const Bits& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  Bits& operator^=(const Bits& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  // this &= ~o
  Bits& subtract(const Bits& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  bool intersects(const Bits& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = first(); i < size_; i = next(i + 1)) out.push_back(i);
    return out;
  }

  friend bool operator==(const Bits&, const Bits&) = default;

 private:
  void trim() {
    if (size_ % kWordBits && !words_.empty()) words_.back() &= (Word{1} << (size_ % kWordBits)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<Word> words_;
};

}  // namespace guessgraph
