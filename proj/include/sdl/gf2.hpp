// Dense linear algebra over GF(2).
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sdl {

class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i, bool v = true) {
    if (v)
      words_[i >> 6] |= (std::uint64_t{1} << (i & 63));
    else
      words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  void flip(std::size_t i) { words_[i >> 6] ^= (std::uint64_t{1} << (i & 63)); }
  BitVec& operator^=(const BitVec& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= o.words_[k];
    return *this;
  }
  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  // parity of the bitwise AND with o
  bool dot(const BitVec& o) const {
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < words_.size(); ++k) acc ^= words_[k] & o.words_[k];
    return __builtin_parityll(acc);
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }
  friend bool operator==(const BitVec& a, const BitVec& b) { return a.n_ == b.n_ && a.words_ == b.words_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

// Solution set of A x = b, with A given by rows over ncols unknowns.
struct Gf2Solution {
  bool consistent = false;
  BitVec particular;             // valid when consistent
  std::vector<BitVec> nullspace;  // basis of {x : A x = 0}
  std::size_t rank = 0;
};

Gf2Solution gf2_solve(const std::vector<BitVec>& rows, const std::vector<std::uint8_t>& rhs, std::size_t ncols);

}  // namespace sdl
