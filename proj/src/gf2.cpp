#include "sdl/gf2.hpp"

#include <stdexcept>

namespace sdl {

Gf2Solution gf2_solve(const std::vector<BitVec>& rows, const std::vector<std::uint8_t>& rhs, std::size_t ncols) {
  if (rows.size() != rhs.size()) throw std::invalid_argument("gf2_solve: rhs size mismatch");
  std::vector<BitVec> a = rows;
  std::vector<std::uint8_t> b = rhs;
  for (auto& r : a)
    if (r.size() != ncols) throw std::invalid_argument("gf2_solve: row width mismatch");

  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && !a[p].get(c)) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (k != r && a[k].get(c)) {
        a[k] ^= a[r];
        b[k] ^= b[r];
      }
    }
    pivot_col.push_back(c);
    ++r;
  }

  Gf2Solution out;
  out.rank = r;
  for (std::size_t k = r; k < a.size(); ++k)
    if (b[k]) return out;
  out.consistent = true;

  out.particular = BitVec(ncols);
  for (std::size_t k = 0; k < r; ++k)
    if (b[k]) out.particular.set(pivot_col[k]);

  std::vector<bool> is_pivot(ncols, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    BitVec v(ncols);
    v.set(f);
    for (std::size_t k = 0; k < r; ++k)
      if (a[k].get(f)) v.set(pivot_col[k]);
    out.nullspace.push_back(std::move(v));
  }
  return out;
}

}  // namespace sdl
