#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace magneto {

/// Subset of the vertices {0, ..., n-1} of a graph with n <= 64, stored as a
/// bitmask. Subset enumeration and cut computations work on these.
class VertexSet {
 public:
  static constexpr int kMaxVertices = 64;

  constexpr VertexSet() = default;
  constexpr explicit VertexSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr VertexSet full(int n) {
    return VertexSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static constexpr VertexSet single(int v) { return VertexSet(std::uint64_t{1} << v); }
  static VertexSet of(std::initializer_list<int> vertices) {
    VertexSet s;
    for (int v : vertices) s.insert(v);
    return s;
  }

  constexpr std::uint64_t bits() const noexcept { return bits_; }
  constexpr bool contains(int v) const noexcept { return (bits_ >> v) & 1u; }
  constexpr void insert(int v) noexcept { bits_ |= std::uint64_t{1} << v; }
  constexpr void erase(int v) noexcept { bits_ &= ~(std::uint64_t{1} << v); }
  constexpr int size() const noexcept { return std::popcount(bits_); }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr VertexSet complement(int n) const noexcept { return VertexSet(full(n).bits_ & ~bits_); }
  constexpr bool is_subset_of(VertexSet other) const noexcept { return (bits_ & ~other.bits_) == 0; }

  template <class F>
  void for_each(F&& f) const {
    for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1) f(std::countr_zero(rest));
  }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(size());
    for_each([&](int v) { out.push_back(v); });
    return out;
  }

  friend constexpr VertexSet operator&(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & b.bits_); }
  friend constexpr VertexSet operator|(VertexSet a, VertexSet b) { return VertexSet(a.bits_ | b.bits_); }
  friend constexpr bool operator==(VertexSet, VertexSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace magneto
