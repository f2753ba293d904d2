#ifndef INQML_BITSET_HPP
#define INQML_BITSET_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace inqml {

// Fixed-universe dynamic bitset. Used for information states (subsets of the
// world index set) and for rows of binary relations.
class WorldSet {
 public:
  WorldSet() = default;
  explicit WorldSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  static WorldSet full(std::size_t universe);
  static WorldSet of(std::size_t universe, std::initializer_list<std::size_t> members);
  static WorldSet of(std::size_t universe, const std::vector<std::size_t>& members);
  // Low `universe` bits of `mask`; universe <= 64.
  static WorldSet from_mask(std::size_t universe, std::uint64_t mask);

  std::size_t universe() const noexcept { return universe_; }
  bool test(std::size_t i) const noexcept {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const noexcept;
  bool empty() const noexcept;
  bool is_subset_of(const WorldSet& other) const noexcept;
  bool intersects(const WorldSet& other) const noexcept;
  std::vector<std::size_t> members() const;
  // Requires universe <= 64.
  std::uint64_t to_mask() const noexcept { return words_.empty() ? 0 : words_[0]; }
  std::size_t hash() const noexcept;

  // Lowest member >= from, or universe() if none.
  std::size_t next(std::size_t from) const noexcept;
  std::size_t first() const noexcept { return next(0); }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        f(w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits)));
        bits &= bits - 1;
      }
    }
  }

  WorldSet& operator|=(const WorldSet& o) noexcept;
  WorldSet& operator&=(const WorldSet& o) noexcept;
  WorldSet& operator-=(const WorldSet& o) noexcept;
  friend WorldSet operator|(WorldSet a, const WorldSet& b) { return a |= b; }
  friend WorldSet operator&(WorldSet a, const WorldSet& b) { return a &= b; }
  friend WorldSet operator-(WorldSet a, const WorldSet& b) { return a -= b; }

  friend bool operator==(const WorldSet& a, const WorldSet& b) noexcept {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }

  // Canonical order: by cardinality, then lexicographically by sorted member list.
  friend bool operator<(const WorldSet& a, const WorldSet& b) noexcept;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct WorldSetHash {
  std::size_t operator()(const WorldSet& s) const noexcept { return s.hash(); }
};

// Calls f(sub) for every subset of `set`, including the empty set and `set`
// itself. The caller bounds |set|.
template <class F>
void for_each_subset(const WorldSet& set, F&& f) {
  const std::vector<std::size_t> m = set.members();
  const std::uint64_t n = std::uint64_t{1} << m.size();
  for (std::uint64_t bits = 0; bits < n; ++bits) {
    WorldSet sub(set.universe());
    for (std::size_t i = 0; i < m.size(); ++i)
      if ((bits >> i) & 1u) sub.set(m[i]);
    f(static_cast<const WorldSet&>(sub));
  }
}

}  // namespace inqml

#endif  // INQML_BITSET_HPP
