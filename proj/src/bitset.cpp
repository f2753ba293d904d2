#include "inqml/bitset.hpp"

#include <bit>

namespace inqml {

WorldSet WorldSet::full(std::size_t universe) {
  WorldSet s(universe);
  for (std::size_t i = 0; i < universe; ++i) s.set(i);
  return s;
}

WorldSet WorldSet::of(std::size_t universe, std::initializer_list<std::size_t> members) {
  WorldSet s(universe);
  for (std::size_t m : members) s.set(m);
  return s;
}

WorldSet WorldSet::of(std::size_t universe, const std::vector<std::size_t>& members) {
  WorldSet s(universe);
  for (std::size_t m : members) s.set(m);
  return s;
}

WorldSet WorldSet::from_mask(std::size_t universe, std::uint64_t mask) {
  WorldSet s(universe);
  if (!s.words_.empty()) {
    if (universe < 64) mask &= (std::uint64_t{1} << universe) - 1;
    s.words_[0] = mask;
  }
  return s;
}

std::size_t WorldSet::count() const noexcept {
  std::size_t c = 0;
  for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool WorldSet::empty() const noexcept {
  for (std::uint64_t w : words_)
    if (w != 0) return false;
  return true;
}

bool WorldSet::is_subset_of(const WorldSet& other) const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

bool WorldSet::intersects(const WorldSet& other) const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & other.words_[i]) return true;
  return false;
}

std::vector<std::size_t> WorldSet::members() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for_each([&](std::size_t i) { out.push_back(i); });
  return out;
}

std::size_t WorldSet::hash() const noexcept {
  std::size_t h = universe_ * 0x9e3779b97f4a7c15ULL;
  for (std::uint64_t w : words_) h = (h ^ w) * 0x100000001b3ULL + (h >> 29);
  return h;
}

std::size_t WorldSet::next(std::size_t from) const noexcept {
  if (from >= universe_) return universe_;
  std::size_t wi = from >> 6;
  std::uint64_t bits = words_[wi] & (~std::uint64_t{0} << (from & 63));
  while (true) {
    if (bits != 0) return wi * 64 + static_cast<std::size_t>(std::countr_zero(bits));
    if (++wi >= words_.size()) return universe_;
    bits = words_[wi];
  }
}

WorldSet& WorldSet::operator|=(const WorldSet& o) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

WorldSet& WorldSet::operator&=(const WorldSet& o) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

WorldSet& WorldSet::operator-=(const WorldSet& o) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
  return *this;
}

bool operator<(const WorldSet& a, const WorldSet& b) noexcept {
  const std::size_t ca = a.count(), cb = b.count();
  if (ca != cb) return ca < cb;
  std::size_t i = a.first(), j = b.first();
  while (i < a.universe() && j < b.universe()) {
    if (i != j) return i < j;
    i = a.next(i + 1);
    j = b.next(j + 1);
  }
  return a.universe() < b.universe();
}

}  // namespace inqml
