#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace patrolsim {

struct AssumedEntry {
  std::int64_t idleness = 0;
  std::int64_t refresh = 0;

  friend bool operator==(const AssumedEntry&, const AssumedEntry&) = default;
};

// Per-robot assumed-idleness table, one entry per grid cell.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  KnowledgeBase(int owner, int cell_count);

  int owner() const { return owner_; }
  int size() const { return static_cast<int>(entries_.size()); }
  const AssumedEntry& entry(int k) const;
  std::span<const AssumedEntry> entries() const { return entries_; }

  // One tick of unobserved aging: idleness grows, refresh stays put.
  void advance();

  // Freshest-wins per cell: larger refresh, then smaller idleness, then
  // keep own.
  void merge_from(const KnowledgeBase& incoming);

  // Grounds entry k as visited (or claimed) at t. Returns false and leaves
  // the entry alone when t is older than the entry's refresh time.
  bool mark_visited(int k, std::int64_t t);

 private:
  int owner_ = -1;
  std::vector<AssumedEntry> entries_;
};

}  // namespace patrolsim
