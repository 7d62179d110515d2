#include "patrolsim/knowledge.hpp"

#include <stdexcept>

namespace patrolsim {

KnowledgeBase::KnowledgeBase(int owner, int cell_count)
    : owner_(owner), entries_(static_cast<std::size_t>(cell_count)) {
  if (cell_count <= 0) throw std::invalid_argument("cell_count must be positive");
}

const AssumedEntry& KnowledgeBase::entry(int k) const {
  if (k < 0 || k >= size()) throw std::out_of_range("unknown grid index");
  return entries_[k];
}

void KnowledgeBase::advance() {
  for (auto& e : entries_) ++e.idleness;
}

void KnowledgeBase::merge_from(const KnowledgeBase& incoming) {
  if (incoming.size() != size())
    throw std::logic_error("knowledge tables differ in cell count");
  for (int k = 0; k < size(); ++k) {
    const AssumedEntry& theirs = incoming.entries_[k];
    AssumedEntry& ours = entries_[k];
    if (theirs.refresh > ours.refresh ||
        (theirs.refresh == ours.refresh && theirs.idleness < ours.idleness)) {
      ours = theirs;
    }
  }
}

bool KnowledgeBase::mark_visited(int k, std::int64_t t) {
  if (k < 0 || k >= size()) throw std::out_of_range("unknown grid index");
  if (t < entries_[k].refresh) return false;
  entries_[k] = AssumedEntry{0, t};
  return true;
}

}  // namespace patrolsim
