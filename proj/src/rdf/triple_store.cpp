#include "ontokms/rdf/triple_store.hpp"

#include <tuple>

namespace ontokms::rdf {

namespace {

using Prefix = TripleStore::Prefix;

// Three-way comparison of a key tuple against a prefix; unbound prefix
// components compare equal so equal_range yields the whole prefix block.
int compare_prefix(const Term& a, const Term& b, const Term& c,
                   const Prefix& prefix) {
  const Term* keys[3] = {&a, &b, &c};
  const Term* bound[3] = {prefix.first, prefix.second, prefix.third};
  for (int i = 0; i < 3; ++i) {
    if (bound[i] == nullptr) return 0;
    const auto cmp = *keys[i] <=> *bound[i];
    if (cmp < 0) return -1;
    if (cmp > 0) return 1;
  }
  return 0;
}

bool matches(const Triple& t, const std::optional<Term>& s,
             const std::optional<Term>& p, const std::optional<Term>& o) {
  return (!s || t.subject == *s) && (!p || t.predicate == *p) &&
         (!o || t.object == *o);
}

}  // namespace

bool TripleStore::SpoLess::operator()(const Triple& a, const Prefix& b) const {
  return compare_prefix(a.subject, a.predicate, a.object, b) < 0;
}
bool TripleStore::SpoLess::operator()(const Prefix& a, const Triple& b) const {
  return compare_prefix(b.subject, b.predicate, b.object, a) > 0;
}

bool TripleStore::PosLess::operator()(const Triple* a, const Triple* b) const {
  return std::tie(a->predicate, a->object, a->subject) <
         std::tie(b->predicate, b->object, b->subject);
}
bool TripleStore::PosLess::operator()(const Triple* a, const Prefix& b) const {
  return compare_prefix(a->predicate, a->object, a->subject, b) < 0;
}
bool TripleStore::PosLess::operator()(const Prefix& a, const Triple* b) const {
  return compare_prefix(b->predicate, b->object, b->subject, a) > 0;
}

bool TripleStore::OspLess::operator()(const Triple* a, const Triple* b) const {
  return std::tie(a->object, a->subject, a->predicate) <
         std::tie(b->object, b->subject, b->predicate);
}
bool TripleStore::OspLess::operator()(const Triple* a, const Prefix& b) const {
  return compare_prefix(a->object, a->subject, a->predicate, b) < 0;
}
bool TripleStore::OspLess::operator()(const Prefix& a, const Triple* b) const {
  return compare_prefix(b->object, b->subject, b->predicate, a) > 0;
}

TripleStore::TripleStore(const TripleStore& other)
    : spo_(other.spo_), generation_(other.generation_) {
  rebuild_secondary();
}

TripleStore& TripleStore::operator=(const TripleStore& other) {
  if (this != &other) {
    spo_ = other.spo_;
    generation_ = other.generation_;
    rebuild_secondary();
  }
  return *this;
}

void TripleStore::rebuild_secondary() {
  pos_.clear();
  osp_.clear();
  for (const Triple& t : spo_) {
    pos_.insert(&t);
    osp_.insert(&t);
  }
}

bool TripleStore::insert(const Triple& t) {
  check_triple(t);
  auto [it, inserted] = spo_.insert(t);
  if (!inserted) return false;
  pos_.insert(&*it);
  osp_.insert(&*it);
  ++generation_;
  return true;
}

bool TripleStore::remove(const Triple& t) {
  auto it = spo_.find(t);
  if (it == spo_.end()) return false;
  pos_.erase(&*it);
  osp_.erase(&*it);
  spo_.erase(it);
  ++generation_;
  return true;
}

void TripleStore::clear() {
  if (spo_.empty()) return;
  pos_.clear();
  osp_.clear();
  spo_.clear();
  ++generation_;
}

template <typename Visitor>
void TripleStore::visit(const std::optional<Term>& s,
                        const std::optional<Term>& p,
                        const std::optional<Term>& o,
                        Visitor&& visitor) const {
  auto ptr = [](const std::optional<Term>& t) -> const Term* {
    return t ? &*t : nullptr;
  };
  if (s) {
    // Only a contiguous bound prefix narrows the range; the rest is filtered.
    Prefix prefix{ptr(s), p ? ptr(p) : nullptr, p && o ? ptr(o) : nullptr};
    auto [lo, hi] = spo_.equal_range(prefix);
    for (auto it = lo; it != hi; ++it) {
      if (matches(*it, s, p, o)) visitor(*it);
    }
  } else if (p) {
    Prefix prefix{ptr(p), ptr(o), nullptr};
    auto [lo, hi] = pos_.equal_range(prefix);
    for (auto it = lo; it != hi; ++it) {
      if (matches(**it, s, p, o)) visitor(**it);
    }
  } else if (o) {
    Prefix prefix{ptr(o), nullptr, nullptr};
    auto [lo, hi] = osp_.equal_range(prefix);
    for (auto it = lo; it != hi; ++it) visitor(**it);
  } else {
    for (const Triple& t : spo_) visitor(t);
  }
}

std::vector<Triple> TripleStore::match(const std::optional<Term>& s,
                                       const std::optional<Term>& p,
                                       const std::optional<Term>& o) const {
  std::vector<Triple> out;
  visit(s, p, o, [&](const Triple& t) { out.push_back(t); });
  return out;
}

std::size_t TripleStore::count(const std::optional<Term>& s,
                               const std::optional<Term>& p,
                               const std::optional<Term>& o) const {
  std::size_t n = 0;
  visit(s, p, o, [&](const Triple&) { ++n; });
  return n;
}

std::vector<Triple> TripleStore::scan(IndexOrder order) const {
  std::vector<Triple> out;
  out.reserve(spo_.size());
  switch (order) {
    case IndexOrder::Spo:
      out.assign(spo_.begin(), spo_.end());
      break;
    case IndexOrder::Pos:
      for (const Triple* t : pos_) out.push_back(*t);
      break;
    case IndexOrder::Osp:
      for (const Triple* t : osp_) out.push_back(*t);
      break;
  }
  return out;
}

}  // namespace ontokms::rdf
