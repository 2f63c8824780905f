#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "ontokms/rdf/term.hpp"

namespace ontokms::rdf {

enum class IndexOrder { Spo, Pos, Osp };

/// In-memory triple set kept under three sorted access paths.
///
/// The spo index owns the triples; pos and osp hold pointers into its nodes,
/// so all three always describe the same set. The store is not internally
/// synchronized: const member functions may run concurrently, mutations need
/// exclusive access (the service layer holds the writer lock).
class TripleStore {
 public:
  TripleStore() = default;
  TripleStore(const TripleStore& other);
  TripleStore& operator=(const TripleStore& other);
  TripleStore(TripleStore&&) noexcept = default;
  TripleStore& operator=(TripleStore&&) noexcept = default;

  /// Returns true iff `t` was not present. Throws Error(Validation) when the
  /// subject or predicate is not an IRI.
  bool insert(const Triple& t);
  /// Returns true iff `t` was present.
  bool remove(const Triple& t);
  void clear();

  bool contains(const Triple& t) const { return spo_.count(t) != 0; }
  std::size_t size() const noexcept { return spo_.size(); }
  bool empty() const noexcept { return spo_.empty(); }
  /// Incremented on every successful mutation.
  std::uint64_t generation() const noexcept { return generation_; }

  /// Triples matching every bound position, in the order of the index chosen
  /// for the pattern: s bound -> spo, else p bound -> pos, else o bound -> osp,
  /// nothing bound -> spo.
  std::vector<Triple> match(const std::optional<Term>& s,
                            const std::optional<Term>& p,
                            const std::optional<Term>& o) const;

  /// Number of triples `match` would return, without copying them.
  std::size_t count(const std::optional<Term>& s, const std::optional<Term>& p,
                    const std::optional<Term>& o) const;

  /// Full enumeration of one index; used to check index agreement.
  std::vector<Triple> scan(IndexOrder order) const;

  /// Up to three prefix components in index order; nullptr = unbound.
  struct Prefix {
    const Term* first = nullptr;
    const Term* second = nullptr;
    const Term* third = nullptr;
  };

  struct SpoLess {
    using is_transparent = void;
    bool operator()(const Triple& a, const Triple& b) const { return a < b; }
    bool operator()(const Triple& a, const Prefix& b) const;
    bool operator()(const Prefix& a, const Triple& b) const;
  };
  using TripleSet = std::set<Triple, SpoLess>;

  /// Every triple in spo order.
  const TripleSet& triples() const noexcept { return spo_; }

  struct PosLess {
    using is_transparent = void;
    bool operator()(const Triple* a, const Triple* b) const;
    bool operator()(const Triple* a, const Prefix& b) const;
    bool operator()(const Prefix& a, const Triple* b) const;
  };
  struct OspLess {
    using is_transparent = void;
    bool operator()(const Triple* a, const Triple* b) const;
    bool operator()(const Triple* a, const Prefix& b) const;
    bool operator()(const Prefix& a, const Triple* b) const;
  };

 private:
  template <typename Visitor>
  void visit(const std::optional<Term>& s, const std::optional<Term>& p,
             const std::optional<Term>& o, Visitor&& visitor) const;

  void rebuild_secondary();

  TripleSet spo_;
  std::set<const Triple*, PosLess> pos_;
  std::set<const Triple*, OspLess> osp_;
  std::uint64_t generation_ = 0;
};

}  // namespace ontokms::rdf
