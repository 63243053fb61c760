#pragma once

#include <mutex>
#include <vector>

#include "gwt/theory.hpp"

namespace gwt {

/// Admissibility policies for parallel pairs. The default reads "the couple
/// does not belong to the image" as: not both components bare.
enum class Policy : unsigned char { PairNotBare, BothNotBare, AllParallel };

/// A registered lifting: the formal cell added for an admissible parallel
/// pair. Stage-stratified: the defining pair references only cells of
/// strictly smaller stage.
struct CohCell {
  std::string key; // canonical serialization of the defining pair
  std::string id;  // short stable hash of the key
  Family family = Family::Cod;
  int dim = 0;   // m+1 where the pair lives at dimension m
  int stage = 0; // max(stage f, stage g) + 1
  Tree arity;
  OperationRef f, g;
};

using CohCellPtr = std::shared_ptr<const CohCell>;

/// The only mutable state of the kernel. Reads may be concurrent;
/// requestLift is atomic and idempotent.
class Registry {
public:
  explicit Registry(GlobeContext ctx, Policy policy = Policy::PairNotBare)
      : ctx_(ctx), policy_(policy) {}

  const GlobeContext& ctx() const { return ctx_; }
  Policy policy() const { return policy_; }

  bool isAdmissible(const OperationRef& f, const OperationRef& g) const;

  /// Returns the unique cell for the canonical key, creating it on first
  /// request. Errors: NotParallel, NotAdmissible.
  CohCellPtr requestLift(const OperationRef& f, const OperationRef& g);

  CohCellPtr byKey(const std::string& key) const;
  CohCellPtr byId(const std::string& id) const;
  std::vector<CohCellPtr> all() const; // sorted by (stage, key)
  size_t size() const;

private:
  GlobeContext ctx_;
  Policy policy_;
  mutable std::mutex mu_;
  std::map<std::string, CohCellPtr> cells_;
};

/// Canonical key of a (would-be) lifting of (f, g).
std::string liftKey(const OperationRef& f, const OperationRef& g);

/// Compact canonical form of a tree's realization (collides exactly for
/// realization-equal trees).
std::string realizationKey(const Tree& t);

/// disc(dim) -> arity with top CohApp(cell, identity); satisfies the lifting
/// law: precomposeBoundary(liftArrow(c), S/T) = c.pair.
OperationRef liftArrow(const GlobeContext& ctx, const CohCellPtr& cell);

struct EnumBounds {
  int maxTreeCols = 1;
  int maxDim = 1;
  int maxTermSize = 4;
  int stage = 0;
};

struct AdmissiblePair {
  std::string key;
  Tree tree;
  OperationRef f, g;
};

/// All admissible pairs within the bounds whose stage equals bounds.stage,
/// deduplicated by canonical key, deterministically ordered. Stage-s pairs
/// may apply cells already in the registry (stage <= s).
std::vector<AdmissiblePair> enumerateAdmissible(const Registry& reg, const EnumBounds& bounds);

/// All well-typed terms over `host` with the given component/dimension and
/// size bound, applying registry cells up to maxStage. Sorted canonically.
std::vector<Term> enumerateTerms(const Registry& reg, const Tree& host, int component, int dim,
                                 int maxSize, int maxStage);

enum class ModelEq : unsigned char { Equal, ForcedByLift, Unknown };

/// Dimension-p model-equality reasoning; conservative tri-state.
ModelEq equalInDimModels(const Registry& reg, int p, const OperationRef& f, const OperationRef& g);

std::string modelEqName(ModelEq v);

/// JSON dump of all cells: [{id, family, dim, stage, arity, pair:{f,g}}],
/// loadable into a fresh registry (stage order) with identical keys.
std::string dumpRegistryJson(const Registry& reg);
void loadRegistryJson(Registry& reg, const std::string& json);

} // namespace gwt
