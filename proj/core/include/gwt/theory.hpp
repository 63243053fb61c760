#pragma once

#include "gwt/term.hpp"

namespace gwt {

/// A morphism of the theory: a cell-to-term assignment from the realization
/// of `dom` into terms over `cod`, dimension/component preserving and
/// boundary compatible.
struct Arrow {
  Tree dom;
  Tree cod;
  std::map<CellRef, Term> assign;

  Term at(const CellRef& c) const;
};

/// Errors: BoundaryMismatch, ComponentMismatch, DimMismatch.
Arrow makeArrow(Tree dom, Tree cod, std::map<CellRef, Term> assign);

Arrow identityArrow(const Tree& t);

/// Kleisli composition by substitution; cod(f) and dom(sigma) must be the
/// same table. Errors: TreeMismatch.
Arrow compose(const Arrow& sigma, const Arrow& f);

Term substitute(const Arrow& sigma, const Term& u);

/// A p-operation: an arrow out of a disc tree [1(p)] or [2(p)].
struct OperationRef {
  Family family = Family::Cod; // Dom or Cod
  int dim = 0;
  Arrow arrow;

  Term top() const;
};

/// Builds the disc-domain operation with the given top term; the boundary
/// assignments are derived from iterated sources/targets.
OperationRef makeOp(const GlobeContext& ctx, Family family, int m, const Tree& cod, const Term& top);

/// The composition operation nu^m_p: disc(m) -> [D(m), D(m); D(p)], top
/// mapped to comp{m,p} of the two column tops (outer column first).
OperationRef compOp(const GlobeContext& ctx, int component, int m, int p);

/// F_m / G_m (the paper's H_m): 2(m) -> [f^m] resp. [g^m].
OperationRef transportOp(const GlobeContext& ctx, TransportSeries s, int m);

/// The transformation-cell operation: 2(n-1) -> [xi].
OperationRef xiOp(const GlobeContext& ctx);

/// Pairing along a level-p glue: the result acts as f on the leading column
/// block and as g on the trailing one, gluing both domain and codomain.
/// Errors: GlueNotBelow (none or ambiguous glue), BoundaryDisagreement.
Arrow starArrows(const Arrow& f, int p, const Arrow& g);

/// Bare inclusion of a contiguous column block into the containing tree.
Arrow treeInclusion(const Tree& whole, int startCol, const Tree& block);

/// Parallelism of two operations: same disc family and dimension (>= 1),
/// realization-equal codomains, equal boundary terms. Never throws.
bool isParallel(const OperationRef& f, const OperationRef& g);

/// K . s^q_{q-1} resp. K . t^q_{q-1}: one dimension lower, same codomain.
/// Errors: ZeroDim.
OperationRef precomposeBoundary(const OperationRef& k, HomClass which);

/// True iff every assigned term is a bare generator.
bool isBare(const Arrow& f);

/// Re-hosts an arrow along the canonical isomorphism to a realization-equal
/// codomain tree. Errors: TreeMismatch.
Arrow coerceArrow(const Arrow& f, const Tree& newCod);
OperationRef coerceOp(const OperationRef& f, const Tree& newCod);

/// Completes a partial assignment (e.g. column tops only) by boundary
/// closure: sigma(s(c)) := source(sigma(c)) and dually, until total.
/// Errors: SemanticError (underdetermined or conflicting).
std::map<CellRef, Term> deriveAssignment(const Tree& dom, std::map<CellRef, Term> partial);

/// Paper-style display, e.g. "(G(a) o^1_0 xi(x))".
std::string printArrow(const Arrow& a, const CohNameResolver& names = nullptr);

} // namespace gwt
