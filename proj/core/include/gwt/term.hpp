#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>

#include "gwt/pasting.hpp"

namespace gwt {

struct CohCell; // coherator.hpp

enum class TermKind : unsigned char { Gen, Comp, Transport, Mid, CohApp };
enum class TransportSeries : unsigned char { F, G };

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

/// Immutable term of the free (n,infinity)-magma over a tree's cells,
/// extended by coherence-cell application. Well-typedness is checked at
/// construction; dimension and component are cached.
struct TermNode {
  TermKind kind = TermKind::Gen;
  int n = 0;         // context level (needed for mid-cell boundaries)
  int dim = 0;
  int component = 1;

  CellRef cell;                       // Gen
  std::shared_ptr<const Realization> genHost; // Gen: realization (for boundaries)
  int level = 0;                      // Comp: p; Mid: k for Alpha/Beta
  Term after, before;                 // Comp
  TransportSeries series = TransportSeries::F; // Transport
  Term arg;                           // Transport / Mid argument
  Family midFamily = Family::Xi;      // Mid: Alpha, Beta or Xi
  std::shared_ptr<const CohCell> coh; // CohApp
  std::map<CellRef, Term> subst;      // CohApp: total assignment on arity cells
  Tree host;                          // CohApp: codomain tree of the substitution

  mutable std::string serialCache;
  mutable int stageCache = -1;
};

Term mkGen(const GlobeContext& ctx, std::shared_ptr<const Realization> host, const CellRef& c);
Term mkGen(const Tree& host, const CellRef& c);

/// Errors: DimMismatch, ComponentMismatch, BoundaryMismatch (the p-boundary
/// matching condition is enforced here, never left latent).
Term mkComp(const GlobeContext& ctx, int m, int p, Term after, Term before);

/// Errors: IllegalFamily (G needs n >= 2), ComponentMismatch.
Term mkTransport(const GlobeContext& ctx, TransportSeries s, Term u);

/// midFamily in {Alpha, Beta, Xi}; k is the Alpha/Beta level (ignored for Xi).
/// The argument must be a component-1 term of dimension 0.
Term mkMid(const GlobeContext& ctx, Family midFamily, int k, Term x);

/// Application of a registered coherence cell along a substitution into
/// `host`. The assignment must be total on the cells of the cell's arity
/// realization, dimension/component preserving and boundary compatible.
Term mkCohApp(std::shared_ptr<const CohCell> coh, std::map<CellRef, Term> assign, Tree host);

/// Errors: ZeroDim.
Term source(const Term& t);
Term target(const Term& t);

/// Iterated (source, target) at dimension q < dim(t).
std::pair<Term, Term> boundaryIter(const Term& t, int q);

/// Gen cells remapped through the assignment, homomorphic elsewhere;
/// CohApp substitutions are composed and stay flattened.
Term substituteRaw(const std::map<CellRef, Term>& assign, const Tree& cod, const Term& u);

/// Structural equality (CohApp compared by cell key and assignment).
bool termEqual(const Term& u, const Term& v);

/// 0 for coherence-free terms, else the maximal stage of any applied cell.
int stage(const Term& t);

int termSize(const Term& t);

/// True iff the term is a bare generator.
bool isGenTerm(const Term& t);

/// Throws BoundaryMismatch if some generator is not a cell of r.
void validateOver(const Term& t, const Realization& r);

/// Canonical serialization; injective on terms of a fixed context.
const std::string& serCanonical(const Term& t);

using CohNameResolver = std::function<std::string(const CohCell&)>;

/// Concrete syntax: gen(x), comp{1,0}(F(a), xi(x)), coh[name]{a: gen(b)}.
std::string printTerm(const Term& t, const CohNameResolver& names = nullptr);

/// Rewrites CohApp host trees to realization-equal ones; generators are
/// unchanged (canonical cell numbering is shared).
Term rehostTerm(const Term& t, const Tree& newHost);

} // namespace gwt
