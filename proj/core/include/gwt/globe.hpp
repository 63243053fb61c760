#pragma once

#include <compare>
#include <set>
#include <string>

#include "gwt/error.hpp"

namespace gwt {

/// Index of the globe category G_n. n = 0 is the plain one-sorted case.
struct GlobeContext {
  int n = 0;
};

/// Object families of G_n. Alpha/Beta carry their dimension k in
/// GlobeObject::dim; Xi always sits at dimension n-1.
enum class Family : unsigned char { Dom, Cod, FSer, GSer, Alpha, Beta, Xi };

struct GlobeObject {
  Family family = Family::Dom;
  int dim = 0;

  auto operator<=>(const GlobeObject&) const = default;
};

bool legalObject(const GlobeContext& ctx, const GlobeObject& o) noexcept;

/// Builds the canonical object, validating family/dim against ctx.n.
/// Errors: IllegalFamily, IllegalDim.
GlobeObject makeObject(const GlobeContext& ctx, Family family, int dim);

/// The unique Xi object of G_n (n >= 2), at dimension n-1.
GlobeObject xiObject(const GlobeContext& ctx);

/// Which of the two globular-set components the object realizes into:
/// Cod-chain objects live in component 2, everything else in component 1.
int clusterComponent(const GlobeObject& o) noexcept;

/// Dimension of the underlying disc: dim for the four disc chains, 0 for
/// Alpha/Beta/Xi (their arity is a single point).
int discDim(const GlobeObject& o) noexcept;

/// a <= b in the arrow-generated order of G_n (reflexive closure).
bool leq(const GlobeContext& ctx, const GlobeObject& a, const GlobeObject& b);

enum class HomClass : unsigned char { S, T, Id };

/// Classes of composite arrows a -> b after the globular equations collapse
/// them: {Id} on the diagonal, a subset of {S,T} otherwise.
std::set<HomClass> homClasses(const GlobeContext& ctx, const GlobeObject& a, const GlobeObject& b);

/// Object maps of the coglobular filtration G_{n-1} -> G_n.
/// filtMapS is the cosource-side map, filtMapT the cotarget-side one.
/// `level` is the target index n (so inputs are objects of G_{level-1}).
GlobeObject filtMapS(int level, const GlobeObject& o);
GlobeObject filtMapT(int level, const GlobeObject& o);

/// Short rendering: 1(2), 2(0), f^1, g^0, alpha_1, beta_2, xi.
std::string toText(const GlobeObject& o);
/// Inverse of toText. Errors: SyntaxError, IllegalFamily, IllegalDim.
GlobeObject objectFromText(const GlobeContext& ctx, const std::string& s);
/// Paper-style rendering: f^1(1(1)), xi_1(1(0)), alpha_1(1(0)).
std::string toTextFull(const GlobeContext& ctx, const GlobeObject& o);

} // namespace gwt
