#pragma once

#include <optional>

#include "gwt/term.hpp"

namespace gwt {

/// Side tag of a chain position in the strict semantics.
enum class Side : unsigned char { Plain, FSide, GSide };

/// Normal form in the strictification fragment: the value of a term in the
/// free strict transformation over a linear chain.
/// dim 0: a chain position with a side tag.
/// dim 1: an interval lo..hi with side tags at both ends; crossing means
///        the cell passes through the transformation (F-side to G-side).
/// dim 2: Identity on the dim-1 value of its boundary.
struct StrictNF {
  int dim = 0;
  int lo = 0;
  int hi = 0;
  Side loSide = Side::Plain;
  Side hiSide = Side::Plain;

  bool crossing() const { return loSide == Side::FSide && hiSide == Side::GSide; }
  bool operator==(const StrictNF&) const = default;

  std::string str() const;
};

/// Chain data of a fragment tree.
struct FragmentChain {
  int component = 1;
  int points = 0;
  /// chain position of each 0-cell id
  std::vector<int> posOfCell;
  /// position of the tree's single mid column point, if any
  std::optional<int> markPos;
};

/// Checks the tree against the supported fragment: n = 2, realization a
/// linear chain of 1-cells in one component, at most one mid column.
/// Errors: OutsideFragment with a precise reason.
FragmentChain fragmentCheck(const Tree& t);

/// Evaluates the term in the free strict transformation over the chain.
/// Rewrite-invariant: strict functoriality of F/G, strict naturality of the
/// transformation cell, re-association, coherence cells to identities.
/// Errors: OutsideFragment.
StrictNF strictNormalize(const Tree& host, const Term& u);

/// Normal-form equality; hosts must be realization-equal when they differ.
bool strictEqual(const Tree& host, const Term& u, const Term& v);
bool strictEqual(const Tree& hostU, const Term& u, const Tree& hostV, const Term& v);

} // namespace gwt
