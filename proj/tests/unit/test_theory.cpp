#include "doctest.h"
#include "gwt/coherator.hpp"
#include "termgen.hpp"

using namespace gwt;

namespace {

GlobeContext n2{2};
GlobeObject one(int d) { return GlobeObject{Family::Dom, d}; }
GlobeObject two(int d) { return GlobeObject{Family::Cod, d}; }
GlobeObject f(int d) { return GlobeObject{Family::FSer, d}; }
GlobeObject g(int d) { return GlobeObject{Family::GSer, d}; }

Tree htTree() { return validateTree(n2, {g(1), xiObject(n2)}, {g(0)}); }

} // namespace

TEST_CASE("identityArrow assigns bare generators") {
  for (const Tree& t : {discTree(GlobeContext{0}, one(0)), discTree(n2, two(1)), htTree()}) {
    Arrow id = identityArrow(t);
    for (const auto& [c, img] : id.assign) CHECK(isGenTerm(img));
    CHECK(isBare(id));
  }
}

TEST_CASE("makeOp derives disc boundaries; bad assignments are rejected") {
  OperationRef tau = xiOp(n2);
  CHECK(tau.dim == 1);
  CHECK(tau.arrow.cod.table() == "[xi]");
  CHECK(printTerm(tau.top()) == "xi(gen(x))");
  CHECK_FALSE(isBare(tau.arrow));

  // a 1-cell sent to a 0-dimensional term
  Tree d1 = discTree(n2, two(1));
  Tree dxi = discTree(n2, xiObject(n2));
  std::map<CellRef, Term> bad{{CellRef{2, 1, 0}, mkTransport(n2, TransportSeries::F, mkGen(dxi, CellRef{1, 0, 0}))},
                              {CellRef{2, 0, 0}, mkTransport(n2, TransportSeries::F, mkGen(dxi, CellRef{1, 0, 0}))},
                              {CellRef{2, 0, 1}, mkTransport(n2, TransportSeries::G, mkGen(dxi, CellRef{1, 0, 0}))}};
  bad[CellRef{2, 1, 0}] = bad[CellRef{2, 0, 0}];
  CHECK_THROWS_AS(makeArrow(d1, dxi, bad), Error);
}

TEST_CASE("compOp orientation: before is the source-side column") {
  OperationRef nu = compOp(n2, 2, 1, 0);
  CHECK(nu.arrow.cod.table() == "[2(1), 2(1); 2(0)]");
  Term top = nu.top();
  REQUIRE(top->kind == TermKind::Comp);
  CHECK(top->after->cell == CellRef{2, 1, 0});
  CHECK(top->before->cell == CellRef{2, 1, 1});
  // the source of the composite is the source of the trailing column's top
  OperationRef s = precomposeBoundary(nu, HomClass::S);
  CHECK(termEqual(s.top(), mkGen(nu.arrow.cod, CellRef{2, 0, 2})));

  CHECK(compOp(n2, 2, 2, 1).arrow.cod.table() == "[2(2), 2(2); 2(1)]");
  CHECK(compOp(n2, 2, 2, 0).arrow.cod.table() == "[2(2), 2(2); 2(0)]");
  CHECK_THROWS_AS(compOp(n2, 2, 1, 1), Error);
}

TEST_CASE("transportOp and xiOp") {
  OperationRef f1 = transportOp(n2, TransportSeries::F, 1);
  CHECK(f1.arrow.cod.table() == "[f^1]");
  CHECK(printTerm(f1.top()) == "F(gen(a))");
  OperationRef h1 = transportOp(n2, TransportSeries::G, 1);
  CHECK(h1.arrow.cod.table() == "[g^1]");
  CHECK(printTerm(h1.top()) == "G(gen(a))");
  CHECK(transportOp(n2, TransportSeries::F, 0).arrow.cod.table() == "[f^0]");
  CHECK_THROWS_AS(transportOp(GlobeContext{1}, TransportSeries::G, 1), Error);

  CHECK(xiOp(GlobeContext{3}).dim == 2);
  CHECK_THROWS_AS(xiOp(GlobeContext{1}), Error);
}

TEST_CASE("starArrows pairs blockwise with agreeing boundary") {
  OperationRef h1 = transportOp(n2, TransportSeries::G, 1);
  OperationRef tau = xiOp(n2);
  Arrow star = starArrows(h1.arrow, 0, tau.arrow);
  CHECK(star.dom.table() == "[2(1), 2(1); 2(0)]");
  CHECK(star.cod.table() == "[g^1, xi; g^0]");

  // (H_1 * tau) . nu^1_0 is the source side of the omega pair
  OperationRef nu = compOp(n2, 2, 1, 0);
  Arrow composite = compose(star, nu.arrow);
  Tree ht = htTree();
  Term expect = mkComp(n2, 1, 0, mkTransport(n2, TransportSeries::G, mkGen(ht, CellRef{1, 1, 0})),
                       mkMid(n2, Family::Xi, 1, mkGen(ht, CellRef{1, 0, 0})));
  CHECK(termEqual(composite.at(CellRef{2, 1, 0}), expect));

  // identity star identity is the identity on the glued tree
  Tree d1 = discTree(n2, two(1));
  Arrow idStar = starArrows(identityArrow(d1), 0, identityArrow(d1));
  Arrow glued = identityArrow(validateTree(n2, {two(1), two(1)}, {two(0)}));
  CHECK(idStar.dom == glued.dom);
  for (const auto& [c, img] : glued.assign) CHECK(termEqual(idStar.at(c), img));

  // no common glue below g^1 and f^1
  OperationRef fop = transportOp(n2, TransportSeries::F, 1);
  CHECK_THROWS_AS(starArrows(h1.arrow, 0, fop.arrow), Error);
}

TEST_CASE("compose is associative with identity neutral") {
  OperationRef h1 = transportOp(n2, TransportSeries::G, 1);
  OperationRef tau = xiOp(n2);
  Arrow star = starArrows(h1.arrow, 0, tau.arrow);
  OperationRef nu = compOp(n2, 2, 1, 0);
  Arrow f = nu.arrow;
  Arrow viaId = compose(identityArrow(star.cod), star);
  for (const auto& [c, img] : star.assign) CHECK(termEqual(viaId.at(c), img));
  Arrow left = compose(compose(star, identityArrow(star.dom)), f);
  Arrow right = compose(star, compose(identityArrow(star.dom), f));
  for (const auto& [c, img] : left.assign) CHECK(termEqual(right.at(c), img));

  // tree-shape mismatch is rejected
  CHECK_THROWS_AS(compose(f, f), Error);
}

TEST_CASE("isParallel compares boundary terms over realization-equal arities") {
  OperationRef h1 = transportOp(n2, TransportSeries::G, 1);
  CHECK(isParallel(h1, h1));

  OperationRef nu = compOp(n2, 2, 1, 0);
  OperationRef tau = xiOp(n2);
  OperationRef f1 = transportOp(n2, TransportSeries::F, 1);
  Arrow lhs = compose(starArrows(h1.arrow, 0, tau.arrow), nu.arrow);
  Arrow rhs = compose(starArrows(tau.arrow, 0, f1.arrow), nu.arrow);
  OperationRef lhsOp{Family::Cod, 1, lhs};
  OperationRef rhsOp{Family::Cod, 1, rhs};
  CHECK(isParallel(lhsOp, rhsOp)); // codomains [g^1,xi;g^0] vs [xi,f^1;f^0]
  CHECK(isParallel(rhsOp, lhsOp)); // symmetric
  CHECK(isParallel(lhsOp, lhsOp)); // reflexive

  // realization-equal codomains but distinct boundaries
  CHECK_FALSE(isParallel(f1, h1));
  // 0-operations have no boundary discs
  CHECK_FALSE(isParallel(transportOp(n2, TransportSeries::F, 0), transportOp(n2, TransportSeries::F, 0)));
}

TEST_CASE("precomposeBoundary") {
  OperationRef tau = xiOp(n2);
  OperationRef s = precomposeBoundary(tau, HomClass::S);
  CHECK(s.dim == 0);
  CHECK(printTerm(s.top()) == "F(gen(x))");
  OperationRef t = precomposeBoundary(tau, HomClass::T);
  CHECK(printTerm(t.top()) == "G(gen(x))");
  CHECK_THROWS_AS(precomposeBoundary(s, HomClass::S), Error);

  // parallel one dimension lower for dim >= 2 operations
  std::mt19937 rng(3);
  Tree stack = validateTree(n2, {two(2), two(2)}, {two(1)});
  for (int i = 0; i < 50; ++i) {
    Term u = testgen::randomTerm(rng, stack, 2, 2, 3);
    if (!u || u->dim != 2) continue;
    OperationRef k = makeOp(n2, Family::Cod, 2, stack, u);
    CHECK(isParallel(precomposeBoundary(k, HomClass::S), precomposeBoundary(k, HomClass::T)));
  }
}

TEST_CASE("isBare and inclusions") {
  Tree ht = htTree();
  CHECK(isBare(identityArrow(ht)));
  CHECK_FALSE(isBare(xiOp(n2).arrow));
  Tree whole = validateTree(n2, {g(1), g(1), xiObject(n2)}, {g(0), g(0)});
  Arrow inc = treeInclusion(whole, 1, ht);
  CHECK(isBare(inc));
  // bare arrows stay bare under composition
  Arrow inc2 = compose(identityArrow(whole), inc);
  CHECK(isBare(inc2));
}

TEST_CASE("arrow pretty printing mirrors composite notation") {
  OperationRef tau = xiOp(n2);
  OperationRef h1 = transportOp(n2, TransportSeries::G, 1);
  OperationRef nu = compOp(n2, 2, 1, 0);
  Arrow composite = compose(starArrows(h1.arrow, 0, tau.arrow), nu.arrow);
  std::string s = printArrow(composite);
  CHECK(s.find("(G(a) o^1_0 xi(x))") != std::string::npos);
}

TEST_CASE("coercion along the canonical numbering") {
  OperationRef tau = xiOp(n2);
  OperationRef nu = compOp(n2, 2, 1, 0);
  OperationRef h1 = transportOp(n2, TransportSeries::G, 1);
  Arrow lhs = compose(starArrows(h1.arrow, 0, tau.arrow), nu.arrow);
  Tree tff = validateTree(n2, {xiObject(n2), f(1), f(1)}, {f(0), f(0)});
  Tree hht = validateTree(n2, {g(1), g(1), xiObject(n2)}, {g(0), g(0)});
  CHECK_THROWS_AS(coerceArrow(lhs, tff), Error); // different realizations (2 arrows vs 1)
  OperationRef moved = coerceOp(OperationRef{Family::Cod, 1, lhs},
                                validateTree(n2, {xiObject(n2), f(1)}, {f(0)}));
  CHECK(moved.arrow.cod.table() == "[xi, f^1; f^0]");
  CHECK(termEqual(moved.top(), rehostTerm(lhs.at(CellRef{2, 1, 0}), moved.arrow.cod)));
  CHECK(realizationEqual(hht, tff));
}
