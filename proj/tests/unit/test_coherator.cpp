#include "doctest.h"
#include "gwt/coherator.hpp"

#include <thread>

using namespace gwt;

namespace {

GlobeContext n2{2};
GlobeObject two(int d) { return GlobeObject{Family::Cod, d}; }
GlobeObject g(int d) { return GlobeObject{Family::GSer, d}; }

/// omega's defining pair, built the operational way: composites of stars.
std::pair<OperationRef, OperationRef> omegaPair() {
  OperationRef h1 = transportOp(n2, TransportSeries::G, 1);
  OperationRef f1 = transportOp(n2, TransportSeries::F, 1);
  OperationRef tau = xiOp(n2);
  OperationRef nu = compOp(n2, 2, 1, 0);
  Arrow lhs = compose(starArrows(h1.arrow, 0, tau.arrow), nu.arrow);
  Arrow rhs = compose(starArrows(tau.arrow, 0, f1.arrow), nu.arrow);
  return {OperationRef{Family::Cod, 1, lhs}, OperationRef{Family::Cod, 1, rhs}};
}

/// The same pair written directly as terms over [g^1, xi; g^0].
std::pair<OperationRef, OperationRef> omegaPairDirect() {
  Tree ht = validateTree(n2, {g(1), xiObject(n2)}, {g(0)});
  Term a = mkGen(ht, CellRef{1, 1, 0});
  Term x = mkGen(ht, CellRef{1, 0, 0});
  Term y = mkGen(ht, CellRef{1, 0, 1});
  Term lhs = mkComp(n2, 1, 0, mkTransport(n2, TransportSeries::G, a), mkMid(n2, Family::Xi, 1, x));
  Term rhs = mkComp(n2, 1, 0, mkMid(n2, Family::Xi, 1, y), mkTransport(n2, TransportSeries::F, a));
  return {makeOp(n2, Family::Cod, 1, ht, lhs), makeOp(n2, Family::Cod, 1, ht, rhs)};
}

} // namespace

TEST_CASE("admissibility policies") {
  Registry reg(n2);
  OperationRef h1 = transportOp(n2, TransportSeries::G, 1);
  CHECK(reg.isAdmissible(h1, h1));

  Tree d1 = discTree(n2, two(1));
  OperationRef idOp = makeOp(n2, Family::Cod, 1, d1, mkGen(d1, CellRef{2, 1, 0}));
  CHECK_FALSE(reg.isAdmissible(idOp, idOp)); // both bare under the default policy
  Registry all(n2, Policy::AllParallel);
  CHECK(all.isAdmissible(idOp, idOp));
  Registry both(n2, Policy::BothNotBare);
  CHECK(both.isAdmissible(h1, h1));
  CHECK_FALSE(both.isAdmissible(idOp, h1));

  auto [of, og] = omegaPair();
  CHECK(reg.isAdmissible(of, og));
  CHECK(both.isAdmissible(of, og));
}

TEST_CASE("requestLift is idempotent with stable canonical keys") {
  Registry reg(n2);
  auto [of, og] = omegaPair();
  CohCellPtr omega1 = reg.requestLift(of, og);
  CohCellPtr omega2 = reg.requestLift(of, og);
  CHECK(omega1 == omega2);
  CHECK(reg.size() == 1);
  CHECK(omega1->dim == 2);
  CHECK(omega1->stage == 1);

  // rebuilding the pair from a different construction order: same key
  auto [df, dg] = omegaPairDirect();
  CHECK(liftKey(df, dg) == omega1->key);
  CHECK(reg.requestLift(df, dg) == omega1);
  CHECK(reg.size() == 1);

  // errors
  OperationRef f1 = transportOp(n2, TransportSeries::F, 1);
  OperationRef h1 = transportOp(n2, TransportSeries::G, 1);
  CHECK_THROWS_AS(reg.requestLift(f1, h1), Error); // not parallel
  Tree d1 = discTree(n2, two(1));
  OperationRef idOp = makeOp(n2, Family::Cod, 1, d1, mkGen(d1, CellRef{2, 1, 0}));
  CHECK_THROWS_AS(reg.requestLift(idOp, idOp), Error); // not admissible
}

TEST_CASE("lifting law and stage stratification") {
  Registry reg(n2);
  auto [of, og] = omegaPair();
  CohCellPtr omega = reg.requestLift(of, og);
  OperationRef lift = liftArrow(n2, omega);
  CHECK(lift.dim == 2);
  CHECK(termEqual(source(lift.top()), of.top()));
  CHECK(termEqual(precomposeBoundary(lift, HomClass::S).top(), omega->f.top()));
  CHECK(termEqual(precomposeBoundary(lift, HomClass::T).top(), omega->g.top()));
  CHECK(stage(lift.top()) == 1);

  // a lift of a pair applying omega sits at stage 2
  OperationRef liftCopy = liftArrow(n2, omega);
  CohCellPtr square = reg.requestLift(lift, liftCopy);
  CHECK(square->stage == 2);
  CHECK(square->dim == 3);
  for (const CohCellPtr& c : reg.all()) {
    CHECK(c->stage == std::max(stage(c->f.top()), stage(c->g.top())) + 1);
    CHECK(termEqual(precomposeBoundary(liftArrow(n2, c), HomClass::S).top(), c->f.top()));
    CHECK(termEqual(precomposeBoundary(liftArrow(n2, c), HomClass::T).top(), c->g.top()));
  }

  // globularity of coherence applications
  Term top = lift.top();
  CHECK(termEqual(source(source(top)), source(target(top))));
  CHECK(termEqual(target(target(top)), target(source(top))));
}

TEST_CASE("enumerateAdmissible matches a hand-rolled oracle at the smallest bounds") {
  // independent brute force over single-column trees, object dims <= 1,
  // term size <= 4: the only admissible dim-1 pairs are (F,F) and (G,G)
  // over [f^1] and [g^1] plus (xi,xi) over [xi]
  // pairs over realization-equal arities with equal terms are one canonical
  // class, so the oracle counts classes keyed by realization + term pair
  Registry reg(n2);
  std::set<std::string> oracleClasses;
  {
    std::vector<Tree> singles;
    for (Family fam : {Family::Dom, Family::Cod, Family::FSer, Family::GSer, Family::Xi})
      for (int d = 0; d <= 1; ++d)
        if (legalObject(n2, GlobeObject{fam, d})) singles.push_back(discTree(n2, GlobeObject{fam, d}));
    for (const Tree& t : singles) {
      auto r = realize(t);
      std::vector<Term> ops;
      for (int i = 0; i < r->cells.count(2, 1); ++i) ops.push_back(mkGen(t, CellRef{2, 1, i}));
      for (int i = 0; i < r->cells.count(1, 1); ++i) {
        ops.push_back(mkTransport(n2, TransportSeries::F, mkGen(t, CellRef{1, 1, i})));
        ops.push_back(mkTransport(n2, TransportSeries::G, mkGen(t, CellRef{1, 1, i})));
      }
      for (int i = 0; i < r->cells.count(1, 0); ++i)
        ops.push_back(mkMid(n2, Family::Xi, 1, mkGen(t, CellRef{1, 0, i})));
      for (const Term& u : ops)
        for (const Term& v : ops) {
          if (!termEqual(source(u), source(v)) || !termEqual(target(u), target(v))) continue;
          if (isGenTerm(u) && isGenTerm(v)) continue;
          oracleClasses.insert(realizationKey(t) + "|" + serCanonical(u) + "|" + serCanonical(v));
        }
      // component-1 dim-1 terms are bare generators only; never admissible
    }
  }
  CHECK(oracleClasses.size() == 5);

  EnumBounds tiny{1, 1, 4, 0};
  auto pairs = enumerateAdmissible(reg, tiny);
  CHECK(pairs.size() == oracleClasses.size());
}

TEST_CASE("enumerateAdmissible: stages are disjoint and layered") {
  Registry reg(n2);

  // omega's pair shows up at dim-1 bounds
  {
    EnumBounds bounds{2, 1, 5, 0};
    auto e0 = enumerateAdmissible(reg, bounds);
    CHECK(e0.size() == 34); // frozen
    auto [of, og] = omegaPair();
    std::string omegaKey = liftKey(of, og);
    bool hasOmega = false;
    for (const auto& p : e0) hasOmega = hasOmega || p.key == omegaKey;
    CHECK(hasOmega);
  }

  EnumBounds bounds{2, 2, 3, 0};
  auto e0 = enumerateAdmissible(reg, bounds);
  CHECK(e0.size() == 155); // frozen

  // deterministic
  auto e0again = enumerateAdmissible(reg, bounds);
  REQUIRE(e0.size() == e0again.size());
  for (size_t i = 0; i < e0.size(); ++i) CHECK(e0[i].key == e0again[i].key);

  // every stage-0 pair is coherence-free
  for (const auto& p : e0) {
    CHECK(stage(p.f.top()) == 0);
    CHECK(stage(p.g.top()) == 0);
  }

  // saturate: add all stage-0 liftings, then enumerate stage 1
  for (const auto& p : e0) reg.requestLift(p.f, p.g);
  bounds.stage = 1;
  auto e1 = enumerateAdmissible(reg, bounds);
  CHECK(e1.size() == 2363); // frozen
  std::set<std::string> keys0;
  for (const auto& p : e0) keys0.insert(p.key);
  for (const auto& p : e1) {
    CHECK(!keys0.count(p.key));
    CHECK(std::max(stage(p.f.top()), stage(p.g.top())) == 1);
    CHECK((stage(p.f.top()) == 1 || stage(p.g.top()) == 1));
  }
}

TEST_CASE("equalInDimModels is a conservative tri-state") {
  Registry reg(n2);
  auto [of, og] = omegaPair();
  CHECK(equalInDimModels(reg, 1, of, of) == ModelEq::Equal);
  CHECK(equalInDimModels(reg, 1, of, og) == ModelEq::ForcedByLift);
  CHECK(equalInDimModels(reg, 2, of, og) == ModelEq::Unknown); // dim 1 < 2
  OperationRef f1 = transportOp(n2, TransportSeries::F, 1);
  OperationRef h1 = transportOp(n2, TransportSeries::G, 1);
  CHECK(equalInDimModels(reg, 1, f1, h1) == ModelEq::Unknown);
  // symmetry and monotonicity
  CHECK(equalInDimModels(reg, 1, og, of) == ModelEq::ForcedByLift);
}

TEST_CASE("requestLift is atomic under concurrent requests") {
  Registry reg(n2);
  auto [of, og] = omegaPair();
  std::vector<std::thread> threads;
  std::vector<CohCellPtr> results(8);
  for (int i = 0; i < 8; ++i)
    threads.emplace_back([&, i] { results[i] = reg.requestLift(of, og); });
  for (auto& t : threads) t.join();
  CHECK(reg.size() == 1);
  for (int i = 1; i < 8; ++i) CHECK(results[i] == results[0]);
}

TEST_CASE("registry dump/load round trip") {
  Registry reg(n2);
  auto [of, og] = omegaPair();
  CohCellPtr omega = reg.requestLift(of, og);
  reg.requestLift(liftArrow(n2, omega), liftArrow(n2, omega));
  std::string dump = dumpRegistryJson(reg);

  Registry fresh(n2);
  loadRegistryJson(fresh, dump);
  CHECK(fresh.size() == reg.size());
  CHECK(dumpRegistryJson(fresh) == dump);
}
