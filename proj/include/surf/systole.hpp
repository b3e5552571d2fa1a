#pragma once
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "surf/combinatorial_map.hpp"
#include "surf/curve_ops.hpp"
#include "surf/io.hpp"

namespace surf {

// A witness cycle: a simple closed curve in regular position, given by its
// crossing sequence, plus the corresponding face itinerary of G*.
struct CycleResult {
  int length = 0;
  CrossCurve curve;
};

enum class CyclePredicate { Noncontractible, Nonseparating, Splitting };

// Exact shortest simple cycles of the three kinds on a cross-metric surface.
// Shortest non-contractible / non-separating closed walks may be taken simple
// and visiting each face of G* at most once, so the search space is the face
// adjacency graph.  Splitting = separating and non-contractible (simple).
CycleResult shortest_noncontractible(const CrossMetricSurface& s);
CycleResult shortest_nonseparating(const CrossMetricSurface& s);
CycleResult shortest_splitting(const CrossMetricSurface& s, long long budget = 200'000'000);

// Triangulation front-ends: the same searches on the dual, with primal walks
// as witnesses (dual ids coincide with primal ids).
struct PrimalCycleResult {
  int length = 0;
  PrimalWalk walk;
  CrossCurve dual_curve;
};
PrimalCycleResult shortest_noncontractible(const Triangulation& t);
PrimalCycleResult shortest_nonseparating(const Triangulation& t);
PrimalCycleResult shortest_splitting(const Triangulation& t, long long budget = 200'000'000);

// Exhaustive oracle: enumerates simple cycles in (length, lexicographic edge
// sequence) order and returns the first satisfying the predicate; nullopt if
// the search space is exhausted.  Throws BudgetExceeded past the step budget.
std::optional<CycleResult> brute_force_oracle(const CrossMetricSurface& s, CyclePredicate p,
                                              long long budget = 50'000'000);

// The loose pruning bound 4*sqrt(n/max(g,1))*(2+log2(g+1)).
double pruning_bound(int n, int genus);

struct SystoleReport {
  int edge_width = -1;
  int nonseparating_width = -1;
  int splitting_width = -1;  // -1 when genus < 2 or budget exhausted
  CrossCurve edge_width_witness, nonseparating_witness, splitting_witness;
};
SystoleReport systole_report(const CrossMetricSurface& s, bool with_splitting = true);

PrimalWalk face_cycle_to_primal_walk(const Triangulation& t, const CrossCurve& dual_curve);

}  // namespace surf
