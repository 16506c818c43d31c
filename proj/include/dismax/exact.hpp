#pragma once

#include "dismax/oracle.hpp"
#include "dismax/types.hpp"

namespace dismax {

// Exact (enumeration) counterparts of the sampled quantities. Everything here
// is exponential in n and guarded by max_n; these routines exist to check the
// estimators and the theory, not to solve anything at scale.

// F(x) = sum over R of f(R) * prod_{p in R} x_p * prod_{p not in R} (1 - x_p).
// Subsets with zero probability are skipped without an oracle call.
double multilinear_exact(const ValueOracle& f, const MembershipVector& x, int max_n = 20);

// dF/dx_p = E[f(R u {p}) - f(R \ {p})] with R drawn over the other coordinates.
double partial_exact(const ValueOracle& f, const MembershipVector& x, StrategyId p,
                     int max_n = 20);

// d2F/dx_p dx_q, p != q; always <= 0 for submodular f.
double second_partial_exact(const ValueOracle& f, const MembershipVector& x, StrategyId p,
                            StrategyId q, int max_n = 20);

// Total curvature c = 1 - min over (p, S not containing p) of the gain ratio
// f(p|S)/f(p|empty). Pairs whose singleton gain is exactly zero are excluded;
// if every strategy has zero singleton gain the function is identically zero
// on singletons and curvature is undefined (config error). Modular f gives 0.
double total_curvature(const ValueOracle& f, int max_n = 20);

}  // namespace dismax
