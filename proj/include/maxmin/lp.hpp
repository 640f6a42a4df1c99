#pragma once

#include "maxmin/instance.hpp"
#include "maxmin/rational.hpp"

#include <cstddef>
#include <vector>

namespace maxmin {

enum class Relation { LessEq, GreaterEq, Equal };

struct LpRow {
    std::vector<Rational> coeffs;  // width = variable_count
    Relation rel = Relation::LessEq;
    Rational rhs;
};

/// Explicit-form LP. Every row is listed; `nonneg[j]` false makes variable j
/// free (handled by sign splitting).
struct LinearProgram {
    std::size_t variable_count = 0;
    bool maximize = true;
    std::vector<Rational> objective;
    std::vector<LpRow> rows;
    std::vector<bool> nonneg;  // empty = all nonnegative
};

enum class SolveStatus { Optimal, Infeasible, Unbounded };

struct SolveResult {
    SolveStatus status = SolveStatus::Optimal;
    Rational value;                // objective at optimum (when Optimal)
    std::vector<Rational> primal;  // width = variable_count (when Optimal)
    long pivots = 0;
};

/// Dense exact-rational primal simplex with the smallest-index (Bland)
/// anti-cycling rule; two phases with artificial variables when the slack
/// basis is not available. Deterministic given row/column order.
SolveResult simplex(const LinearProgram& lp);

struct MaxMinResult {
    SolveStatus status = SolveStatus::Optimal;  // Optimal or Unbounded
    Rational omega;                             // optimum of the max-min LP
    Assignment x;                               // canonical optimal assignment
    long pivots = 0;
};

/// Canonical two-phase solve of the max-min LP: phase 1 maximizes the
/// minimum utility omega; phase 2 keeps every utility >= omega and minimizes
/// the coordinate sum, pinning one optimal vertex deterministically.
/// Variables and rows are ordered by vertex id, so structurally identical
/// instances produce bit-identical results. Throws std::domain_error when the
/// instance has no objectives.
MaxMinResult solve_max_min(const MaxMinInstance& inst);

}  // namespace maxmin
