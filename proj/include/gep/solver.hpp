#ifndef GEP_SOLVER_HPP
#define GEP_SOLVER_HPP

#include <optional>

#include "gep/milp.hpp"

namespace gep::solver {

struct SolveOptions {
    double feasibility_tol = 1e-7;
    double optimality_tol = 1e-7;
    double integrality_tol = 1e-6;
    double mip_gap = 1e-6;                      // relative
    std::optional<long> node_limit;
    std::optional<double> time_limit_seconds;
};

// Bounded-variable primal simplex (product-form revised simplex). Binaries
// must be absent or already relaxed/fixed through their bounds. Optimal
// solutions carry constraint duals: under minimization the dual of a
// >=-constraint is nonnegative and the dual of a <=-constraint is
// nonpositive.
milp::Solution solve_lp(const milp::Model& model, const SolveOptions& options = {});

// Branch and bound over solve_lp. Best-bound node selection with node-id
// tie-break; branches on the most fractional binary, lowest variable id on
// ties. Deterministic for fixed options.
milp::Solution solve_milp(const milp::Model& model, const SolveOptions& options = {});

// Exact optimum by enumerating every binary assignment (<= 20 binaries) and
// solving the resulting LPs. Test oracle; same tie-break rule as solve_milp.
milp::Solution enumerate_oracle(const milp::Model& model, const SolveOptions& options = {});

}  // namespace gep::solver

#endif
