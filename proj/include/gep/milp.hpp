#ifndef GEP_MILP_HPP
#define GEP_MILP_HPP

#include <iosfwd>
#include <limits>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace gep::milp {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarKind { Continuous, Binary };

enum class Sense : char { LessEqual = 'L', Equal = 'E', GreaterEqual = 'G' };

struct Variable {
    int id = -1;
    std::string name;
    VarKind kind = VarKind::Continuous;
    double lower = 0.0;
    double upper = kInf;
};

struct Constraint {
    std::string name;
    std::vector<std::pair<int, double>> terms;  // (variable id, coefficient)
    Sense sense = Sense::LessEqual;
    double rhs = 0.0;
};

enum class SolveStatus {
    Optimal,
    Infeasible,
    Unbounded,
    LimitReached,       // node/time limit hit, best incumbent returned if any
    NumericalFailure,
};

struct Solution {
    SolveStatus status = SolveStatus::NumericalFailure;
    std::vector<double> values;   // per variable id
    double objective = 0.0;
    std::vector<double> duals;    // per constraint id, LP solves only
    bool has_duals = false;
    bool has_incumbent = false;   // meaningful when status == LimitReached
};

struct Evaluation {
    double objective = 0.0;
    double max_violation = 0.0;   // worst constraint violation, 0 if feasible
};

// Faithful record of a linear optimization problem (minimization). No
// presolve happens at insert time; constraints are stored verbatim so the
// model builders' output can be inspected row by row.
class Model {
public:
    int add_variable(const std::string& name, VarKind kind, double lower, double upper);
    int add_constraint(const std::string& name, std::vector<std::pair<int, double>> terms,
                       Sense sense, double rhs);

    // Accumulates into the variable's objective coefficient.
    void add_objective_term(int var, double coeff);
    void set_objective_constant(double c) { objective_constant_ = c; }
    void add_objective_constant(double c) { objective_constant_ += c; }

    void set_bounds(int var, double lower, double upper);
    void set_kind(int var, VarKind kind) { variables_[var].kind = kind; }

    const std::vector<Variable>& variables() const { return variables_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }
    const std::vector<double>& objective() const { return objective_; }
    double objective_constant() const { return objective_constant_; }

    std::size_t num_variables() const { return variables_.size(); }
    std::size_t num_constraints() const { return constraints_.size(); }
    std::size_t num_binaries() const;

    // Exact linear evaluation of a candidate point. Throws if values does
    // not cover every variable.
    Evaluation evaluate(const std::vector<double>& values) const;

    std::string name = "model";

private:
    std::vector<Variable> variables_;
    std::vector<Constraint> constraints_;
    std::vector<double> objective_;       // dense, per variable id
    double objective_constant_ = 0.0;
    std::unordered_set<std::string> name_set_;
};

// Free-format MPS. Deterministic: two emissions of the same model are
// byte-identical. Binaries go inside INTORG/INTEND markers with explicit
// bounds.
void write_mps(const Model& model, std::ostream& out);
void write_mps_file(const Model& model, const std::string& path);

// Minimal free-format MPS reader, used for round-trip checks and the
// external-solver escape hatch.
Model parse_mps(std::istream& in);
Model parse_mps_file(const std::string& path);

// Reads a solver-produced solution file with one "name value" pair per line.
std::vector<double> read_solution_file(const Model& model, const std::string& path);

}  // namespace gep::milp

#endif
