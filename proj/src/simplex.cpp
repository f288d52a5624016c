#include <algorithm>
#include <chrono>
#include <cmath>
#include <vector>

#include "gep/solver.hpp"

// Bounded-variable primal simplex on the revised tableau with a
// product-form eta file. Layout of the computational form:
//
//   columns [0, n)        structural variables of the model
//   columns [n, n+m)      one logical per row, so every row reads
//                         a_i x + s_i = b_i with s_i bounded by the sense
//   columns [n+m, ...)    phase-1 artificials for rows whose crash basis
//                         is infeasible
//
// Phase 1 minimizes the signed sum of the artificials, phase 2 the model
// objective with the artificials pinned to zero. Dantzig pricing with a
// Bland fallback after a degenerate stall. Refactorization rebuilds the
// eta file with a row-singleton (triangularity-seeking) ordering and
// recomputes the basic values to bound drift.

namespace gep::solver {
namespace {

using milp::kInf;
using milp::Model;
using milp::Sense;
using milp::Solution;
using milp::SolveStatus;

constexpr double kPivotTol = 1e-9;
constexpr double kTieTol = 1e-9;
constexpr int kRefactorInterval = 300;
constexpr int kStallLimit = 2000;

enum class VStat : unsigned char { Basic, AtLower, AtUpper, Free };

struct Eta {
    int row;
    std::vector<std::pair<int, double>> col;  // includes the pivot entry
};

class Simplex {
public:
    Simplex(const Model& model, const SolveOptions& opt) : model_(model), opt_(opt) {}

    Solution run();

private:
    const Model& model_;
    const SolveOptions& opt_;

    int n_ = 0;  // structurals
    int m_ = 0;  // rows
    int ncols_ = 0;

    // structural matrix, column-wise
    std::vector<int> col_start_, col_row_;
    std::vector<double> col_val_;
    std::vector<double> lo_, up_, cost_, pcost_;
    std::vector<int> art_row_;  // artificial col -> its row, -1 otherwise

    std::vector<int> basis_;          // row -> column
    std::vector<VStat> vstat_;        // column -> state
    std::vector<double> xval_;        // nonbasic values (bound or 0)
    std::vector<double> xB_;          // basic values, per row

    std::vector<Eta> etas_;
    int etas_at_refactor_ = 0;

    // scratch; in_nz_ keeps work_nz_ duplicate-free
    std::vector<double> work_, ywork_;
    std::vector<int> work_nz_;
    std::vector<char> in_nz_;

    void push_nz(int i) {
        if (!in_nz_[i]) {
            in_nz_[i] = 1;
            work_nz_.push_back(i);
        }
    }
    void clear_work() {
        for (int i : work_nz_) {
            work_[i] = 0.0;
            in_nz_[i] = 0;
        }
        work_nz_.clear();
    }

    void build();
    void crash();
    bool refactorize();
    void recompute_basics();

    void scatter_column(int j);                    // into work_/work_nz_
    void ftran();                                  // work_ <- B^-1 work_
    void btran(std::vector<double>& y) const;      // y <- B^-T y

    double reduced_cost(int j, const std::vector<double>& y, const std::vector<double>& c) const;
    // 0 optimal, 1 pivoted, 2 unbounded, 3 numerical trouble
    int iterate(const std::vector<double>& c, bool bland);
    SolveStatus run_phase(const std::vector<double>& c, double* final_obj);

    double phase1_objective() const;
};

void Simplex::build() {
    n_ = static_cast<int>(model_.num_variables());
    m_ = static_cast<int>(model_.num_constraints());
    ncols_ = n_ + m_;

    col_start_.assign(n_ + 1, 0);
    std::vector<std::vector<std::pair<int, double>>> cols(n_);
    for (int i = 0; i < m_; ++i)
        for (const auto& [id, coeff] : model_.constraints()[i].terms)
            if (coeff != 0.0) cols[id].emplace_back(i, coeff);
    for (int j = 0; j < n_; ++j) col_start_[j + 1] = col_start_[j] + static_cast<int>(cols[j].size());
    col_row_.resize(col_start_[n_]);
    col_val_.resize(col_start_[n_]);
    for (int j = 0; j < n_; ++j) {
        int k = col_start_[j];
        for (const auto& [row, coeff] : cols[j]) {
            col_row_[k] = row;
            col_val_[k] = coeff;
            ++k;
        }
    }

    lo_.resize(ncols_);
    up_.resize(ncols_);
    cost_.assign(ncols_, 0.0);
    for (int j = 0; j < n_; ++j) {
        lo_[j] = model_.variables()[j].lower;
        up_[j] = model_.variables()[j].upper;
        cost_[j] = model_.objective()[j];
    }
    for (int i = 0; i < m_; ++i) {
        switch (model_.constraints()[i].sense) {
            case Sense::LessEqual: lo_[n_ + i] = 0.0; up_[n_ + i] = kInf; break;
            case Sense::GreaterEqual: lo_[n_ + i] = -kInf; up_[n_ + i] = 0.0; break;
            case Sense::Equal: lo_[n_ + i] = 0.0; up_[n_ + i] = 0.0; break;
        }
    }
    art_row_.assign(ncols_, -1);

    vstat_.assign(ncols_, VStat::AtLower);
    xval_.assign(ncols_, 0.0);
    basis_.assign(m_, -1);
    xB_.assign(m_, 0.0);
    work_.assign(m_, 0.0);
    ywork_.assign(m_, 0.0);
    in_nz_.assign(m_, 0);
}

void Simplex::crash() {
    // nonbasic structurals sit at their nearest finite bound
    for (int j = 0; j < n_; ++j) {
        if (std::isfinite(lo_[j])) {
            vstat_[j] = VStat::AtLower;
            xval_[j] = lo_[j];
        } else if (std::isfinite(up_[j])) {
            vstat_[j] = VStat::AtUpper;
            xval_[j] = up_[j];
        } else {
            vstat_[j] = VStat::Free;
            xval_[j] = 0.0;
        }
    }

    std::vector<double> act(m_, 0.0);
    for (int j = 0; j < n_; ++j) {
        if (xval_[j] == 0.0) continue;
        for (int k = col_start_[j]; k < col_start_[j + 1]; ++k)
            act[col_row_[k]] += col_val_[k] * xval_[j];
    }

    // structural singleton columns per row, preferred crash pivots
    std::vector<std::vector<int>> singles(m_);
    for (int j = 0; j < n_; ++j)
        if (col_start_[j + 1] - col_start_[j] == 1) singles[col_row_[col_start_[j]]].push_back(j);

    pcost_.assign(ncols_, 0.0);
    for (int i = 0; i < m_; ++i) {
        const double rhs = model_.constraints()[i].rhs;
        const int s = n_ + i;
        const double implied = rhs - act[i];
        if (implied >= lo_[s] - opt_.feasibility_tol && implied <= up_[s] + opt_.feasibility_tol) {
            basis_[i] = s;
            vstat_[s] = VStat::Basic;
            xB_[i] = std::clamp(implied, lo_[s], up_[s]);
            continue;
        }
        const double snear = std::clamp(implied, lo_[s], up_[s]);
        vstat_[s] = (snear == lo_[s]) ? VStat::AtLower : VStat::AtUpper;
        xval_[s] = snear;
        bool placed = false;
        for (int j : singles[i]) {
            if (vstat_[j] == VStat::Basic) continue;
            const double a = col_val_[col_start_[j]];
            if (std::abs(a) < kPivotTol) continue;
            const double need = xval_[j] + (implied - snear) / a;
            if (need >= lo_[j] - opt_.feasibility_tol && need <= up_[j] + opt_.feasibility_tol) {
                basis_[i] = j;
                vstat_[j] = VStat::Basic;
                xB_[i] = std::clamp(need, lo_[j], up_[j]);
                placed = true;
                break;
            }
        }
        if (placed) continue;
        // phase-1 artificial carrying the residual
        const double resid = implied - snear;
        const int a = ncols_;
        lo_.push_back(resid >= 0.0 ? 0.0 : -kInf);
        up_.push_back(resid >= 0.0 ? kInf : 0.0);
        cost_.push_back(0.0);
        pcost_.push_back(resid >= 0.0 ? 1.0 : -1.0);
        vstat_.push_back(VStat::Basic);
        xval_.push_back(0.0);
        art_row_.push_back(i);
        basis_[i] = a;
        xB_[i] = resid;
        ++ncols_;
    }
    // crash pivots are all unit or singleton columns: the basis is diagonal
    // up to scaling, but we refactorize to get a consistent eta file
    refactorize();
    recompute_basics();
}

void Simplex::scatter_column(int j) {
    if (j < n_) {
        for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
            work_[col_row_[k]] = col_val_[k];
            push_nz(col_row_[k]);
        }
    } else if (j < n_ + m_) {
        work_[j - n_] = 1.0;
        push_nz(j - n_);
    } else {
        work_[art_row_[j]] = 1.0;
        push_nz(art_row_[j]);
    }
}

void Simplex::ftran() {
    for (const Eta& e : etas_) {
        const double piv = work_[e.row];
        if (piv == 0.0) continue;
        double pr = 0.0;
        for (const auto& [i, w] : e.col)
            if (i == e.row) { pr = piv / w; break; }
        work_[e.row] = pr;
        if (pr == 0.0) continue;
        for (const auto& [i, w] : e.col) {
            if (i == e.row) continue;
            push_nz(i);
            work_[i] -= w * pr;
        }
    }
}

void Simplex::btran(std::vector<double>& y) const {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
        const Eta& e = *it;
        double s = y[e.row];
        double wr = 1.0;
        for (const auto& [i, w] : e.col) {
            if (i == e.row) wr = w;
            else s -= w * y[i];
        }
        y[e.row] = s / wr;
    }
}

bool Simplex::refactorize() {
    etas_.clear();
    std::vector<char> row_done(m_, 0);
    std::vector<int> struct_cols;
    for (int i = 0; i < m_; ++i) {
        const int j = basis_[i];
        if (j >= n_) continue;  // unit column, placed below
        struct_cols.push_back(j);
    }
    // unit columns pivot on their own row, no eta needed
    std::vector<int> new_basis(m_, -1);
    for (int i = 0; i < m_; ++i) {
        const int j = basis_[i];
        if (j < n_) continue;
        const int r = (j < n_ + m_) ? j - n_ : art_row_[j];
        new_basis[r] = j;
        row_done[r] = 1;
    }
    std::sort(struct_cols.begin(), struct_cols.end());

    // row-singleton ordering over the remaining structural columns
    std::vector<int> cnt(m_, 0);
    std::vector<std::vector<int>> row_cols(m_);
    std::vector<char> col_done(struct_cols.size(), 0);
    std::vector<int> col_pos;  // position in struct_cols, keyed by column id
    {
        std::vector<int> pos(n_, -1);
        for (int p = 0; p < static_cast<int>(struct_cols.size()); ++p) pos[struct_cols[p]] = p;
        col_pos = std::move(pos);
    }
    for (int j : struct_cols)
        for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
            if (row_done[col_row_[k]]) continue;
            ++cnt[col_row_[k]];
            row_cols[col_row_[k]].push_back(j);
        }
    std::vector<int> queue;
    for (int r = 0; r < m_; ++r)
        if (!row_done[r] && cnt[r] == 1) queue.push_back(r);

    auto place = [&](int j, int forced_row) -> bool {
        scatter_column(j);
        ftran();
        int r = forced_row;
        if (r >= 0 && std::abs(work_[r]) < kPivotTol) r = -1;  // cancelled, repick
        if (r < 0) {
            double best = 0.0;
            for (int i : work_nz_)
                if (!row_done[i] && std::abs(work_[i]) > best) { best = std::abs(work_[i]); r = i; }
        }
        if (r < 0 || std::abs(work_[r]) < kPivotTol) {
            clear_work();
            return false;
        }
        Eta e;
        e.row = r;
        for (int i : work_nz_)
            if (work_[i] != 0.0) e.col.emplace_back(i, work_[i]);
        std::sort(e.col.begin(), e.col.end());
        bool trivial = e.col.size() == 1 && e.col[0].second == 1.0;
        if (!trivial) etas_.push_back(std::move(e));
        clear_work();
        new_basis[r] = j;
        row_done[r] = 1;
        col_done[col_pos[j]] = 1;
        // retire this row from the counts
        for (int jj : row_cols[r]) {
            if (col_done[col_pos[jj]]) continue;
            for (int k = col_start_[jj]; k < col_start_[jj + 1]; ++k) {
                const int rr = col_row_[k];
                if (row_done[rr]) continue;
                if (--cnt[rr] == 1) queue.push_back(rr);
            }
        }
        return true;
    };

    while (!queue.empty()) {
        const int r = queue.back();
        queue.pop_back();
        if (row_done[r] || cnt[r] != 1) continue;
        int j = -1;
        for (int jj : row_cols[r])
            if (!col_done[col_pos[jj]]) { j = jj; break; }
        if (j < 0) continue;
        if (!place(j, r)) return false;
    }
    // leftover (non-triangular) part, partial pivoting
    for (int p = 0; p < static_cast<int>(struct_cols.size()); ++p) {
        if (col_done[p]) continue;
        if (!place(struct_cols[p], -1)) return false;
    }
    basis_ = std::move(new_basis);
    etas_at_refactor_ = static_cast<int>(etas_.size());
    return true;
}

void Simplex::recompute_basics() {
    clear_work();
    for (int i = 0; i < m_; ++i) {
        work_[i] = model_.constraints()[i].rhs;
        push_nz(i);
    }
    for (int j = 0; j < ncols_; ++j) {
        if (vstat_[j] == VStat::Basic || xval_[j] == 0.0) continue;
        if (j < n_) {
            for (int k = col_start_[j]; k < col_start_[j + 1]; ++k)
                work_[col_row_[k]] -= col_val_[k] * xval_[j];
        } else if (j < n_ + m_) {
            work_[j - n_] -= xval_[j];
        }
    }
    ftran();
    for (int i = 0; i < m_; ++i) xB_[i] = work_[i];
    clear_work();
}

double Simplex::reduced_cost(int j, const std::vector<double>& y,
                             const std::vector<double>& c) const {
    double d = c[j];
    if (j < n_) {
        for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) d -= col_val_[k] * y[col_row_[k]];
    } else if (j < n_ + m_) {
        d -= y[j - n_];
    } else {
        d -= y[art_row_[j]];
    }
    return d;
}

int Simplex::iterate(const std::vector<double>& c, bool bland) {
    // duals for the current basis
    std::fill(ywork_.begin(), ywork_.end(), 0.0);
    for (int i = 0; i < m_; ++i) ywork_[i] = c[basis_[i]];
    btran(ywork_);

    int q = -1, dir = 0;
    double best = opt_.optimality_tol;
    for (int j = 0; j < ncols_; ++j) {
        if (vstat_[j] == VStat::Basic || lo_[j] == up_[j]) continue;
        const double d = reduced_cost(j, ywork_, c);
        if ((vstat_[j] == VStat::AtLower || vstat_[j] == VStat::Free) && d < -best) {
            q = j; dir = 1; best = -d;
            if (bland) break;
        } else if ((vstat_[j] == VStat::AtUpper || vstat_[j] == VStat::Free) && d > best) {
            q = j; dir = -1; best = d;
            if (bland) break;
        }
    }
    if (q < 0) return 0;

    scatter_column(q);
    ftran();

    // ratio test
    double t = kInf;
    if (std::isfinite(lo_[q]) && std::isfinite(up_[q])) t = up_[q] - lo_[q];
    int leave = -1;
    double leave_piv = 0.0;
    for (int idx : work_nz_) {
        const double w = work_[idx];
        if (std::abs(w) < kPivotTol) continue;
        const double delta = -dir * w;  // movement of basic idx per unit step
        const int bj = basis_[idx];
        double limit;
        if (delta < 0.0) {
            if (!std::isfinite(lo_[bj])) continue;
            limit = (xB_[idx] - lo_[bj]) / (-delta);
        } else {
            if (!std::isfinite(up_[bj])) continue;
            limit = (up_[bj] - xB_[idx]) / delta;
        }
        if (limit < 0.0) limit = 0.0;
        if (limit < t - kTieTol ||
            (limit < t + kTieTol &&
             (leave < 0 || (bland ? bj < basis_[leave] : std::abs(w) > std::abs(leave_piv))))) {
            if (limit < t) t = limit;
            leave = idx;
            leave_piv = w;
        }
    }
    if (!std::isfinite(t)) {
        clear_work();
        return 2;  // unbounded direction
    }

    // apply the step
    if (t != 0.0)
        for (int i : work_nz_) xB_[i] -= dir * t * work_[i];

    if (leave < 0) {
        // entering variable runs to its opposite bound
        vstat_[q] = (dir > 0) ? VStat::AtUpper : VStat::AtLower;
        xval_[q] = (dir > 0) ? up_[q] : lo_[q];
        clear_work();
        return 1;
    }

    const int jl = basis_[leave];
    const double delta_l = -dir * work_[leave];
    vstat_[jl] = (delta_l < 0.0) ? VStat::AtLower : VStat::AtUpper;
    xval_[jl] = (delta_l < 0.0) ? lo_[jl] : up_[jl];

    const double xq_new = xval_[q] + dir * t;
    Eta e;
    e.row = leave;
    for (int i : work_nz_)
        if (work_[i] != 0.0) e.col.emplace_back(i, work_[i]);
    std::sort(e.col.begin(), e.col.end());
    etas_.push_back(std::move(e));

    basis_[leave] = q;
    vstat_[q] = VStat::Basic;
    xB_[leave] = xq_new;

    clear_work();

    if (static_cast<int>(etas_.size()) - etas_at_refactor_ > kRefactorInterval) {
        if (!refactorize()) return 3;
        recompute_basics();
    }
    return 1;
}

double Simplex::phase1_objective() const {
    double s = 0.0;
    for (int i = 0; i < m_; ++i) {
        const int j = basis_[i];
        if (j >= n_ + m_) s += std::abs(xB_[i]);
    }
    return s;
}

SolveStatus Simplex::run_phase(const std::vector<double>& c, double* final_obj) {
    const long max_iters = 2000 + 60L * (m_ + 10);
    long stall = 0;
    bool bland = false;
    double last_obj = kInf;
    const auto t0 = std::chrono::steady_clock::now();
    for (long it = 0; it < max_iters; ++it) {
        const int rc = iterate(c, bland);
        if (rc == 0) {
            // confirm against a fresh factorization before declaring optimal
            if (static_cast<int>(etas_.size()) != etas_at_refactor_) {
                if (!refactorize()) return SolveStatus::NumericalFailure;
                recompute_basics();
                const int rc2 = iterate(c, bland);
                if (rc2 == 1) continue;
                if (rc2 == 2) return SolveStatus::Unbounded;
                if (rc2 == 3) return SolveStatus::NumericalFailure;
            }
            if (final_obj) {
                double obj = 0.0;
                for (int j = 0; j < ncols_; ++j)
                    if (vstat_[j] != VStat::Basic) obj += c[j] * xval_[j];
                for (int i = 0; i < m_; ++i) obj += c[basis_[i]] * xB_[i];
                *final_obj = obj;
            }
            return SolveStatus::Optimal;
        }
        if (rc == 2) return SolveStatus::Unbounded;
        if (rc == 3) return SolveStatus::NumericalFailure;

        // stall detection drives the Bland fallback
        double obj = 0.0;
        for (int i = 0; i < m_; ++i) obj += c[basis_[i]] * xB_[i];
        for (int j = 0; j < ncols_; ++j)
            if (vstat_[j] != VStat::Basic && c[j] != 0.0) obj += c[j] * xval_[j];
        if (obj < last_obj - 1e-12 * (1.0 + std::abs(last_obj))) {
            stall = 0;
            bland = false;
            last_obj = obj;
        } else if (++stall > kStallLimit) {
            bland = true;
        }
        if (opt_.time_limit_seconds && (it % 512) == 0) {
            const std::chrono::duration<double> el = std::chrono::steady_clock::now() - t0;
            if (el.count() > *opt_.time_limit_seconds) return SolveStatus::LimitReached;
        }
    }
    return SolveStatus::NumericalFailure;
}

Solution Simplex::run() {
    Solution sol;
    build();
    for (const auto& v : model_.variables())
        if (v.lower > v.upper) { sol.status = SolveStatus::Infeasible; return sol; }
    crash();

    if (ncols_ > n_ + m_) {
        const SolveStatus st = run_phase(pcost_, nullptr);
        if (st == SolveStatus::NumericalFailure || st == SolveStatus::LimitReached) {
            sol.status = st;
            return sol;
        }
        // phase 1 is bounded below by zero; an unbounded verdict is numerics
        if (st == SolveStatus::Unbounded) { sol.status = SolveStatus::NumericalFailure; return sol; }
        double scale = 1.0;
        for (const auto& con : model_.constraints()) scale = std::max(scale, std::abs(con.rhs));
        if (phase1_objective() > 1e2 * opt_.feasibility_tol * scale) {
            sol.status = SolveStatus::Infeasible;
            return sol;
        }
        // pin the artificials
        for (int j = n_ + m_; j < ncols_; ++j) {
            lo_[j] = 0.0;
            up_[j] = 0.0;
            if (vstat_[j] != VStat::Basic) xval_[j] = 0.0;
        }
        for (int i = 0; i < m_; ++i)
            if (basis_[i] >= n_ + m_ && std::abs(xB_[i]) <= 1e3 * opt_.feasibility_tol) xB_[i] = 0.0;
    }

    const SolveStatus st = run_phase(cost_, nullptr);
    if (st != SolveStatus::Optimal) {
        sol.status = st;
        return sol;
    }

    sol.values.assign(n_, 0.0);
    for (int j = 0; j < n_; ++j)
        if (vstat_[j] != VStat::Basic) sol.values[j] = xval_[j];
    for (int i = 0; i < m_; ++i)
        if (basis_[i] < n_) sol.values[basis_[i]] = xB_[i];

    sol.objective = model_.objective_constant();
    for (int j = 0; j < n_; ++j) sol.objective += cost_[j] * sol.values[j];

    std::fill(ywork_.begin(), ywork_.end(), 0.0);
    for (int i = 0; i < m_; ++i) ywork_[i] = cost_[basis_[i]];
    btran(ywork_);
    sol.duals.assign(ywork_.begin(), ywork_.end());
    sol.has_duals = true;

    // the solver never reports a wrong optimal
    const auto ev = model_.evaluate(sol.values);
    double scale = 1.0;
    for (const auto& con : model_.constraints()) scale = std::max(scale, std::abs(con.rhs));
    if (ev.max_violation > 1e-6 * scale) {
        sol.status = SolveStatus::NumericalFailure;
        return sol;
    }
    sol.status = SolveStatus::Optimal;
    return sol;
}

}  // namespace

Solution solve_lp(const Model& model, const SolveOptions& options) {
    if (model.num_variables() == 0) {
        Solution sol;
        bool feasible = true;
        for (const auto& c : model.constraints()) {
            const double lhs = 0.0;
            if ((c.sense == Sense::LessEqual && lhs > c.rhs) ||
                (c.sense == Sense::GreaterEqual && lhs < c.rhs) ||
                (c.sense == Sense::Equal && lhs != c.rhs))
                feasible = false;
        }
        sol.status = feasible ? SolveStatus::Optimal : SolveStatus::Infeasible;
        sol.objective = model.objective_constant();
        sol.duals.assign(model.num_constraints(), 0.0);
        sol.has_duals = feasible;
        return sol;
    }
    Simplex s(model, options);
    return s.run();
}

}  // namespace gep::solver
