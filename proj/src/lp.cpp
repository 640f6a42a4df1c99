#include "maxmin/lp.hpp"

#include <cassert>
#include <stdexcept>

namespace maxmin {

namespace {

// Dense dictionary-form tableau over exact rationals. Row r keeps the basic
// variable basic[r] at coefficient 1 with zeros in every other row; rhs >= 0
// throughout (primal feasibility). Bland's rule on entering and leaving.
class Tableau {
public:
    explicit Tableau(std::size_t cols) : cols_(cols), obj_(cols, 0) {}

    std::size_t add_column() {
        for (auto& row : rows_) row.push_back(0);
        obj_.push_back(0);
        return cols_++;
    }

    // row must already be basis-reduced (or the basis empty); rhs >= 0
    void add_row(std::vector<mpq_class> coeffs, mpq_class rhs, int basic_col) {
        assert(coeffs.size() == cols_);
        assert(sgn(rhs) >= 0);
        rows_.push_back(std::move(coeffs));
        rhs_.push_back(std::move(rhs));
        basic_.push_back(basic_col);
    }

    // replaces the objective (maximize sum obj[j]*x_j) and prices it out
    // through the current basis
    void set_objective(std::vector<mpq_class> obj) {
        assert(obj.size() == cols_);
        obj_ = std::move(obj);
        value_ = 0;
        mpq_class t;
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            mpq_class f = obj_[static_cast<std::size_t>(basic_[r])];
            if (sgn(f) == 0) continue;
            const auto& row = rows_[r];
            for (std::size_t j = 0; j < cols_; ++j) {
                if (sgn(row[j]) == 0) continue;
                t = f * row[j];
                obj_[j] -= t;
            }
            t = f * rhs_[r];
            value_ += t;
        }
    }

    // reduces a raw constraint row through the current basis so that basic
    // columns vanish; returns the reduced (coeffs, rhs)
    void reduce_through_basis(std::vector<mpq_class>& coeffs, mpq_class& rhs) const {
        assert(coeffs.size() == cols_);
        mpq_class t;
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            mpq_class f = coeffs[static_cast<std::size_t>(basic_[r])];
            if (sgn(f) == 0) continue;
            const auto& row = rows_[r];
            for (std::size_t j = 0; j < cols_; ++j) {
                if (sgn(row[j]) == 0) continue;
                t = f * row[j];
                coeffs[j] -= t;
            }
            t = f * rhs_[r];
            rhs -= t;
        }
    }

    // Bland primal simplex on the current objective. Returns false when the
    // entering column is unbounded.
    bool optimize(long& pivots) {
        for (;;) {
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < cols_; ++j)
                if (sgn(obj_[j]) > 0) { enter = j; break; }
            if (enter == cols_) return true;  // optimal
            // leaving row: min ratio, ties by smallest basic index
            std::size_t leave = rows_.size();
            mpq_class best_ratio, ratio;
            for (std::size_t r = 0; r < rows_.size(); ++r) {
                if (sgn(rows_[r][enter]) <= 0) continue;
                ratio = rhs_[r] / rows_[r][enter];
                if (leave == rows_.size() || ratio < best_ratio ||
                    (ratio == best_ratio && basic_[r] < basic_[leave])) {
                    leave = r;
                    best_ratio = ratio;
                }
            }
            if (leave == rows_.size()) return false;  // unbounded
            pivot(leave, enter);
            ++pivots;
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        auto& prow = rows_[r];
        mpq_class inv = 1 / prow[c];
        if (inv != 1) {
            for (std::size_t j = 0; j < cols_; ++j)
                if (sgn(prow[j]) != 0) prow[j] *= inv;
            rhs_[r] *= inv;
        }
        prow[c] = 1;
        mpq_class t;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i == r) continue;
            mpq_class f = rows_[i][c];
            if (sgn(f) == 0) continue;
            auto& row = rows_[i];
            for (std::size_t j = 0; j < cols_; ++j) {
                if (sgn(prow[j]) == 0) continue;
                t = f * prow[j];
                row[j] -= t;
            }
            t = f * rhs_[r];
            rhs_[i] -= t;
            row[c] = 0;
        }
        mpq_class f = obj_[c];
        if (sgn(f) != 0) {
            for (std::size_t j = 0; j < cols_; ++j) {
                if (sgn(prow[j]) == 0) continue;
                t = f * prow[j];
                obj_[j] -= t;
            }
            t = f * rhs_[r];
            value_ += t;
            obj_[c] = 0;
        }
        basic_[r] = static_cast<int>(c);
    }

    const mpq_class& value() const { return value_; }
    std::size_t row_count() const { return rows_.size(); }
    std::size_t col_count() const { return cols_; }
    int basic_of_row(std::size_t r) const { return basic_[r]; }
    const mpq_class& rhs_of_row(std::size_t r) const { return rhs_[r]; }
    const mpq_class& coeff(std::size_t r, std::size_t c) const { return rows_[r][c]; }

    // value of a column in the current basic solution
    mpq_class column_value(std::size_t c) const {
        for (std::size_t r = 0; r < rows_.size(); ++r)
            if (basic_[r] == static_cast<int>(c)) return rhs_[r];
        return 0;
    }

    // pivot artificial basics out; rows that cannot be pivoted are redundant
    // and get erased. artificials start at column `first_art`.
    void drive_out_artificials(std::size_t first_art, long& pivots) {
        for (std::size_t r = 0; r < rows_.size();) {
            if (basic_[r] < static_cast<int>(first_art)) { ++r; continue; }
            std::size_t c = first_art;
            for (std::size_t j = 0; j < first_art; ++j)
                if (sgn(rows_[r][j]) != 0) { c = j; break; }
            if (c == first_art) {
                rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
                rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(r));
                basic_.erase(basic_.begin() + static_cast<std::ptrdiff_t>(r));
                continue;
            }
            pivot(r, c);
            ++pivots;
            ++r;
        }
    }

    void truncate_columns(std::size_t new_cols) {
        for (auto& row : rows_) row.resize(new_cols);
        obj_.resize(new_cols);
        cols_ = new_cols;
    }

private:
    std::size_t cols_;
    std::vector<std::vector<mpq_class>> rows_;
    std::vector<mpq_class> rhs_;
    std::vector<int> basic_;
    std::vector<mpq_class> obj_;
    mpq_class value_ = 0;
};

}  // namespace

SolveResult simplex(const LinearProgram& lp) {
    const std::size_t n = lp.variable_count;
    if (lp.objective.size() != n) throw std::invalid_argument("simplex: objective width mismatch");
    for (const auto& row : lp.rows)
        if (row.coeffs.size() != n) throw std::invalid_argument("simplex: row width mismatch");
    if (!lp.nonneg.empty() && lp.nonneg.size() != n)
        throw std::invalid_argument("simplex: nonneg width mismatch");

    // column layout: one column per nonnegative variable, two (pos, neg) per
    // free variable; then one slack/surplus per inequality row
    std::vector<std::size_t> pos_col(n), neg_col(n, SIZE_MAX);
    std::size_t cols = 0;
    for (std::size_t j = 0; j < n; ++j) {
        pos_col[j] = cols++;
        bool nn = lp.nonneg.empty() || lp.nonneg[j];
        if (!nn) neg_col[j] = cols++;
    }
    const std::size_t struct_cols = cols;
    std::size_t slack_cols = 0;
    for (const auto& row : lp.rows)
        if (row.rel != Relation::Equal) ++slack_cols;
    cols += slack_cols;

    Tableau tab(cols);
    SolveResult res;

    // rows with rhs normalized nonnegative; artificial columns appended on
    // demand for rows whose slack cannot serve as the initial basic variable
    std::vector<std::size_t> art_rows;
    std::vector<std::vector<mpq_class>> pending;
    std::vector<mpq_class> pending_rhs;
    std::vector<int> pending_basic;
    std::size_t next_slack = struct_cols;
    for (const auto& row : lp.rows) {
        std::vector<mpq_class> coeffs(cols, 0);
        bool flip = row.rhs.sign() < 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (row.coeffs[j].is_zero()) continue;
            mpq_class v = row.coeffs[j].raw();
            if (flip) v = -v;
            coeffs[pos_col[j]] = v;
            if (neg_col[j] != SIZE_MAX) coeffs[neg_col[j]] = -v;
        }
        mpq_class rhs = row.rhs.raw();
        if (flip) rhs = -rhs;
        Relation rel = row.rel;
        if (flip && rel == Relation::LessEq) rel = Relation::GreaterEq;
        else if (flip && rel == Relation::GreaterEq) rel = Relation::LessEq;

        int basic = -1;
        if (rel != Relation::Equal) {
            std::size_t s = next_slack++;
            coeffs[s] = rel == Relation::LessEq ? 1 : -1;
            if (rel == Relation::LessEq) basic = static_cast<int>(s);
        }
        if (basic < 0) art_rows.push_back(pending.size());
        pending.push_back(std::move(coeffs));
        pending_rhs.push_back(std::move(rhs));
        pending_basic.push_back(basic);
    }

    const std::size_t first_art = cols;
    for (std::size_t t = 0; t < art_rows.size(); ++t) tab.add_column();
    cols = tab.col_count();
    for (std::size_t r = 0, a = 0; r < pending.size(); ++r) {
        pending[r].resize(cols, 0);
        int basic = pending_basic[r];
        if (basic < 0) {
            std::size_t art = first_art + a++;
            pending[r][art] = 1;
            basic = static_cast<int>(art);
        }
        tab.add_row(std::move(pending[r]), std::move(pending_rhs[r]), basic);
    }

    if (!art_rows.empty()) {
        std::vector<mpq_class> phase1(cols, 0);
        for (std::size_t j = first_art; j < cols; ++j) phase1[j] = -1;
        tab.set_objective(std::move(phase1));
        bool ok = tab.optimize(res.pivots);
        assert(ok);  // phase-I objective is bounded above by 0
        (void)ok;
        if (sgn(tab.value()) != 0) {
            res.status = SolveStatus::Infeasible;
            return res;
        }
        tab.drive_out_artificials(first_art, res.pivots);
        tab.truncate_columns(first_art);
        cols = first_art;
    }

    std::vector<mpq_class> obj(cols, 0);
    for (std::size_t j = 0; j < n; ++j) {
        if (lp.objective[j].is_zero()) continue;
        mpq_class v = lp.objective[j].raw();
        if (!lp.maximize) v = -v;
        obj[pos_col[j]] = v;
        if (neg_col[j] != SIZE_MAX) obj[neg_col[j]] = -v;
    }
    tab.set_objective(std::move(obj));
    if (!tab.optimize(res.pivots)) {
        res.status = SolveStatus::Unbounded;
        return res;
    }

    res.status = SolveStatus::Optimal;
    mpq_class val = tab.value();
    if (!lp.maximize) val = -val;
    res.value = Rational(std::move(val));
    res.primal.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        mpq_class v = tab.column_value(pos_col[j]);
        if (neg_col[j] != SIZE_MAX) v -= tab.column_value(neg_col[j]);
        res.primal[j] = Rational(std::move(v));
    }
    return res;
}

MaxMinResult solve_max_min(const MaxMinInstance& inst) {
    if (inst.objectives().empty())
        throw std::domain_error("solve_max_min: instance has no objectives");

    const auto& agents = inst.agents();  // ascending ids: the canonical order
    const std::size_t na = agents.size();
    std::vector<std::size_t> col_of(inst.vertex_count(), SIZE_MAX);
    for (std::size_t j = 0; j < na; ++j) col_of[agents[j]] = j;
    const std::size_t omega_col = na;
    const std::size_t m = inst.constraints().size() + inst.objectives().size();
    const std::size_t cols = na + 1 + m + 1;  // + phase-2 cut slack, added up front

    Tableau tab(cols);
    std::size_t slack = na + 1;
    // constraint rows: sum a_iv x_v <= 1
    for (VertexId i : inst.constraints()) {
        std::vector<mpq_class> row(cols, 0);
        for (const auto& h : inst.neighbors(i)) {
            if (inst.role(h.to) != Role::Agent) continue;
            row[col_of[h.to]] = h.coeff.raw();
        }
        row[slack] = 1;
        tab.add_row(std::move(row), 1, static_cast<int>(slack));
        ++slack;
    }
    // utility rows: omega - sum c_kv x_v <= 0
    for (VertexId k : inst.objectives()) {
        std::vector<mpq_class> row(cols, 0);
        for (const auto& h : inst.neighbors(k)) {
            if (inst.role(h.to) != Role::Agent) continue;
            row[col_of[h.to]] = -h.coeff.raw();
        }
        row[omega_col] = 1;
        row[slack] = 1;
        tab.add_row(std::move(row), 0, static_cast<int>(slack));
        ++slack;
    }
    const std::size_t cut_slack = slack;

    MaxMinResult res{SolveStatus::Optimal, Rational(0), Assignment(inst), 0};

    std::vector<mpq_class> phase1(cols, 0);
    phase1[omega_col] = 1;
    tab.set_objective(std::move(phase1));
    if (!tab.optimize(res.pivots)) {
        res.status = SolveStatus::Unbounded;
        return res;
    }
    mpq_class omega_star = tab.value();
    res.omega = Rational(omega_star);

    // phase 2: pin omega >= omega*, minimize the coordinate sum
    std::vector<mpq_class> cut(cols, 0);
    cut[omega_col] = -1;
    cut[cut_slack] = 1;
    mpq_class cut_rhs = -omega_star;
    tab.reduce_through_basis(cut, cut_rhs);
    assert(sgn(cut_rhs) >= 0);  // current solution satisfies omega >= omega*
    tab.add_row(std::move(cut), std::move(cut_rhs), static_cast<int>(cut_slack));

    std::vector<mpq_class> phase2(cols, 0);
    for (std::size_t j = 0; j < na; ++j) phase2[j] = -1;
    tab.set_objective(std::move(phase2));
    bool bounded = tab.optimize(res.pivots);
    assert(bounded);  // coordinate sums are bounded below by zero
    (void)bounded;

    for (std::size_t j = 0; j < na; ++j)
        res.x.set(agents[j], Rational(tab.column_value(j)));
    return res;
}

}  // namespace maxmin
