#include "simplex.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace sharpconst::detail {

namespace {

constexpr double kPivotTol = 1e-9;

struct Tableau {
    Eigen::MatrixXd T;        // m x (ncols + 1), last column = rhs
    std::vector<int> basis;   // basis[i] = column basic in row i
    int m = 0, ncols = 0;

    double rhs(int i) const { return T(i, ncols); }

    void pivot(int row, int col) {
        T.row(row) /= T(row, col);
        for (int i = 0; i < m; ++i) {
            if (i == row) continue;
            const double f = T(i, col);
            if (f != 0.0) T.row(i) -= f * T.row(row);
        }
        basis[row] = col;
    }
};

// Runs the simplex on `tab` for the cost vector `cost` (length ncols).
// `allowed` masks columns that may enter the basis. Returns false on
// iteration blowup or an unbounded ray.
bool run_simplex(Tableau& tab, const Eigen::VectorXd& cost, const std::vector<char>& allowed,
                 double* objective, std::string* why = nullptr) {
    const int m = tab.m, n = tab.ncols;
    auto rebuild_costrow = [&](Eigen::RowVectorXd& row) {
        row.resize(n + 1);
        row.head(n) = cost.transpose();
        row(n) = 0.0;
        for (int i = 0; i < m; ++i) {
            const double cb = cost(tab.basis[i]);
            if (cb != 0.0) row -= cb * tab.T.row(i);
        }
    };
    Eigen::RowVectorXd costrow;
    rebuild_costrow(costrow);

    const long max_iter = 200L * (n + m) + 2000;
    bool bland = false;
    long since_progress = 0;
    double last_obj = std::numeric_limits<double>::infinity();

    for (long iter = 0; iter < max_iter; ++iter) {
        // incremental updates drift over thousands of pivots; periodically
        // recompute the reduced costs from the basis
        if (iter > 0 && iter % 128 == 0) rebuild_costrow(costrow);
        // entering column; the threshold scales with the objective so that
        // tableau roundoff does not masquerade as an improving direction
        const double cost_tol = 1e-9 * (1.0 + std::abs(costrow(n)));
        int enter = -1;
        if (!bland) {
            double best = -cost_tol;
            for (int j = 0; j < n; ++j)
                if (allowed[j] && costrow(j) < best) {
                    best = costrow(j);
                    enter = j;
                }
        } else {
            for (int j = 0; j < n; ++j)
                if (allowed[j] && costrow(j) < -cost_tol) {
                    enter = j;
                    break;
                }
        }
        if (enter < 0) {
            *objective = -costrow(n);
            return true;
        }
        // ratio test
        int leave = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
            const double a = tab.T(i, enter);
            if (a > kPivotTol) {
                const double r = tab.rhs(i) / a;
                if (r < best_ratio - 1e-14 ||
                    (r < best_ratio + 1e-14 && leave >= 0 && tab.basis[i] < tab.basis[leave])) {
                    best_ratio = r;
                    leave = i;
                }
            }
        }
        if (leave < 0) {
            if (why) *why = "unbounded column " + std::to_string(enter);
            return false;
        }

        tab.pivot(leave, enter);
        const double f = costrow(enter);
        if (f != 0.0) costrow -= f * tab.T.row(leave);

        const double obj = -costrow(n);
        const long stall_1 = std::max<long>(400, 4L * m);
        const long stall_2 = std::max<long>(800, 8L * m);
        if (obj < last_obj - 1e-13 * (1.0 + std::abs(obj))) {
            last_obj = obj;
            since_progress = 0;
        } else if (++since_progress > stall_1) {
            if (bland || since_progress > stall_2) {
                // Stalled on a degenerate optimal face. The iterate is
                // feasible throughout, so for this minimization it is a
                // valid (near-optimal) bound; stop here.
                *objective = -costrow(n);
                return true;
            }
            bland = true;  // degeneracy stall: try Bland's rule first
        }
    }
    if (why) *why = "iteration limit";
    return false;
}

}  // namespace

SimplexResult simplex_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                            const Eigen::VectorXd& c) {
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    const int total = n + m;  // + artificials

    Tableau tab;
    tab.m = m;
    tab.ncols = total;
    tab.T.resize(m, total + 1);
    tab.T.leftCols(n) = A;
    tab.T.middleCols(n, m) = Eigen::MatrixXd::Identity(m, m);
    tab.T.col(total) = b;
    for (int i = 0; i < m; ++i) {
        if (tab.T(i, total) < 0.0) tab.T.row(i) = -tab.T.row(i);
        tab.T(i, n + i) = 1.0;  // re-set after possible row flip
    }
    tab.basis.resize(m);
    for (int i = 0; i < m; ++i) tab.basis[i] = n + i;

    SimplexResult res;

    // Phase 1: drive artificials to zero.
    Eigen::VectorXd c1 = Eigen::VectorXd::Zero(total);
    c1.tail(m).setOnes();
    std::vector<char> allow_all(total, 1);
    double obj1 = 0.0;
    std::string why;
    if (!run_simplex(tab, c1, allow_all, &obj1, &why)) {
        res.reason = "phase-1 " + why;
        return res;
    }
    const double feas_scale = 1.0 + b.cwiseAbs().maxCoeff();
    if (obj1 > 1e-8 * feas_scale) {
        res.reason = "infeasible (phase-1 residual " + std::to_string(obj1) + ")";
        return res;
    }
    // Pivot any artificial still in the basis out on a structural column.
    for (int i = 0; i < m; ++i) {
        if (tab.basis[i] < n) continue;
        int col = -1;
        for (int j = 0; j < n; ++j)
            if (std::abs(tab.T(i, j)) > 1e-9) {
                col = j;
                break;
            }
        if (col >= 0) tab.pivot(i, col);
        // else: redundant row; the artificial stays basic at zero and is
        // barred from re-entering below.
    }

    // Phase 2 on the structural columns only.
    Eigen::VectorXd c2 = Eigen::VectorXd::Zero(total);
    c2.head(n) = c;
    std::vector<char> allow(total, 0);
    for (int j = 0; j < n; ++j) allow[j] = 1;
    double obj2 = 0.0;
    if (!run_simplex(tab, c2, allow, &obj2, &why)) {
        res.reason = "phase-2 " + why;
        return res;
    }

    res.ok = true;
    res.objective = obj2;
    res.x = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < m; ++i)
        if (tab.basis[i] < n) res.x(tab.basis[i]) = tab.rhs(i);
    res.basis = tab.basis;
    return res;
}

Eigen::VectorXd recover_primal(const Eigen::MatrixXd& Phi, const Eigen::VectorXd& v,
                               const L1Result& lp) {
    const int G = static_cast<int>(Phi.rows());
    const int D = static_cast<int>(Phi.cols());
    // Exact route: the optimal vertex satisfies P(t_i) = s_i on the D basis
    // rows, degenerate basics included.
    if (static_cast<int>(lp.basis_rows.size()) == D) {
        Eigen::MatrixXd B(D, D);
        Eigen::VectorXd rhs(D);
        for (int k = 0; k < D; ++k) {
            B.row(k) = Phi.row(lp.basis_rows[k]);
            rhs(k) = lp.basis_signs[k];
        }
        Eigen::VectorXd c = B.colPivHouseholderQr().solve(rhs);
        const double scale = std::max(std::abs(lp.objective), 1e-300);
        if (c.allFinite() && std::abs(std::abs(v.dot(c)) - lp.objective) <= 1e-7 * scale) {
            if (v.dot(c) < 0) c = -c;
            return c;
        }
    }
    // Fallback: nonzero dual support plus a repair loop.
    const Eigen::VectorXd& y = lp.y;
    const double ymax = y.cwiseAbs().maxCoeff();
    std::vector<int> support;
    std::vector<double> sign;
    for (int i = 0; i < G; ++i) {
        if (std::abs(y(i)) > 1e-11 * ymax) {
            support.push_back(i);
            sign.push_back(y(i) > 0 ? 1.0 : -1.0);
        }
    }
    Eigen::VectorXd c = Eigen::VectorXd::Zero(D);
    for (int round = 0; round < D + 8; ++round) {
        Eigen::MatrixXd A(support.size(), D);
        Eigen::VectorXd rhs(support.size());
        for (std::size_t k = 0; k < support.size(); ++k) {
            A.row(k) = Phi.row(support[k]);
            rhs(k) = sign[k];
        }
        c = A.colPivHouseholderQr().solve(rhs);
        Eigen::VectorXd vals = Phi * c;
        int worst = -1;
        double worst_excess = 1e-10;
        for (int i = 0; i < G; ++i) {
            const double excess = std::abs(vals(i)) - 1.0;
            if (excess > worst_excess) {
                worst_excess = excess;
                worst = i;
            }
        }
        if (worst < 0) break;
        bool already = false;
        for (int s : support)
            if (s == worst) already = true;
        if (already) break;
        support.push_back(worst);
        sign.push_back(vals(worst) > 0 ? 1.0 : -1.0);
    }
    if (v.dot(c) < 0) c = -c;
    return c;
}

namespace {

// Warm start for the l1 dual: pick D well-conditioned rows of Phi by QR
// column pivoting, solve for y on them, and seed the tableau with the
// matching u/w columns. Skips phase 1 entirely when it succeeds.
bool crash_solve(const Eigen::MatrixXd& Phi, const Eigen::VectorXd& v, L1Result* res) {
    const int G = static_cast<int>(Phi.rows());
    const int D = static_cast<int>(Phi.cols());
    if (G < D) return false;

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Phi.transpose());
    if (qr.rank() < D) return false;
    std::vector<int> rows(D);
    for (int k = 0; k < D; ++k) rows[k] = qr.colsPermutation().indices()(k);

    Eigen::MatrixXd B(D, D);
    for (int k = 0; k < D; ++k) B.row(k) = Phi.row(rows[k]);
    Eigen::VectorXd yB = B.transpose().fullPivLu().solve(v);
    if (!yB.allFinite()) return false;

    Tableau tab;
    tab.m = D;
    tab.ncols = 2 * G;
    tab.T.resize(D, 2 * G + 1);
    tab.T.leftCols(G) = Phi.transpose();
    tab.T.middleCols(G, G) = -Phi.transpose();
    tab.T.col(2 * G) = v;
    tab.basis.assign(D, -1);

    // Pivot the chosen columns in (plain elimination with row choice by
    // largest available pivot).
    std::vector<char> row_used(D, 0);
    for (int k = 0; k < D; ++k) {
        const int col = (yB(k) >= 0.0) ? rows[k] : G + rows[k];
        int best_row = -1;
        double best = 1e-9;
        for (int i = 0; i < D; ++i) {
            if (row_used[i]) continue;
            if (std::abs(tab.T(i, col)) > best) {
                best = std::abs(tab.T(i, col));
                best_row = i;
            }
        }
        if (best_row < 0) return false;
        row_used[best_row] = 1;
        tab.pivot(best_row, col);
    }
    for (int i = 0; i < D; ++i)
        if (tab.rhs(i) < -1e-9) return false;  // crash basis infeasible

    Eigen::VectorXd cost = Eigen::VectorXd::Ones(2 * G);
    std::vector<char> allow(2 * G, 1);
    double obj = 0.0;
    if (!run_simplex(tab, cost, allow, &obj)) return false;

    res->ok = true;
    res->objective = obj;
    res->y = Eigen::VectorXd::Zero(G);
    for (int i = 0; i < D; ++i) {
        const int b = tab.basis[i];
        if (b < G) {
            res->y(b) += tab.rhs(i);
            res->basis_rows.push_back(b);
            res->basis_signs.push_back(1.0);
        } else {
            res->y(b - G) -= tab.rhs(i);
            res->basis_rows.push_back(b - G);
            res->basis_signs.push_back(-1.0);
        }
    }
    return true;
}

}  // namespace

L1Result l1_min_dual(const Eigen::MatrixXd& Phi, const Eigen::VectorXd& v) {
    // Deterministic right-hand-side perturbation: breaks the degenerate
    // vertices that make the simplex cycle, at a ~1e-12 relative cost.
    Eigen::VectorXd vp = v;
    const double pscale = 1e-12 * v.cwiseAbs().maxCoeff();
    for (int j = 0; j < vp.size(); ++j) vp(j) += pscale * ((j % 7) + 1) / 7.0;

    L1Result res;
    if (crash_solve(Phi, vp, &res)) return res;

    const int G = static_cast<int>(Phi.rows());
    Eigen::MatrixXd A(static_cast<int>(Phi.cols()), 2 * G);
    A.leftCols(G) = Phi.transpose();
    A.rightCols(G) = -Phi.transpose();
    Eigen::VectorXd c = Eigen::VectorXd::Ones(2 * G);

    SimplexResult s = simplex_solve(A, vp, c);
    if (!s.ok) {
        res.reason = s.reason;
        return res;
    }
    res.ok = true;
    res.objective = s.objective;
    res.y = s.x.head(G) - s.x.tail(G);
    for (int col : s.basis) {
        if (col < G) {
            res.basis_rows.push_back(col);
            res.basis_signs.push_back(1.0);
        } else if (col < 2 * G) {
            res.basis_rows.push_back(col - G);
            res.basis_signs.push_back(-1.0);
        }
        // artificial basics (redundant rows) are dropped; the recovery then
        // falls back to the support route
    }
    if (static_cast<int>(res.basis_rows.size()) != static_cast<int>(Phi.cols())) {
        res.basis_rows.clear();
        res.basis_signs.clear();
    }
    return res;
}

}  // namespace sharpconst::detail
