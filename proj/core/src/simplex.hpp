#pragma once

#include <Eigen/Dense>
#include <string>

namespace sharpconst::detail {

struct SimplexResult {
    bool ok = false;
    double objective = 0.0;
    Eigen::VectorXd x;
    std::vector<int> basis;  // basic column per row (may include artificials)
    std::string reason;
};

/// min c.x subject to A x = b, x >= 0; dense two-phase tableau simplex with
/// Bland anti-cycling fallback.
SimplexResult simplex_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                            const Eigen::VectorXd& c);

struct L1Result {
    bool ok = false;
    double objective = 0.0;     // min sum |y|
    Eigen::VectorXd y;          // size = rows of Phi
    std::vector<int> basis_rows;    // grid rows of the final basis
    std::vector<double> basis_signs;  // +1 for a u-column, -1 for a w-column
    std::string reason;
};

/// min sum_i |y_i|  s.t.  Phi^T y = v.  This is the dual of
/// max v.c s.t. |Phi c| <= 1 componentwise; the objectives coincide.
L1Result l1_min_dual(const Eigen::MatrixXd& Phi, const Eigen::VectorXd& v);

/// Primal recovery. When the final basis is all-structural the optimal
/// vertex solves P(t_i) = s_i exactly on the basis rows (complementary
/// slackness); otherwise falls back to the nonzero dual support with a
/// repair loop. The sign is normalized so that v.c >= 0.
Eigen::VectorXd recover_primal(const Eigen::MatrixXd& Phi, const Eigen::VectorXd& v,
                               const L1Result& lp);

}  // namespace sharpconst::detail
