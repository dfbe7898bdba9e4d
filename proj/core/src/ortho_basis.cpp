#include "sharpconst/ortho_basis.hpp"

#include <cmath>
#include <stdexcept>

namespace sharpconst {

void OrthoBasis::build(const std::vector<double>& nodes, const std::vector<double>& weights,
                       int max_degree, bool symmetric) {
    const int G = static_cast<int>(nodes.size());
    const int D = max_degree;
    nodes_ = nodes;
    weights_ = weights;
    a_.assign(D + 1, 0.0);
    b_.assign(D + 2, 0.0);

    Eigen::Map<const Eigen::VectorXd> t(nodes.data(), G);
    Eigen::Map<const Eigen::VectorXd> w(weights.data(), G);

    Eigen::MatrixXd phi(G, D + 1);
    auto dot = [&](const Eigen::VectorXd& f, const Eigen::VectorXd& g) {
        return (w.array() * f.array() * g.array()).sum();
    };

    Eigen::VectorXd cur = Eigen::VectorXd::Ones(G);
    const double mu0 = dot(cur, cur);
    b_[0] = std::sqrt(mu0);
    phi.col(0) = cur / b_[0];

    for (int k = 0; k < D; ++k) {
        Eigen::VectorXd v = t.array() * phi.col(k).array();
        // Two-pass Gram-Schmidt against everything built so far; the
        // projection onto phi_k and phi_{k-1} carries the recurrence.
        double ak = 0.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (int j = 0; j <= k; ++j) {
                const double h = dot(v, phi.col(j));
                v -= h * phi.col(j);
                if (j == k) ak += h;
            }
        }
        a_[k] = symmetric ? 0.0 : ak;
        const double norm = std::sqrt(dot(v, v));
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw std::runtime_error("OrthoBasis: weight cannot support requested degree");
        b_[k + 1] = norm;
        phi.col(k + 1) = v / norm;
    }
}

std::shared_ptr<const OrthoBasis> OrthoBasis::unit_interval(int max_degree, double a_exp,
                                                            double b_exp) {
    if (max_degree < 0) throw std::invalid_argument("negative degree");
    QuadratureRule rule = gauss_jacobi(max_degree + 2, a_exp, b_exp);
    auto basis = std::shared_ptr<OrthoBasis>(new OrthoBasis());
    basis->build(rule.nodes, rule.weights, max_degree, false);
    return basis;
}

std::shared_ptr<const OrthoBasis> OrthoBasis::symmetric_interval(int max_degree, double alpha,
                                                                 double beta) {
    if (max_degree < 0) throw std::invalid_argument("negative degree");
    // Composite rule with nodes +-sqrt(u_i): exact for all polynomials of
    // degree <= 4M - 2 (odd parts vanish by symmetry).
    const int M = max_degree + 2;
    QuadratureRule half = gauss_jacobi(M, (alpha - 1.0) / 2.0, beta);
    std::vector<double> nodes(2 * M), weights(2 * M);
    for (int i = 0; i < M; ++i) {
        const double r = std::sqrt(half.nodes[i]);
        nodes[M - 1 - i] = -r;
        nodes[M + i] = r;
        weights[M - 1 - i] = 0.5 * half.weights[i];
        weights[M + i] = 0.5 * half.weights[i];
    }
    auto basis = std::shared_ptr<OrthoBasis>(new OrthoBasis());
    basis->build(nodes, weights, max_degree, true);
    return basis;
}

void OrthoBasis::eval(double t, double* out) const {
    const int D = max_degree();
    out[0] = 1.0 / b_[0];
    if (D == 0) return;
    out[1] = (t - a_[0]) * out[0] / b_[1];
    for (int k = 1; k < D; ++k)
        out[k + 1] = ((t - a_[k]) * out[k] - b_[k] * out[k - 1]) / b_[k + 1];
}

Eigen::VectorXd OrthoBasis::eval_vector(double t) const {
    Eigen::VectorXd out(size());
    eval(t, out.data());
    return out;
}

Eigen::MatrixXd OrthoBasis::eval_jet(double t, int order) const {
    const int D = max_degree();
    Eigen::MatrixXd jet = Eigen::MatrixXd::Zero(order + 1, D + 1);
    jet(0, 0) = 1.0 / b_[0];
    for (int k = 0; k < D; ++k) {
        for (int j = 0; j <= order; ++j) {
            double val = (t - a_[k]) * jet(j, k);
            if (j > 0) val += j * jet(j - 1, k);
            if (k > 0) val -= b_[k] * jet(j, k - 1);
            jet(j, k + 1) = val / b_[k + 1];
        }
    }
    return jet;
}

double OrthoBasis::eval_sum(const Eigen::VectorXd& coeffs, double t) const {
    Eigen::VectorXd phi = eval_vector(t);
    const int n = std::min<int>(coeffs.size(), phi.size());
    double acc = 0.0;
    for (int k = 0; k < n; ++k) acc += coeffs[k] * phi[k];
    return acc;
}

}  // namespace sharpconst
