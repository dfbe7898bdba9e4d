#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "sharpconst/quadrature.hpp"

namespace sharpconst {

/// Orthonormal polynomial family phi_0..phi_D for a weight, produced by
/// Stieltjes orthogonalization on an exact Gauss rule and evaluated anywhere
/// through its three-term recurrence
///     phi_{k+1}(t) = ((t - a_k) phi_k(t) - b_k phi_{k-1}(t)) / b_{k+1}.
/// For the weight (1-t^2)^beta this reproduces the Gegenbauer family with
/// lambda = beta + 1/2 up to normalization; the |t|^alpha factor is folded
/// into the same construction.
class OrthoBasis {
public:
    /// Full polynomials on [-1,1], weight |t|^alpha (1-t^2)^beta.
    static std::shared_ptr<const OrthoBasis> symmetric_interval(int max_degree, double alpha,
                                                                double beta);
    /// Polynomials on [0,1], weight u^{a_exp} (1-u)^{b_exp}.
    static std::shared_ptr<const OrthoBasis> unit_interval(int max_degree, double a_exp,
                                                           double b_exp);

    int size() const { return static_cast<int>(a_.size()); }  // max_degree + 1
    int max_degree() const { return size() - 1; }

    /// phi_0(t)..phi_D(t).
    void eval(double t, double* out) const;
    Eigen::VectorXd eval_vector(double t) const;

    /// Rows j = 0..order hold phi_k^{(j)}(t) for all k.
    Eigen::MatrixXd eval_jet(double t, int order) const;

    double eval_sum(const Eigen::VectorXd& coeffs, double t) const;

    /// Quadrature rule used for the construction (exact for products of two
    /// basis members); in the basis's own variable.
    const std::vector<double>& quad_nodes() const { return nodes_; }
    const std::vector<double>& quad_weights() const { return weights_; }

    const std::vector<double>& recurrence_a() const { return a_; }
    const std::vector<double>& recurrence_b() const { return b_; }

private:
    OrthoBasis() = default;
    void build(const std::vector<double>& nodes, const std::vector<double>& weights,
               int max_degree, bool symmetric);

    std::vector<double> a_, b_;  // b_[0] = sqrt(mu0), phi_0 = 1 / b_[0]
    std::vector<double> nodes_, weights_;
};

}  // namespace sharpconst
