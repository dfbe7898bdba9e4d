#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sharpconst/operators.hpp"
#include "sharpconst/ortho_basis.hpp"
#include "sharpconst/poly.hpp"
#include "sharpconst/quadrature.hpp"

namespace sharpconst {

enum class SpaceKind { EvenPoly, FullPoly };

/// Univariate weighted extremal problem: the sharp constant
///     sup |ell(P)| / ||P||_{p, mu}
/// over the even (half-degree n) or full (degree n) polynomial space on
/// [-1,1], with ell the point-evaluation functional described by `functional`.
struct ExtremalProblem {
    SpaceKind space = SpaceKind::FullPoly;
    int degree = 0;  // half-degree for EvenPoly
    WeightSpec weight;
    OperatorSpec functional;
    std::string label;

    static ExtremalProblem even(int half_degree, WeightSpec w, OperatorSpec op,
                                std::string label = {});
    static ExtremalProblem full(int degree, WeightSpec w, OperatorSpec op,
                                std::string label = {});

    int dimension() const { return degree + 1; }
};

struct SharpConstantResult {
    double value = 0.0;
    Eigen::VectorXd extremizer;  // coefficients in `basis`
    std::shared_ptr<const OrthoBasis> basis;
    SpaceKind space = SpaceKind::FullPoly;
    int degree = 0;
    double lower_bound = 0.0;               // ratio of the returned extremizer
    std::optional<double> upper_bound;      // certified for p in {2, inf} only
    long iterations = 0;
    bool converged = false;
    bool degenerate_functional = false;

    /// Extremizer value at t (always in the t variable, also for even spaces).
    double eval_extremizer(double t) const;
    std::vector<double> extremizer_coeffs() const;
};

/// p = 2: Gram solve. value = sqrt(v^T G^{-1} v) with G assembled by exact
/// Gauss-Jacobi quadrature in the weight-matched orthonormal basis.
SharpConstantResult sharp_constant_p2(const ExtremalProblem& prob);

/// p = inf: exchange linear programming on a growing constraint grid; the LP
/// optimum of the final relaxation is a certified upper bound.
SharpConstantResult sharp_constant_pinf(const ExtremalProblem& prob);

/// 0 < p < inf: projected gradient descent with backtracking on the affine
/// slice ell(P) = 1, started from the p = 2 extremizer. For p < 1 the problem
/// is nonconvex; 16 multistarts are used and the result is reported as a
/// non-certified lower bound (converged = false).
SharpConstantResult sharp_constant_general_p(const ExtremalProblem& prob, double tol = 1e-8,
                                             std::uint64_t seed = 20240915);

/// Dispatch on prob.weight.p.
SharpConstantResult sharp_constant(const ExtremalProblem& prob, double tol = 1e-8);

/// |ell(extremizer)| / ||extremizer||_{p,mu} recomputed from scratch (the
/// certified lower-bound ratio of the returned polynomial).
double reevaluate_ratio(const ExtremalProblem& prob, const SharpConstantResult& res);

struct EndpointEquivalenceReport {
    int n = 0;
    double p = 2.0;
    std::vector<double> a_values;
    std::vector<double> constants;
    double max_constant = 0.0;
    double argmax_a = 0.0;
    bool endpoint_is_max = false;
};

/// Sharp Nikolskii constants of P |-> P(a) on L_p([-1,1]) for a sweep of
/// evaluation points; the maximum is expected at a = 1.
EndpointEquivalenceReport endpoint_equivalence_check(int n, double p);

}  // namespace sharpconst
