#pragma once

#include <functional>
#include <limits>
#include <vector>

namespace sharpconst {

/// Weight |t|^alpha (1 - t^2)^beta on a symmetric interval [-c, c] together
/// with the integrability exponent p in (0, inf]. beta != 0 requires c == 1
/// (the (1 - t^2) factor only makes sense on the unit interval).
struct WeightSpec {
    double alpha = 0.0;
    double beta = 0.0;
    double half_width = 1.0;
    double p = 2.0;

    static constexpr double inf() { return std::numeric_limits<double>::infinity(); }

    static WeightSpec jacobi(double alpha, double beta, double p) {
        WeightSpec w;
        w.alpha = alpha;
        w.beta = beta;
        w.p = p;
        w.validate();
        return w;
    }
    static WeightSpec power_on(double alpha, double p, double half_width) {
        WeightSpec w;
        w.alpha = alpha;
        w.half_width = half_width;
        w.p = p;
        w.validate();
        return w;
    }

    double p_tilde() const { return p < 1.0 ? p : 1.0; }
    bool is_sup() const { return p == inf(); }
    void validate() const;
};

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int exactness_degree = 0;
};

/// Gauss rule for integral_0^1 f(u) u^{a_exp} (1-u)^{b_exp} du, exact for
/// polynomials of degree <= 2 n_nodes - 1. Nodes ascend strictly inside (0,1).
/// Rules are cached; the cache is safe under concurrent readers.
QuadratureRule gauss_jacobi(int n_nodes, double a_exp, double b_exp);

struct NormResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// (integral |f|^p mu)^{1/p} over [-c, c] by adaptive node-doubling
/// Gauss-Jacobi. When `f_even` is set the even-symmetry substitution u = t^2
/// maps the weight onto a single Jacobi rule. Doubling stops when the
/// successive relative change drops below tol; the last change is returned as
/// the error estimate. Requires p < inf.
NormResult weighted_lp_norm_full(const std::function<double(double)>& f, const WeightSpec& w,
                                 double tol = 1e-9, bool f_even = false);
double weighted_lp_norm(const std::function<double(double)>& f, const WeightSpec& w,
                        double tol = 1e-9, bool f_even = false);

/// ||f||_{p,mu} for a polynomial f of known degree. The integral is split at
/// the sign changes of f and each panel gets a Gauss-Jacobi rule matched to
/// the |.|^p endpoint powers, so every panel integrand is analytic. Much
/// faster and more accurate than the node-doubling ladder when |f|^p has
/// kinks (p below an even integer).
double polynomial_lp_norm(const std::function<double(double)>& f, int degree,
                          const WeightSpec& w, bool f_even, double tol = 1e-12);

struct SupResult {
    double value = 0.0;
    double argmax = 0.0;
};

/// max |f| on [lo, hi]: dense Chebyshev-point sampling (8 deg + 64 points when
/// a degree hint is given, else 4096) followed by golden-section refinement
/// around each bracketed local maximum.
SupResult sup_norm(const std::function<double(double)>& f, double lo, double hi,
                   double tol = 1e-12, int degree_hint = -1);

/// Arguments of all local maxima of |f| (including endpoints), refined as in
/// sup_norm. Used by the exchange solver to grow its constraint grid.
std::vector<double> local_maxima_of_abs(const std::function<double(double)>& f, double lo,
                                        double hi, double tol = 1e-12, int degree_hint = -1);

}  // namespace sharpconst
