#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "sharpconst/poly.hpp"

namespace sharpconst {

/// Multi-index with up to three components; unused trailing slots are zero.
using MultiIndex = std::array<int, 3>;

/// Multivariate polynomial sum_alpha c_alpha x^alpha of degree <= n in m
/// variables, m <= 3. `degree` is a declared bound.
class MultiPolyCoeffs {
public:
    MultiPolyCoeffs(int dim, int degree);
    static MultiPolyCoeffs monomial(int dim, MultiIndex alpha, double c = 1.0);

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    double coeff(const MultiIndex& alpha) const;
    void add_term(const MultiIndex& alpha, double c);
    const std::map<MultiIndex, double>& terms() const { return terms_; }

    double eval(const std::array<double, 3>& x) const;
    MultiPolyCoeffs partial(int j) const;
    MultiPolyCoeffs laplacian() const;

private:
    int dim_;
    int degree_;
    std::map<MultiIndex, double> terms_;
};

/// N-fold Laplacian by exact multi-index arithmetic.
MultiPolyCoeffs laplacian_apply(const MultiPolyCoeffs& P, int N);

/// P(A y): composition with a linear map (rows of A act on the coordinates).
MultiPolyCoeffs compose_linear(const MultiPolyCoeffs& P,
                               const std::array<std::array<double, 3>, 3>& A);

/// delta_x^N with delta_x(f)(x) = Delta(f(./|.|))(x) restricted to the sphere;
/// on a monomial of degree k this is Delta(x^alpha) - k (k + m - 2) x^alpha.
MultiPolyCoeffs spherical_laplacian_apply(const MultiPolyCoeffs& P, int N);

/// |S^{m-1}|_{m-1} = 2 pi^{m/2} / Gamma(m/2); |S^0|_0 = 2.
double sphere_surface_measure(int m);

/// Closed-form monomial moments (zero when any exponent is odd).
double sphere_monomial_moment(int m, const MultiIndex& alpha);
double ball_monomial_moment(int m, const MultiIndex& alpha);

/// L_p norms by spherical product quadrature (adaptive doubling for p < inf,
/// dense sampling with Newton polish for p = inf). m <= 3.
double ball_lp_norm(const MultiPolyCoeffs& P, double p, double tol = 1e-9);
double sphere_lp_norm(const MultiPolyCoeffs& P, double p, double tol = 1e-9);

/// Haar average over O(m): radial profile Q with Q(|x|) = mean of P over the
/// orbit of x, from the closed-form sphere moments.
EvenPolyCoeffs haar_symmetrize_full(const MultiPolyCoeffs& P);

/// Haar average over O(m, a) on the sphere: the zonal profile Q of degree
/// <= n with Q((x,a)) = mean of P over rotations fixing the unit vector a.
PolyCoeffs1D zonal_symmetrize(const MultiPolyCoeffs& P, const std::vector<double>& a);

struct DomainSpec {
    enum class Kind { Ball, Sphere };
    Kind kind = Kind::Ball;
    int m = 2;
    double p = 2.0;
    static DomainSpec ball(int m, double p);
    static DomainSpec sphere(int m, double p);
};

/// Ball: (2 / |S^{m-1}|)^{1/p}; sphere: (1 / |S^{m-2}|)^{1/p}; 1 for p = inf.
double reduction_factor(const DomainSpec& domain);

struct MultivarConstantResult {
    double value = 0.0;
    MultiPolyCoeffs extremizer{1, 0};
    double lower_bound = 0.0;
    std::optional<double> upper_bound;
    long iterations = 0;
    bool converged = false;
};

/// Sharp constant over the full multivariate coefficient space (no symmetry
/// assumed): Delta^N(.)(0) on the ball, delta_x^N(.)(pole) on the sphere.
/// Restricted to m in {2,3}, n <= 10, p in {2, inf}.
MultivarConstantResult multivariate_sharp_constant(int m, int n, int N, const DomainSpec& domain,
                                                   const std::vector<double>& pole = {});

}  // namespace sharpconst
