#pragma once

#include <string>
#include <vector>

#include "sharpconst/poly.hpp"

namespace sharpconst {

enum class OperatorKind {
    BesselAtZero,          // (Be_nu)^N (.)(0) on even polynomials
    GegenbauerAtOne,       // (Ge_lambda)^N (.)(1)
    Identity,              // point evaluation at `point`
    DerivativeAtZero,      // P^{(power)}(0)
    LaplacianAtZero,       // Delta^N (.)(0), multivariate
    SphericalLaplacianAt,  // delta_x^N (.)(pole), multivariate on the sphere
};

/// A point-evaluation functional ell(P) = D(P)(a). power is the operator
/// iteration count N (or the derivative order for DerivativeAtZero); every
/// kind with power 0 reduces to point evaluation.
struct OperatorSpec {
    OperatorKind kind = OperatorKind::Identity;
    int power = 0;
    double nu = 0.0;
    double lambda = 0.0;
    double point = 0.0;
    std::vector<double> pole;  // unit vector, SphericalLaplacianAt only

    static OperatorSpec bessel_at_zero(double nu, int N);
    static OperatorSpec gegenbauer_at_one(double lambda, int N);
    static OperatorSpec identity(double a);
    static OperatorSpec derivative_at_zero(int k);
    static OperatorSpec laplacian_at_zero(int N);
    static OperatorSpec spherical_laplacian_at(std::vector<double> pole, int N);

    std::string describe() const;
};

/// l-fold Bessel operator Be_nu(g) = g'' + (2 nu + 1) g' / t on an even
/// polynomial, as exact coefficient arithmetic: the closed form multiplies
/// coefficient c_{p+l} by 2^{2l} prod_{d=1}^{l} (p+d)(p+d+nu).
EvenPolyCoeffs bessel_apply(const EvenPolyCoeffs& p, double nu, int l);

/// (Be_nu)^N (p)(0) = 2^{2N} prod_{d=1}^{N} d (d + nu) c_N; zero when
/// N exceeds the half degree.
double bessel_at_zero(const EvenPolyCoeffs& p, double nu, int N);

/// N-fold Gegenbauer operator applied spectrally: coefficient k of a
/// Gegenbauer(lambda)-basis polynomial picks up (-k(k+2 lambda))^N.
PolyCoeffs1D gegenbauer_apply(const PolyCoeffs1D& q, int N);

/// (Ge_lambda)^N (q)(1) after conversion to the Gegenbauer(lambda) basis.
double gegenbauer_at_one(const PolyCoeffs1D& q, double lambda, int N);

/// Conjugated operator D_{nu,b} of the quadratic substitution:
/// (b^2/4) [ (1 - t^2/b^2) g'' + ((2 nu + 1) - (4 nu + 3) t^2 / b^2) g'/t ].
/// g'/t on even polynomials is the exact index shift 2p c_p t^{2p-2}.
EvenPolyCoeffs d_nu_b_apply(const EvenPolyCoeffs& g, double nu, double b);

/// Degree-2K Taylor truncation of the normalized Bessel eigenfunction
/// t^{-nu} J_nu(sqrt(c) t), scaled so the constant term is 1. Satisfies
/// Be_nu(f) = -c f termwise; used in the eigenvalue property tests.
EvenPolyCoeffs bessel_j_even_series(double nu, double c, int K);

}  // namespace sharpconst
