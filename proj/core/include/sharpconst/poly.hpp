#pragma once

#include <vector>

namespace sharpconst {

/// Degree bound for monomial-coefficient representations. Horner on monomial
/// coefficients is unstable well before this; conversions and evaluations for
/// degree > 30 should go through an orthogonal basis.
inline constexpr int kMaxPolyDegree = 200;

enum class PolyBasis { Monomial, Gegenbauer };

/// Even univariate polynomial sum_p c_p t^{2p}, stored by the coefficients of
/// t^{2p}. The trailing coefficient may be zero: half_degree() is a declared
/// bound, not the exact degree.
class EvenPolyCoeffs {
public:
    EvenPolyCoeffs() : c_{0.0} {}
    explicit EvenPolyCoeffs(std::vector<double> coeffs);
    static EvenPolyCoeffs zero(int half_degree);

    int half_degree() const { return static_cast<int>(c_.size()) - 1; }
    double coeff(int p) const {
        return (p >= 0 && p < static_cast<int>(c_.size())) ? c_[p] : 0.0;
    }
    const std::vector<double>& coeffs() const { return c_; }

    double eval(double t) const;

private:
    std::vector<double> c_;
};

/// Univariate polynomial in either the monomial basis or a Gegenbauer basis
/// C_k^lambda, lambda > -1/2. For lambda == 0 the classical normalization
/// degenerates (C_k^0 = 0 for k >= 1), so the basis functions are Chebyshev
/// T_k, which satisfy the same eigen-relation Ge_0(T_k) = -k^2 T_k.
class PolyCoeffs1D {
public:
    static PolyCoeffs1D monomial(std::vector<double> coeffs);
    static PolyCoeffs1D gegenbauer(double lambda, std::vector<double> coeffs);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    PolyBasis basis() const { return basis_; }
    double lambda() const { return lambda_; }
    double coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : 0.0;
    }
    const std::vector<double>& coeffs() const { return c_; }

    /// Horner (monomial) or Clenshaw (Gegenbauer).
    double eval(double t) const;

    PolyCoeffs1D to_monomial() const;
    PolyCoeffs1D to_gegenbauer(double lambda) const;

private:
    PolyCoeffs1D(PolyBasis basis, double lambda, std::vector<double> coeffs);
    PolyBasis basis_;
    double lambda_ = 0.0;
    std::vector<double> c_;
};

/// Value of the k-th Gegenbauer basis polynomial at t = 1. For lambda != 0
/// this is C_k^lambda(1) = binom(k + 2 lambda - 1, k), computed as a stable
/// product; for lambda == 0 the basis is Chebyshev and the value is 1.
double gegenbauer_at_one(double lambda, int k);

/// Coefficients of P(t) = R(1 - 2 b^{-2} t^2) for R in the monomial basis.
/// The result is even with half-degree equal to degree(R).
EvenPolyCoeffs substitute_quadratic(const PolyCoeffs1D& r, double b);

/// Inverse of substitute_quadratic: the unique R with R(1 - 2 b^{-2} t^2) = p.
PolyCoeffs1D invert_substitution(const EvenPolyCoeffs& p, double b);

/// Coefficients of t |-> p(t/s).
PolyCoeffs1D scale_argument(const PolyCoeffs1D& p, double s);
EvenPolyCoeffs scale_argument(const EvenPolyCoeffs& p, double s);

/// Even part (p(t) + p(-t))/2 of a monomial-basis polynomial.
EvenPolyCoeffs symmetrize_even(const PolyCoeffs1D& p);

}  // namespace sharpconst
