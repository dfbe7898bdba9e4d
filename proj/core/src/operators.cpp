#include "sharpconst/operators.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sharpconst/errors.hpp"

namespace sharpconst {

OperatorSpec OperatorSpec::bessel_at_zero(double nu, int N) {
    if (nu < -0.5) throw std::invalid_argument("Bessel operator needs nu >= -1/2");
    if (N < 0) throw std::invalid_argument("negative operator power");
    OperatorSpec op;
    op.kind = OperatorKind::BesselAtZero;
    op.nu = nu;
    op.power = N;
    return op;
}

OperatorSpec OperatorSpec::gegenbauer_at_one(double lambda, int N) {
    if (lambda < -0.5) throw std::invalid_argument("Gegenbauer operator needs lambda >= -1/2");
    if (N < 0) throw std::invalid_argument("negative operator power");
    OperatorSpec op;
    op.kind = OperatorKind::GegenbauerAtOne;
    op.lambda = lambda;
    op.power = N;
    op.point = 1.0;
    return op;
}

OperatorSpec OperatorSpec::identity(double a) {
    OperatorSpec op;
    op.kind = OperatorKind::Identity;
    op.point = a;
    return op;
}

OperatorSpec OperatorSpec::derivative_at_zero(int k) {
    if (k < 0) throw std::invalid_argument("negative derivative order");
    OperatorSpec op;
    op.kind = OperatorKind::DerivativeAtZero;
    op.power = k;
    return op;
}

OperatorSpec OperatorSpec::laplacian_at_zero(int N) {
    if (N < 0) throw std::invalid_argument("negative operator power");
    OperatorSpec op;
    op.kind = OperatorKind::LaplacianAtZero;
    op.power = N;
    return op;
}

OperatorSpec OperatorSpec::spherical_laplacian_at(std::vector<double> pole, int N) {
    if (N < 0) throw std::invalid_argument("negative operator power");
    OperatorSpec op;
    op.kind = OperatorKind::SphericalLaplacianAt;
    op.pole = std::move(pole);
    op.power = N;
    return op;
}

std::string OperatorSpec::describe() const {
    std::ostringstream os;
    switch (kind) {
        case OperatorKind::BesselAtZero:
            os << "(Be_" << nu << ")^" << power << " at 0";
            break;
        case OperatorKind::GegenbauerAtOne:
            os << "(Ge_" << lambda << ")^" << power << " at 1";
            break;
        case OperatorKind::Identity:
            os << "eval at " << point;
            break;
        case OperatorKind::DerivativeAtZero:
            os << "d^" << power << "/dt^" << power << " at 0";
            break;
        case OperatorKind::LaplacianAtZero:
            os << "Delta^" << power << " at 0";
            break;
        case OperatorKind::SphericalLaplacianAt:
            os << "delta^" << power << " at pole";
            break;
    }
    return os.str();
}

EvenPolyCoeffs bessel_apply(const EvenPolyCoeffs& p, double nu, int l) {
    if (nu < -0.5) throw std::invalid_argument("bessel_apply: nu >= -1/2 required");
    if (l < 0) throw std::invalid_argument("bessel_apply: l >= 0 required");
    if (l == 0) return p;
    const int h = p.half_degree();
    const int out_h = std::max(h - l, 0);
    std::vector<double> out(out_h + 1, 0.0);
    const double two_2l = std::pow(4.0, l);
    for (int q = 0; q <= out_h; ++q) {
        double prod = 1.0;
        for (int d = 1; d <= l; ++d) prod *= (q + d) * (q + d + nu);
        out[q] = two_2l * prod * p.coeff(q + l);
    }
    return EvenPolyCoeffs(std::move(out));
}

double bessel_at_zero(const EvenPolyCoeffs& p, double nu, int N) {
    if (nu < -0.5) throw std::invalid_argument("bessel_at_zero: nu >= -1/2 required");
    if (N < 0) throw std::invalid_argument("bessel_at_zero: N >= 0 required");
    if (N > p.half_degree()) return 0.0;
    double prod = 1.0;
    for (int d = 1; d <= N; ++d) prod *= d * (d + nu);
    return std::pow(4.0, N) * prod * p.coeff(N);
}

PolyCoeffs1D gegenbauer_apply(const PolyCoeffs1D& q, int N) {
    if (q.basis() != PolyBasis::Gegenbauer)
        throw std::invalid_argument("gegenbauer_apply: polynomial must be in a Gegenbauer basis");
    if (N < 0) throw std::invalid_argument("gegenbauer_apply: N >= 0 required");
    if (N == 0) return q;
    const double lambda = q.lambda();
    std::vector<double> out = q.coeffs();
    for (int k = 0; k < static_cast<int>(out.size()); ++k) {
        const double eig = -static_cast<double>(k) * (k + 2.0 * lambda);
        out[k] *= std::pow(eig, N);
    }
    return PolyCoeffs1D::gegenbauer(lambda, std::move(out));
}

double gegenbauer_at_one(const PolyCoeffs1D& q, double lambda, int N) {
    if (lambda < -0.5) throw std::invalid_argument("gegenbauer_at_one: lambda >= -1/2 required");
    const PolyCoeffs1D g = q.to_gegenbauer(lambda);
    double acc = 0.0;
    for (int k = 0; k <= g.degree(); ++k) {
        const double eig = -static_cast<double>(k) * (k + 2.0 * lambda);
        const double factor = (N == 0) ? 1.0 : std::pow(eig, N);
        acc += factor * g.coeff(k) * gegenbauer_at_one(lambda, k);
    }
    return acc;
}

EvenPolyCoeffs d_nu_b_apply(const EvenPolyCoeffs& g, double nu, double b) {
    if (b == 0.0) throw ZeroScale("d_nu_b_apply: b = 0");
    if (nu < -0.5) throw std::invalid_argument("d_nu_b_apply: nu >= -1/2 required");
    // Coefficient of t^{2q}:
    //   b^2 (q+1)(q + nu + 1) c_{q+1} - q (q + 2 nu + 1) c_q
    const int h = g.half_degree();
    std::vector<double> out(h + 1, 0.0);
    const double b2 = b * b;
    for (int q = 0; q <= h; ++q) {
        out[q] = b2 * (q + 1.0) * (q + nu + 1.0) * g.coeff(q + 1) -
                 q * (q + 2.0 * nu + 1.0) * g.coeff(q);
    }
    return EvenPolyCoeffs(std::move(out));
}

EvenPolyCoeffs bessel_j_even_series(double nu, double c, int K) {
    if (K < 1) throw std::invalid_argument("bessel_j_even_series: K >= 1 required");
    if (c < 0.0) throw std::invalid_argument("bessel_j_even_series: c >= 0 required");
    std::vector<double> out(K + 1);
    out[0] = 1.0;
    for (int k = 0; k < K; ++k)
        out[k + 1] = -c * out[k] / ((2.0 * k + 2.0) * (2.0 * k + 2.0 + 2.0 * nu));
    return EvenPolyCoeffs(std::move(out));
}

}  // namespace sharpconst
