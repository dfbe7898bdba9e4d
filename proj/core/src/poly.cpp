#include "sharpconst/poly.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "sharpconst/errors.hpp"

namespace sharpconst {

namespace {

void check_degree(std::size_t ncoeffs) {
    if (ncoeffs == 0) throw std::invalid_argument("empty coefficient vector");
    if (static_cast<int>(ncoeffs) - 1 > kMaxPolyDegree)
        throw std::invalid_argument("polynomial degree exceeds cap of 200");
}

// Monomial coefficients of the Gegenbauer basis functions G_0..G_n by the
// three-term recurrence. For lambda == 0 these are Chebyshev T_k.
std::vector<std::vector<double>> gegenbauer_monomial_table(double lambda, int n) {
    std::vector<std::vector<double>> g(n + 1);
    g[0] = {1.0};
    if (n == 0) return g;
    g[1] = (lambda == 0.0) ? std::vector<double>{0.0, 1.0}
                           : std::vector<double>{0.0, 2.0 * lambda};
    for (int k = 1; k < n; ++k) {
        // G_{k+1} = alpha_k t G_k + beta_k G_{k-1}
        double alpha, beta;
        if (lambda == 0.0) {
            alpha = 2.0;
            beta = -1.0;
        } else {
            alpha = 2.0 * (k + lambda) / (k + 1.0);
            beta = -(k + 2.0 * lambda - 1.0) / (k + 1.0);
        }
        std::vector<double> next(k + 2, 0.0);
        for (int j = 0; j <= k; ++j) next[j + 1] += alpha * g[k][j];
        for (int j = 0; j < k; ++j) next[j] += beta * g[k - 1][j];
        g[k + 1] = std::move(next);
    }
    return g;
}

}  // namespace

EvenPolyCoeffs::EvenPolyCoeffs(std::vector<double> coeffs) : c_(std::move(coeffs)) {
    check_degree(c_.size());
}

EvenPolyCoeffs EvenPolyCoeffs::zero(int half_degree) {
    if (half_degree < 0) throw std::invalid_argument("negative half degree");
    return EvenPolyCoeffs(std::vector<double>(half_degree + 1, 0.0));
}

double EvenPolyCoeffs::eval(double t) const {
    const double u = t * t;
    double acc = 0.0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * u + c_[i];
    return acc;
}

PolyCoeffs1D::PolyCoeffs1D(PolyBasis basis, double lambda, std::vector<double> coeffs)
    : basis_(basis), lambda_(lambda), c_(std::move(coeffs)) {
    check_degree(c_.size());
}

PolyCoeffs1D PolyCoeffs1D::monomial(std::vector<double> coeffs) {
    return PolyCoeffs1D(PolyBasis::Monomial, 0.0, std::move(coeffs));
}

PolyCoeffs1D PolyCoeffs1D::gegenbauer(double lambda, std::vector<double> coeffs) {
    if (lambda <= -0.5) throw std::invalid_argument("Gegenbauer basis needs lambda > -1/2");
    return PolyCoeffs1D(PolyBasis::Gegenbauer, lambda, std::move(coeffs));
}

double PolyCoeffs1D::eval(double t) const {
    if (basis_ == PolyBasis::Monomial) {
        double acc = 0.0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
        return acc;
    }
    // Clenshaw backward recurrence for sum c_k G_k(t).
    const int n = degree();
    if (lambda_ == 0.0) {
        // Chebyshev: b_k = c_k + 2t b_{k+1} - b_{k+2}; S = b_0 - t b_1.
        double b1 = 0.0, b2 = 0.0;
        for (int k = n; k >= 0; --k) {
            const double b0 = c_[k] + 2.0 * t * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        return b1 - t * b2;
    }
    // G_{k+1} = alpha_k(t) G_k + beta_k G_{k-1} with G_1 = alpha_0(t) G_0,
    // so the Clenshaw sum collapses to b_0.
    auto alpha = [&](int k) { return 2.0 * (k + lambda_) / (k + 1.0); };
    auto beta = [&](int k) { return -(k + 2.0 * lambda_ - 1.0) / (k + 1.0); };
    double b1 = 0.0, b2 = 0.0;
    for (int k = n; k >= 0; --k) {
        const double b0 = c_[k] + alpha(k) * t * b1 + beta(k + 1) * b2;
        b2 = b1;
        b1 = b0;
    }
    return b1;
}

PolyCoeffs1D PolyCoeffs1D::to_monomial() const {
    if (basis_ == PolyBasis::Monomial) return *this;
    const int n = degree();
    auto table = gegenbauer_monomial_table(lambda_, n);
    std::vector<double> out(n + 1, 0.0);
    for (int k = 0; k <= n; ++k)
        for (int j = 0; j <= k; ++j) out[j] += c_[k] * table[k][j];
    return PolyCoeffs1D::monomial(std::move(out));
}

PolyCoeffs1D PolyCoeffs1D::to_gegenbauer(double lambda) const {
    if (basis_ == PolyBasis::Gegenbauer && lambda == lambda_) return *this;
    const PolyCoeffs1D mono = to_monomial();
    const int n = mono.degree();
    auto table = gegenbauer_monomial_table(lambda, n);
    // The change-of-basis matrix is upper triangular with column k = table[k];
    // back substitution from the top degree down.
    std::vector<double> rem = mono.coeffs();
    std::vector<double> out(n + 1, 0.0);
    for (int k = n; k >= 0; --k) {
        const double lead = table[k][k];
        const double ck = rem[k] / lead;
        out[k] = ck;
        for (int j = 0; j <= k; ++j) rem[j] -= ck * table[k][j];
    }
    return PolyCoeffs1D::gegenbauer(lambda, std::move(out));
}

double gegenbauer_at_one(double lambda, int k) {
    if (k < 0) throw std::invalid_argument("negative index");
    if (lambda <= -0.5) throw std::invalid_argument("lambda > -1/2 required");
    if (lambda == 0.0) return 1.0;  // Chebyshev basis, T_k(1) = 1
    // binom(k + 2 lambda - 1, k) = prod_{j=1}^{k} (2 lambda + j - 1) / j
    double prod = 1.0;
    for (int j = 1; j <= k; ++j) prod *= (2.0 * lambda + j - 1.0) / j;
    return prod;
}

EvenPolyCoeffs substitute_quadratic(const PolyCoeffs1D& r, double b) {
    if (b == 0.0) throw ZeroScale("substitute_quadratic: b = 0");
    const PolyCoeffs1D mono = r.to_monomial();
    const int n = mono.degree();
    const double s = -2.0 / (b * b);
    // Horner in the polynomial ring over u = t^2: result = R(1 + s u).
    std::vector<double> acc(1, 0.0);
    acc.reserve(n + 1);
    for (int k = n; k >= 0; --k) {
        std::vector<double> next(acc.size() + 1, 0.0);
        for (std::size_t j = 0; j < acc.size(); ++j) {
            next[j] += acc[j];          // *1
            next[j + 1] += s * acc[j];  // *(s u)
        }
        next[0] += mono.coeff(k);
        next.resize(std::min<std::size_t>(next.size(), n + 1));
        acc = std::move(next);
    }
    acc.resize(n + 1, 0.0);
    return EvenPolyCoeffs(std::move(acc));
}

PolyCoeffs1D invert_substitution(const EvenPolyCoeffs& p, double b) {
    if (b == 0.0) throw ZeroScale("invert_substitution: b = 0");
    // p(t) = V(t^2); R(y) = V(b^2 (1 - y) / 2), again by ring Horner.
    const int n = p.half_degree();
    const double c0 = b * b / 2.0;
    std::vector<double> acc(1, 0.0);
    for (int k = n; k >= 0; --k) {
        std::vector<double> next(acc.size() + 1, 0.0);
        for (std::size_t j = 0; j < acc.size(); ++j) {
            next[j] += c0 * acc[j];
            next[j + 1] -= c0 * acc[j];
        }
        next[0] += p.coeff(k);
        next.resize(std::min<std::size_t>(next.size(), n + 1));
        acc = std::move(next);
    }
    acc.resize(n + 1, 0.0);
    return PolyCoeffs1D::monomial(std::move(acc));
}

PolyCoeffs1D scale_argument(const PolyCoeffs1D& p, double s) {
    if (s == 0.0) throw ZeroScale("scale_argument: s = 0");
    const bool was_gegenbauer = p.basis() == PolyBasis::Gegenbauer;
    const double lambda = p.lambda();
    PolyCoeffs1D mono = p.to_monomial();
    std::vector<double> out = mono.coeffs();
    double pw = 1.0;
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] *= pw;
        pw /= s;
    }
    PolyCoeffs1D scaled = PolyCoeffs1D::monomial(std::move(out));
    return was_gegenbauer ? scaled.to_gegenbauer(lambda) : scaled;
}

EvenPolyCoeffs scale_argument(const EvenPolyCoeffs& p, double s) {
    if (s == 0.0) throw ZeroScale("scale_argument: s = 0");
    std::vector<double> out = p.coeffs();
    double pw = 1.0;
    const double inv = 1.0 / (s * s);
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] *= pw;
        pw *= inv;
    }
    return EvenPolyCoeffs(std::move(out));
}

EvenPolyCoeffs symmetrize_even(const PolyCoeffs1D& p) {
    if (p.basis() != PolyBasis::Monomial)
        return symmetrize_even(p.to_monomial());
    const int h = p.degree() / 2;
    std::vector<double> out(h + 1, 0.0);
    for (int j = 0; j <= h; ++j) out[j] = p.coeff(2 * j);
    return EvenPolyCoeffs(std::move(out));
}

}  // namespace sharpconst
