#include "sharpconst/multivar.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "sharpconst/errors.hpp"
#include "sharpconst/quadrature.hpp"
#include "simplex.hpp"

namespace sharpconst {

namespace {

int index_degree(const MultiIndex& a) { return a[0] + a[1] + a[2]; }

void check_dim(int m) {
    if (m < 1 || m > 3) throw UnsupportedDimension("dimension m must be 1, 2, or 3");
}

}  // namespace

MultiPolyCoeffs::MultiPolyCoeffs(int dim, int degree) : dim_(dim), degree_(degree) {
    check_dim(dim);
    if (degree < 0) throw std::invalid_argument("negative degree");
}

MultiPolyCoeffs MultiPolyCoeffs::monomial(int dim, MultiIndex alpha, double c) {
    MultiPolyCoeffs P(dim, index_degree(alpha));
    P.add_term(alpha, c);
    return P;
}

double MultiPolyCoeffs::coeff(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? 0.0 : it->second;
}

void MultiPolyCoeffs::add_term(const MultiIndex& alpha, double c) {
    for (int j = 0; j < 3; ++j) {
        if (alpha[j] < 0) throw std::invalid_argument("negative exponent");
        if (j >= dim_ && alpha[j] != 0)
            throw std::invalid_argument("exponent on an unused coordinate");
    }
    degree_ = std::max(degree_, index_degree(alpha));
    if (c == 0.0) return;
    auto [it, fresh] = terms_.emplace(alpha, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0.0) terms_.erase(it);
    }
}

double MultiPolyCoeffs::eval(const std::array<double, 3>& x) const {
    double pw[3][32];
    for (int j = 0; j < 3; ++j) {
        pw[j][0] = 1.0;
        for (int d = 1; d <= degree_ && d < 32; ++d) pw[j][d] = pw[j][d - 1] * x[j];
    }
    double acc = 0.0;
    for (const auto& [a, c] : terms_) acc += c * pw[0][a[0]] * pw[1][a[1]] * pw[2][a[2]];
    return acc;
}

MultiPolyCoeffs MultiPolyCoeffs::partial(int j) const {
    MultiPolyCoeffs out(dim_, std::max(degree_ - 1, 0));
    for (const auto& [a, c] : terms_) {
        if (a[j] == 0) continue;
        MultiIndex b = a;
        b[j] -= 1;
        out.add_term(b, c * a[j]);
    }
    return out;
}

MultiPolyCoeffs MultiPolyCoeffs::laplacian() const {
    MultiPolyCoeffs out(dim_, std::max(degree_ - 2, 0));
    for (const auto& [a, c] : terms_) {
        for (int j = 0; j < dim_; ++j) {
            if (a[j] < 2) continue;
            MultiIndex b = a;
            b[j] -= 2;
            out.add_term(b, c * a[j] * (a[j] - 1));
        }
    }
    return out;
}

MultiPolyCoeffs laplacian_apply(const MultiPolyCoeffs& P, int N) {
    if (N < 0) throw std::invalid_argument("negative operator power");
    MultiPolyCoeffs out = P;
    for (int i = 0; i < N; ++i) out = out.laplacian();
    return out;
}

namespace {

MultiPolyCoeffs poly_multiply(const MultiPolyCoeffs& a, const MultiPolyCoeffs& b) {
    MultiPolyCoeffs out(a.dim(), a.degree() + b.degree());
    for (const auto& [ia, ca] : a.terms())
        for (const auto& [ib, cb] : b.terms())
            out.add_term({ia[0] + ib[0], ia[1] + ib[1], ia[2] + ib[2]}, ca * cb);
    return out;
}

}  // namespace

MultiPolyCoeffs compose_linear(const MultiPolyCoeffs& P,
                               const std::array<std::array<double, 3>, 3>& A) {
    const int m = P.dim();
    std::array<MultiPolyCoeffs, 3> rows{MultiPolyCoeffs(m, 1), MultiPolyCoeffs(m, 1),
                                        MultiPolyCoeffs(m, 1)};
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            MultiIndex e{0, 0, 0};
            e[j] = 1;
            rows[i].add_term(e, A[i][j]);
        }
    MultiPolyCoeffs out(m, P.degree());
    for (const auto& [alpha, c] : P.terms()) {
        MultiPolyCoeffs term = MultiPolyCoeffs::monomial(m, {0, 0, 0}, c);
        for (int i = 0; i < m; ++i)
            for (int rep = 0; rep < alpha[i]; ++rep) term = poly_multiply(term, rows[i]);
        for (const auto& [a, cf] : term.terms()) out.add_term(a, cf);
    }
    return out;
}

MultiPolyCoeffs spherical_laplacian_apply(const MultiPolyCoeffs& P, int N) {
    if (N < 0) throw std::invalid_argument("negative operator power");
    const int m = P.dim();
    MultiPolyCoeffs cur = P;
    for (int i = 0; i < N; ++i) {
        MultiPolyCoeffs next(m, cur.degree());
        for (const auto& [a, c] : cur.terms()) {
            const int k = index_degree(a);
            // Delta of the degree-0 homogeneous extension x^a / r^k, on r = 1:
            // Delta(x^a) - k (k + m - 2) x^a.
            for (int j = 0; j < m; ++j) {
                if (a[j] < 2) continue;
                MultiIndex b = a;
                b[j] -= 2;
                next.add_term(b, c * a[j] * (a[j] - 1));
            }
            next.add_term(a, -c * k * (k + m - 2.0));
        }
        cur = next;
    }
    return cur;
}

double sphere_surface_measure(int m) {
    if (m < 1) throw std::invalid_argument("m >= 1 required");
    if (m == 1) return 2.0;
    return 2.0 * std::pow(M_PI, m / 2.0) / std::tgamma(m / 2.0);
}

double sphere_monomial_moment(int m, const MultiIndex& alpha) {
    check_dim(m);
    for (int j = 0; j < m; ++j)
        if (alpha[j] % 2 == 1) return 0.0;
    if (m == 1) return 2.0;  // S^0 = {-1, 1} with counting measure
    double log_num = 0.0;
    for (int j = 0; j < m; ++j) log_num += std::lgamma((alpha[j] + 1.0) / 2.0);
    const int k = index_degree(alpha);
    return 2.0 * std::exp(log_num - std::lgamma((k + m) / 2.0));
}

double ball_monomial_moment(int m, const MultiIndex& alpha) {
    return sphere_monomial_moment(m, alpha) / (index_degree(alpha) + m);
}

EvenPolyCoeffs haar_symmetrize_full(const MultiPolyCoeffs& P) {
    const int m = P.dim();
    const double surface = sphere_surface_measure(m);
    const int h = P.degree() / 2;
    std::vector<double> out(h + 1, 0.0);
    for (const auto& [a, c] : P.terms()) {
        const double moment = sphere_monomial_moment(m, a);
        if (moment == 0.0) continue;
        out[index_degree(a) / 2] += c * moment / surface;
    }
    return EvenPolyCoeffs(std::move(out));
}

namespace {

struct Frame {
    std::array<double, 3> a, b, c;
};

Frame orthonormal_frame(const std::vector<double>& a_in, int m) {
    Frame f{};
    double norm = 0.0;
    for (int j = 0; j < m; ++j) norm += a_in[j] * a_in[j];
    norm = std::sqrt(norm);
    if (std::abs(norm - 1.0) > 1e-9) throw std::invalid_argument("pole must be a unit vector");
    for (int j = 0; j < m; ++j) f.a[j] = a_in[j] / norm;
    if (m == 2) {
        f.b = {-f.a[1], f.a[0], 0.0};
        return f;
    }
    // pick the coordinate axis least aligned with a
    int least = 0;
    for (int j = 1; j < 3; ++j)
        if (std::abs(f.a[j]) < std::abs(f.a[least])) least = j;
    std::array<double, 3> e{};
    e[least] = 1.0;
    // b = normalize(e - (e.a) a); c = a x b
    const double d = e[0] * f.a[0] + e[1] * f.a[1] + e[2] * f.a[2];
    double bn = 0.0;
    for (int j = 0; j < 3; ++j) {
        f.b[j] = e[j] - d * f.a[j];
        bn += f.b[j] * f.b[j];
    }
    bn = std::sqrt(bn);
    for (int j = 0; j < 3; ++j) f.b[j] /= bn;
    f.c = {f.a[1] * f.b[2] - f.a[2] * f.b[1], f.a[2] * f.b[0] - f.a[0] * f.b[2],
           f.a[0] * f.b[1] - f.a[1] * f.b[0]};
    return f;
}

}  // namespace

PolyCoeffs1D zonal_symmetrize(const MultiPolyCoeffs& P, const std::vector<double>& a) {
    const int m = P.dim();
    if (m != 2 && m != 3) throw UnsupportedDimension("zonal_symmetrize: m in {2,3}");
    if (static_cast<int>(a.size()) != m) throw std::invalid_argument("pole dimension mismatch");
    const int n = P.degree();
    const Frame frame = orthonormal_frame(a, m);

    QuadratureRule gl = gauss_jacobi(n + 1, 0.0, 0.0);
    std::vector<double> us(n + 1), q(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double u = 2.0 * gl.nodes[i] - 1.0;
        us[i] = u;
        const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
        if (m == 2) {
            std::array<double, 3> xp{u * frame.a[0] + s * frame.b[0],
                                     u * frame.a[1] + s * frame.b[1], 0.0};
            std::array<double, 3> xm{u * frame.a[0] - s * frame.b[0],
                                     u * frame.a[1] - s * frame.b[1], 0.0};
            q[i] = 0.5 * (P.eval(xp) + P.eval(xm));
        } else {
            const int M = 2 * n + 4;  // exact for trigonometric degree <= n
            double acc = 0.0;
            for (int k = 0; k < M; ++k) {
                const double psi = 2.0 * M_PI * k / M;
                std::array<double, 3> x{};
                for (int j = 0; j < 3; ++j)
                    x[j] = u * frame.a[j] +
                           s * (std::cos(psi) * frame.b[j] + std::sin(psi) * frame.c[j]);
                acc += P.eval(x);
            }
            q[i] = acc / M;
        }
    }
    // Interpolate in the Legendre basis at the Gauss nodes.
    Eigen::MatrixXd V(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) {
        double p0 = 1.0, p1 = us[i];
        for (int k = 0; k <= n; ++k) {
            const double pk = (k == 0) ? p0 : p1;
            V(i, k) = pk;
            if (k >= 1) {
                const double pnext = ((2.0 * k + 1.0) * us[i] * p1 - k * p0) / (k + 1.0);
                p0 = p1;
                p1 = pnext;
            }
        }
    }
    Eigen::VectorXd rhs = Eigen::Map<Eigen::VectorXd>(q.data(), n + 1);
    Eigen::VectorXd coef = V.colPivHouseholderQr().solve(rhs);
    std::vector<double> leg(coef.data(), coef.data() + n + 1);
    return PolyCoeffs1D::gegenbauer(0.5, std::move(leg)).to_monomial();
}

DomainSpec DomainSpec::ball(int m, double p) {
    check_dim(m);
    return DomainSpec{Kind::Ball, m, p};
}

DomainSpec DomainSpec::sphere(int m, double p) {
    check_dim(m);
    if (m < 2) throw UnsupportedDimension("sphere domain needs m >= 2");
    return DomainSpec{Kind::Sphere, m, p};
}

double reduction_factor(const DomainSpec& domain) {
    if (domain.p == WeightSpec::inf()) return 1.0;
    if (domain.kind == DomainSpec::Kind::Ball)
        return std::pow(2.0 / sphere_surface_measure(domain.m), 1.0 / domain.p);
    return std::pow(1.0 / sphere_surface_measure(domain.m - 1), 1.0 / domain.p);
}

// ---------------------------------------------------------------------------
// Product quadrature norms
// ---------------------------------------------------------------------------

namespace {

double ball_p_integral(const MultiPolyCoeffs& P, double p, int level) {
    const int m = P.dim();
    if (m == 2) {
        QuadratureRule rr = gauss_jacobi(level, 1.0, 0.0);
        const int M = 4 * level;
        double acc = 0.0;
        for (int i = 0; i < level; ++i) {
            const double r = rr.nodes[i];
            double ring = 0.0;
            for (int k = 0; k < M; ++k) {
                const double th = 2.0 * M_PI * k / M;
                ring += std::pow(std::abs(P.eval({r * std::cos(th), r * std::sin(th), 0.0})), p);
            }
            acc += rr.weights[i] * ring * (2.0 * M_PI / M);
        }
        return acc;
    }
    QuadratureRule rr = gauss_jacobi(level, 2.0, 0.0);
    QuadratureRule cc = gauss_jacobi(level, 0.0, 0.0);
    const int M = 2 * level;
    double acc = 0.0;
    for (int i = 0; i < level; ++i) {
        const double r = rr.nodes[i];
        double shell = 0.0;
        for (int j = 0; j < level; ++j) {
            const double c = 2.0 * cc.nodes[j] - 1.0;
            const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
            double ring = 0.0;
            for (int k = 0; k < M; ++k) {
                const double ph = 2.0 * M_PI * k / M;
                ring += std::pow(
                    std::abs(P.eval({r * s * std::cos(ph), r * s * std::sin(ph), r * c})), p);
            }
            shell += 2.0 * cc.weights[j] * ring * (2.0 * M_PI / M);
        }
        acc += rr.weights[i] * shell;
    }
    return acc;
}

double sphere_p_integral(const MultiPolyCoeffs& P, double p, int level) {
    const int m = P.dim();
    if (m == 2) {
        const int M = 8 * level;
        double acc = 0.0;
        for (int k = 0; k < M; ++k) {
            const double th = 2.0 * M_PI * k / M;
            acc += std::pow(std::abs(P.eval({std::cos(th), std::sin(th), 0.0})), p);
        }
        return acc * 2.0 * M_PI / M;
    }
    QuadratureRule cc = gauss_jacobi(level, 0.0, 0.0);
    const int M = 2 * level;
    double acc = 0.0;
    for (int j = 0; j < level; ++j) {
        const double c = 2.0 * cc.nodes[j] - 1.0;
        const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        double ring = 0.0;
        for (int k = 0; k < M; ++k) {
            const double ph = 2.0 * M_PI * k / M;
            ring += std::pow(std::abs(P.eval({s * std::cos(ph), s * std::sin(ph), c})), p);
        }
        acc += 2.0 * cc.weights[j] * ring * (2.0 * M_PI / M);
    }
    return acc;
}

struct Peak {
    std::array<double, 3> x;
    double absval;
};

struct PolyDerivs {
    std::vector<MultiPolyCoeffs> grad;
    std::vector<std::vector<MultiPolyCoeffs>> hess;
};

PolyDerivs derivatives_of(const MultiPolyCoeffs& P) {
    const int m = P.dim();
    PolyDerivs d;
    for (int j = 0; j < m; ++j) d.grad.push_back(P.partial(j));
    d.hess.resize(m);
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) d.hess[j].push_back(d.grad[j].partial(k));
    return d;
}

// Lagrange-Newton for stationary points of s P on the unit sphere |x| = 1.
std::array<double, 3> refine_on_sphere(const MultiPolyCoeffs& P, const PolyDerivs& dv,
                                       std::array<double, 3> x, double s, int m) {
    double lambda = 0.0;
    for (int j = 0; j < m; ++j) lambda += x[j] * s * dv.grad[j].eval(x);
    for (int iter = 0; iter < 50; ++iter) {
        Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m + 1, m + 1);
        Eigen::VectorXd F(m + 1);
        double h = -0.5;
        for (int j = 0; j < m; ++j) {
            F(j) = s * dv.grad[j].eval(x) - lambda * x[j];
            h += 0.5 * x[j] * x[j];
            for (int k = 0; k < m; ++k) J(j, k) = s * dv.hess[j][k].eval(x);
            J(j, j) -= lambda;
            J(j, m) = -x[j];
            J(m, j) = x[j];
        }
        F(m) = h;
        if (F.lpNorm<Eigen::Infinity>() < 1e-13) break;
        Eigen::VectorXd step = J.fullPivLu().solve(-F);
        if (!step.allFinite()) break;
        double len = step.head(m).norm();
        const double clamp = len > 0.3 ? 0.3 / len : 1.0;
        double norm = 0.0;
        for (int j = 0; j < m; ++j) {
            x[j] += clamp * step(j);
            norm += x[j] * x[j];
        }
        norm = std::sqrt(norm);
        for (int j = 0; j < m; ++j) x[j] /= norm;
        lambda += clamp * step(m);
    }
    return x;
}

// Newton for interior stationary points of s P; falls back to the sphere
// solver if the iterate leaves the ball.
std::array<double, 3> refine_in_ball(const MultiPolyCoeffs& P, const PolyDerivs& dv,
                                     std::array<double, 3> x, double s, int m) {
    for (int iter = 0; iter < 40; ++iter) {
        Eigen::VectorXd g(m);
        Eigen::MatrixXd H(m, m);
        for (int j = 0; j < m; ++j) {
            g(j) = s * dv.grad[j].eval(x);
            for (int k = 0; k < m; ++k) H(j, k) = s * dv.hess[j][k].eval(x);
        }
        if (g.lpNorm<Eigen::Infinity>() < 1e-13) break;
        Eigen::VectorXd step = H.fullPivLu().solve(-g);
        if (!step.allFinite()) break;
        const double len = step.norm();
        if (len > 0.3) step *= 0.3 / len;
        double norm = 0.0;
        for (int j = 0; j < m; ++j) {
            x[j] += step(j);
            norm += x[j] * x[j];
        }
        if (norm >= 1.0) {
            norm = std::sqrt(norm);
            for (int j = 0; j < m; ++j) x[j] /= norm;
            return refine_on_sphere(P, dv, x, s, m);
        }
    }
    return x;
}

void push_peak(std::vector<Peak>& peaks, const MultiPolyCoeffs& P, std::array<double, 3> x) {
    const double val = std::abs(P.eval(x));
    for (auto& pk : peaks) {
        double d2 = 0.0;
        for (int j = 0; j < 3; ++j) d2 += (pk.x[j] - x[j]) * (pk.x[j] - x[j]);
        if (d2 < 1e-14) {
            if (val > pk.absval) pk = {x, val};
            return;
        }
    }
    peaks.push_back({x, val});
}

std::vector<Peak> sphere_abs_peaks(const MultiPolyCoeffs& P, int m) {
    std::vector<Peak> peaks;
    const PolyDerivs dv = derivatives_of(P);
    if (m == 2) {
        auto f = [&](double th) { return P.eval({std::cos(th), std::sin(th), 0.0}); };
        // wrap-aware sampling over one period plus margins
        const auto args = local_maxima_of_abs(f, -0.5, 2.0 * M_PI + 0.5, 1e-14,
                                              std::max(2 * P.degree(), 4));
        for (double th : args) push_peak(peaks, P, {std::cos(th), std::sin(th), 0.0});
        return peaks;
    }
    const int nc = std::max(24, 4 * P.degree());
    const int np = 2 * nc;
    std::vector<std::vector<double>> vals(nc + 1, std::vector<double>(np));
    for (int i = 0; i <= nc; ++i) {
        const double c = -1.0 + 2.0 * i / nc;
        const double sr = std::sqrt(std::max(0.0, 1.0 - c * c));
        for (int k = 0; k < np; ++k) {
            const double ph = 2.0 * M_PI * k / np;
            vals[i][k] = std::abs(P.eval({sr * std::cos(ph), sr * std::sin(ph), c}));
        }
    }
    auto at = [&](int i, int k) { return vals[i][(k % np + np) % np]; };
    for (int i = 0; i <= nc; ++i) {
        const double c = -1.0 + 2.0 * i / nc;
        const double sr = std::sqrt(std::max(0.0, 1.0 - c * c));
        for (int k = 0; k < np; ++k) {
            bool is_max = true;
            for (int di = -1; di <= 1 && is_max; ++di) {
                if (i + di < 0 || i + di > nc) continue;
                for (int dk = -1; dk <= 1; ++dk) {
                    if (di == 0 && dk == 0) continue;
                    if (at(i + di, k + dk) > vals[i][k]) {
                        is_max = false;
                        break;
                    }
                }
            }
            if (!is_max) continue;
            const double ph = 2.0 * M_PI * k / np;
            std::array<double, 3> x{sr * std::cos(ph), sr * std::sin(ph), c};
            const double s = P.eval(x) >= 0 ? 1.0 : -1.0;
            std::array<double, 3> xr = refine_on_sphere(P, dv, x, s, 3);
            push_peak(peaks, P, std::abs(P.eval(xr)) >= vals[i][k] - 1e-12 ? xr : x);
        }
    }
    return peaks;
}

std::vector<Peak> ball_abs_peaks(const MultiPolyCoeffs& P, int m) {
    std::vector<Peak> peaks;
    const PolyDerivs dv = derivatives_of(P);
    // boundary peaks
    if (m == 2) {
        auto f = [&](double th) { return P.eval({std::cos(th), std::sin(th), 0.0}); };
        const auto args = local_maxima_of_abs(f, -0.5, 2.0 * M_PI + 0.5, 1e-14,
                                              std::max(2 * P.degree(), 4));
        for (double th : args) push_peak(peaks, P, {std::cos(th), std::sin(th), 0.0});
    } else {
        for (const Peak& pk : sphere_abs_peaks(P, 3)) push_peak(peaks, P, pk.x);
    }
    // interior candidates on a radial sweep, Newton-polished
    const int nr = std::max(8, 2 * P.degree());
    auto sweep = [&](const std::array<double, 3>& dir) {
        for (int i = 0; i < nr; ++i) {
            const double r = (i + 0.5) / nr;
            std::array<double, 3> x{r * dir[0], r * dir[1], r * dir[2]};
            const double s = P.eval(x) >= 0 ? 1.0 : -1.0;
            std::array<double, 3> xr = refine_in_ball(P, dv, x, s, m);
            double nrm = 0.0;
            for (int j = 0; j < m; ++j) nrm += xr[j] * xr[j];
            if (nrm <= 1.0 + 1e-12) push_peak(peaks, P, xr);
        }
    };
    const int ndir = std::max(12, 4 * P.degree());
    if (m == 2) {
        for (int k = 0; k < ndir; ++k) {
            const double th = 2.0 * M_PI * k / ndir;
            sweep({std::cos(th), std::sin(th), 0.0});
        }
    } else {
        const int nc = std::max(6, P.degree() + 2);
        for (int i = 0; i <= nc; ++i) {
            const double c = -1.0 + 2.0 * i / nc;
            const double sr = std::sqrt(std::max(0.0, 1.0 - c * c));
            const int np = std::max(1, static_cast<int>(std::lround(ndir * sr)) + 1);
            for (int k = 0; k < np; ++k) {
                const double ph = 2.0 * M_PI * k / np;
                sweep({sr * std::cos(ph), sr * std::sin(ph), c});
            }
        }
    }
    push_peak(peaks, P, {0.0, 0.0, 0.0});
    return peaks;
}

double max_peak(const std::vector<Peak>& peaks) {
    double best = 0.0;
    for (const auto& pk : peaks) best = std::max(best, pk.absval);
    return best;
}

}  // namespace

double ball_lp_norm(const MultiPolyCoeffs& P, double p, double tol) {
    const int m = P.dim();
    if (m > 3) throw UnsupportedDimension("ball_lp_norm: m <= 3");
    if (p == WeightSpec::inf()) {
        if (m == 1) {
            auto f = [&](double t) { return P.eval({t, 0.0, 0.0}); };
            return sup_norm(f, -1.0, 1.0, 1e-13, std::max(P.degree(), 1)).value;
        }
        return max_peak(ball_abs_peaks(P, m));
    }
    if (m == 1) {
        auto f = [&](double t) { return P.eval({t, 0.0, 0.0}); };
        return weighted_lp_norm(f, WeightSpec::jacobi(0.0, 0.0, p), tol);
    }
    double prev = std::pow(ball_p_integral(P, p, 8), 1.0 / p);
    for (int level = 16; level <= 512; level *= 2) {
        const double cur = std::pow(ball_p_integral(P, p, level), 1.0 / p);
        if (std::abs(cur - prev) <= tol * std::max(std::abs(cur), 1e-300)) return cur;
        prev = cur;
    }
    throw NoConvergence("ball_lp_norm: quadrature did not settle");
}

double sphere_lp_norm(const MultiPolyCoeffs& P, double p, double tol) {
    const int m = P.dim();
    if (m != 2 && m != 3) throw UnsupportedDimension("sphere_lp_norm: m in {2,3}");
    if (p == WeightSpec::inf()) return max_peak(sphere_abs_peaks(P, m));
    double prev = std::pow(sphere_p_integral(P, p, 8), 1.0 / p);
    for (int level = 16; level <= 1024; level *= 2) {
        const double cur = std::pow(sphere_p_integral(P, p, level), 1.0 / p);
        if (std::abs(cur - prev) <= tol * std::max(std::abs(cur), 1e-300)) return cur;
        prev = cur;
    }
    throw NoConvergence("sphere_lp_norm: quadrature did not settle");
}

// ---------------------------------------------------------------------------
// Direct multivariate sharp constants
// ---------------------------------------------------------------------------

namespace {

// Ball: all |alpha| <= n. Sphere: alpha_m <= 1, a basis of the restriction
// space modulo x_m^2 = 1 - sum_{j<m} x_j^2.
std::vector<MultiIndex> enumerate_basis(int m, int n, bool sphere) {
    std::vector<MultiIndex> idx;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; m >= 2 && j <= n - i; ++j) {
            if (m == 2) {
                if (sphere && j > 1) continue;
                idx.push_back({i, j, 0});
                continue;
            }
            for (int k = 0; k <= n - i - j; ++k) {
                if (sphere && k > 1) continue;
                idx.push_back({i, j, k});
            }
        }
        if (m == 1) idx.push_back({i, 0, 0});
    }
    return idx;
}

double functional_on_monomial(const MultiIndex& alpha, int m, int N, bool sphere,
                              const std::array<double, 3>& pole) {
    MultiPolyCoeffs mono = MultiPolyCoeffs::monomial(m, alpha);
    if (!sphere) {
        MultiPolyCoeffs out = laplacian_apply(mono, N);
        return out.coeff({0, 0, 0});
    }
    MultiPolyCoeffs out = spherical_laplacian_apply(mono, N);
    return out.eval(pole);
}

std::vector<std::array<double, 3>> initial_domain_grid(int m, int n, bool sphere) {
    std::vector<std::array<double, 3>> pts;
    // golden-angle stagger per ring; perfectly aligned rings make the
    // exchange LP hopelessly degenerate
    constexpr double kStagger = 2.0 * M_PI * 0.3819660112501051;
    int ring = 0;
    auto add_sphere_points = [&](double radius) {
        if (m == 2) {
            const int M = std::max(48, 10 * n);
            const double off = kStagger * ring++;
            for (int k = 0; k < M; ++k) {
                const double th = 2.0 * M_PI * k / M + off;
                pts.push_back({radius * std::cos(th), radius * std::sin(th), 0.0});
            }
        } else {
            const int nc = std::max(10, 2 * n + 2);
            for (int i = 0; i <= nc; ++i) {
                const double c = -1.0 + 2.0 * i / nc;
                const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
                const int np = std::max(1, static_cast<int>(std::lround(2.0 * nc * s)) + 1);
                const double off = kStagger * ring++;
                for (int k = 0; k < np; ++k) {
                    const double ph = 2.0 * M_PI * k / np + off;
                    pts.push_back({radius * s * std::cos(ph), radius * s * std::sin(ph),
                                   radius * c});
                }
            }
        }
    };
    if (sphere) {
        add_sphere_points(1.0);
        return pts;
    }
    const int nr = std::max(4, n);
    for (int i = 1; i <= nr; ++i) add_sphere_points(static_cast<double>(i) / nr);
    pts.push_back({0.0, 0.0, 0.0});
    return pts;
}

Eigen::MatrixXd monomial_rows(const std::vector<MultiIndex>& basis,
                              const std::vector<std::array<double, 3>>& pts) {
    Eigen::MatrixXd Phi(pts.size(), basis.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double pw[3][32];
        for (int j = 0; j < 3; ++j) {
            pw[j][0] = 1.0;
            for (int d = 1; d < 32; ++d) pw[j][d] = pw[j][d - 1] * pts[i][j];
        }
        for (std::size_t b = 0; b < basis.size(); ++b)
            Phi(i, b) = pw[0][basis[b][0]] * pw[1][basis[b][1]] * pw[2][basis[b][2]];
    }
    return Phi;
}

MultiPolyCoeffs assemble(const std::vector<MultiIndex>& basis, const Eigen::VectorXd& c, int m,
                         int n) {
    MultiPolyCoeffs P(m, n);
    for (std::size_t b = 0; b < basis.size(); ++b) P.add_term(basis[b], c(b));
    return P;
}

}  // namespace

MultivarConstantResult multivariate_sharp_constant(int m, int n, int N, const DomainSpec& domain,
                                                   const std::vector<double>& pole_in) {
    if (m != 2 && m != 3) throw UnsupportedDimension("multivariate solves support m in {2,3}");
    if (n < 0 || n > 10) throw std::invalid_argument("n <= 10 for direct multivariate solves");
    if (domain.m != m) throw std::invalid_argument("domain dimension mismatch");
    const bool sphere = domain.kind == DomainSpec::Kind::Sphere;
    const double p = domain.p;
    if (p != 2.0 && p != WeightSpec::inf())
        throw std::invalid_argument("direct multivariate solves support p in {2, inf}");

    std::array<double, 3> pole{0.0, 0.0, 0.0};
    if (sphere) {
        if (pole_in.empty())
            pole[m - 1] = 1.0;
        else {
            if (static_cast<int>(pole_in.size()) != m)
                throw std::invalid_argument("pole dimension mismatch");
            double nrm = 0.0;
            for (int j = 0; j < m; ++j) nrm += pole_in[j] * pole_in[j];
            if (std::abs(nrm - 1.0) > 1e-9)
                throw std::invalid_argument("pole must be a unit vector");
            for (int j = 0; j < m; ++j) pole[j] = pole_in[j];
        }
    }

    const std::vector<MultiIndex> basis = enumerate_basis(m, n, sphere);
    const int D = static_cast<int>(basis.size());
    Eigen::VectorXd v(D);
    for (int b = 0; b < D; ++b)
        v(b) = functional_on_monomial(basis[b], m, N, sphere, pole);

    MultivarConstantResult res;
    if (v.lpNorm<Eigen::Infinity>() == 0.0) {
        res.extremizer = MultiPolyCoeffs(m, 0);
        res.converged = true;
        return res;
    }

    // Exact moment Gram in the normalized monomial basis; both the p = 2
    // solve and the conditioning transform of the exchange LP come from it.
    Eigen::VectorXd scale(D);
    for (int b = 0; b < D; ++b) {
        MultiIndex twice{2 * basis[b][0], 2 * basis[b][1], 2 * basis[b][2]};
        const double mom =
            sphere ? sphere_monomial_moment(m, twice) : ball_monomial_moment(m, twice);
        scale(b) = std::sqrt(mom);
    }
    Eigen::MatrixXd G(D, D);
    for (int a = 0; a < D; ++a) {
        for (int b = a; b < D; ++b) {
            MultiIndex sum{basis[a][0] + basis[b][0], basis[a][1] + basis[b][1],
                           basis[a][2] + basis[b][2]};
            const double mom =
                sphere ? sphere_monomial_moment(m, sum) : ball_monomial_moment(m, sum);
            G(a, b) = G(b, a) = mom / (scale(a) * scale(b));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G, Eigen::EigenvaluesOnly);
    const double emin = es.eigenvalues().minCoeff();
    const double emax = es.eigenvalues().maxCoeff();
    if (!(emin > 0.0) || emax / emin > 1e14)
        throw SingularGram("multivariate Gram numerically singular");
    Eigen::VectorXd vhat = v.cwiseQuotient(scale);

    if (p == 2.0) {
        Eigen::VectorXd chat = G.llt().solve(vhat);
        const double value = std::sqrt(vhat.dot(chat));
        Eigen::VectorXd c = chat.cwiseQuotient(scale) / value;
        MultiPolyCoeffs ext = assemble(basis, c, m, n);
        res.value = value;
        res.extremizer = ext;
        res.upper_bound = value;
        res.iterations = 1;
        res.converged = true;
        const double norm = sphere ? sphere_lp_norm(ext, 2.0, 1e-10)
                                   : ball_lp_norm(ext, 2.0, 1e-10);
        const double ell = v.dot(c);
        res.lower_bound = std::abs(ell) / norm;
        return res;
    }

    // p = inf exchange, run in the L2-orthonormalized basis: with columns
    // Phi_hat = Phi diag(1/scale) L^{-T} the point-value matrices stay
    // well-conditioned at degree 6 where raw monomials are nearly dependent.
    Eigen::MatrixXd L = G.llt().matrixL();
    Eigen::VectorXd vtrans = L.triangularView<Eigen::Lower>().solve(vhat);

    std::vector<std::array<double, 3>> grid = initial_domain_grid(m, n, sphere);
    Eigen::VectorXd c, c_best;
    double ub = 0.0, sup = 0.0, sup_best = 1.0, lb_best = -1.0;
    double ub_prev = std::numeric_limits<double>::infinity();
    int ub_stable = 0, round = 0;
    bool tight = false;
    for (; round < 50; ++round) {
        Eigen::MatrixXd Phi = monomial_rows(basis, grid);
        Phi = Phi * scale.cwiseInverse().asDiagonal();
        L.transpose().triangularView<Eigen::Upper>().solveInPlace<Eigen::OnTheRight>(Phi);
        detail::L1Result lp = detail::l1_min_dual(Phi, vtrans);
        if (!lp.ok) throw LPFailure("multivariate exchange LP failed: " + lp.reason);
        ub = lp.objective;
        Eigen::VectorXd chat = detail::recover_primal(Phi, vtrans, lp);
        c = L.transpose().triangularView<Eigen::Upper>().solve(chat).cwiseQuotient(scale);

        MultiPolyCoeffs cand = assemble(basis, c, m, n);
        std::vector<Peak> peaks =
            sphere ? sphere_abs_peaks(cand, m) : ball_abs_peaks(cand, m);
        sup = max_peak(peaks);
        const double lb_now = std::abs(v.dot(c)) / sup;
        if (lb_now > lb_best) {
            lb_best = lb_now;
            c_best = c;
            sup_best = sup;
        }
        const double violation = sup - 1.0;
        if (violation <= 1e-9 || ub - lb_now <= 1e-9 * std::max(lb_now, 1e-300)) {
            lb_best = lb_now;
            c_best = c;
            sup_best = sup;
            tight = true;
            break;
        }
        // Degenerate optimal faces keep the recovered vertex violating
        // between grid points indefinitely; once the upper bound has
        // stabilized under continued refinement it is the value.
        ub_stable = (std::abs(ub - ub_prev) <= 1e-10 * std::max(ub, 1e-300)) ? ub_stable + 1 : 0;
        ub_prev = ub;
        if (ub_stable >= 3 && round >= 4) break;
        for (const Peak& pk : peaks) {
            if (pk.absval <= 1.0 + 1e-11) continue;  // only violating peaks
            bool fresh = true;
            for (const auto& g : grid) {
                double d2 = 0.0;
                for (int j = 0; j < 3; ++j) d2 += (g[j] - pk.x[j]) * (g[j] - pk.x[j]);
                if (d2 < 1e-20) {
                    fresh = false;
                    break;
                }
            }
            if (fresh) grid.push_back(pk.x);
        }
    }
    if (round == 50) throw LPFailure("multivariate exchange did not settle in 50 rounds");

    c_best /= sup_best;
    // constant candidate (basis entry 0 is the (0,0,0) monomial)
    Eigen::VectorXd c_const = Eigen::VectorXd::Zero(D);
    c_const(0) = 1.0;
    if (std::abs(v.dot(c_const)) > std::abs(v.dot(c_best)))
        c_best = (v.dot(c_const) > 0) ? c_const : Eigen::VectorXd(-c_const);
    res.value = ub;  // LP optimum of the final relaxation
    res.extremizer = assemble(basis, c_best, m, n);
    res.lower_bound = std::abs(v.dot(c_best));
    tight = tight || (ub - res.lower_bound <= 1e-9 * std::max(res.lower_bound, 1e-300));
    res.upper_bound = ub;
    res.iterations = round + 1;
    res.converged = tight;
    return res;
}

}  // namespace sharpconst
