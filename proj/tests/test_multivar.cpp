#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <sharpconst/errors.hpp>
#include <sharpconst/extremal.hpp>
#include <sharpconst/multivar.hpp>
#include <sharpconst/operators.hpp>

using namespace sharpconst;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

MultiPolyCoeffs random_poly(std::mt19937_64& rng, int m, int n) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    MultiPolyCoeffs P(m, n);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n - i; ++j)
            for (int k = 0; k <= n - i - j; ++k) {
                if (m < 3 && k > 0) continue;
                if (m < 2 && j > 0) continue;
                P.add_term({i, j, k}, unif(rng));
            }
    return P;
}

std::array<std::array<double, 3>, 3> random_rotation(std::mt19937_64& rng, int m) {
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd X(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) X(i, j) = gauss(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(X);
    Eigen::MatrixXd Q = qr.householderQ();
    std::array<std::array<double, 3>, 3> A{};
    for (int i = 0; i < 3; ++i) A[i][i] = 1.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) A[i][j] = Q(i, j);
    return A;
}

MultiPolyCoeffs norm_sq(int m) {
    MultiPolyCoeffs P(m, 2);
    for (int j = 0; j < m; ++j) {
        MultiIndex a{0, 0, 0};
        a[j] = 2;
        P.add_term(a, 1.0);
    }
    return P;
}

}  // namespace

TEST_CASE("laplacian") {
    for (int m : {1, 2, 3}) {
        MultiPolyCoeffs r2 = norm_sq(m);
        MultiPolyCoeffs lap = laplacian_apply(r2, 1);
        CHECK(lap.coeff({0, 0, 0}) == doctest::Approx(2.0 * m));
    }
    MultiPolyCoeffs harmonic = MultiPolyCoeffs::monomial(2, {1, 1, 0});
    CHECK(laplacian_apply(harmonic, 1).terms().empty());

    // |x|^4 in m = 3: Delta(r^4) = 4 (4 + 3 - 2) r^2 = 20 |x|^2
    MultiPolyCoeffs r2 = norm_sq(3);
    MultiPolyCoeffs r4(3, 4);
    for (const auto& [a, ca] : r2.terms())
        for (const auto& [b, cb] : r2.terms())
            r4.add_term({a[0] + b[0], a[1] + b[1], a[2] + b[2]}, ca * cb);
    MultiPolyCoeffs lap4 = laplacian_apply(r4, 1);
    for (const auto& [a, c] : norm_sq(3).terms())
        CHECK(lap4.coeff(a) == doctest::Approx(20.0 * c));
}

TEST_CASE("sphere surface measure") {
    CHECK(sphere_surface_measure(2) == doctest::Approx(2.0 * M_PI));
    CHECK(sphere_surface_measure(3) == doctest::Approx(4.0 * M_PI));
    CHECK(sphere_surface_measure(1) == doctest::Approx(2.0));
}

TEST_CASE("ball and sphere norms") {
    MultiPolyCoeffs one2 = MultiPolyCoeffs::monomial(2, {0, 0, 0});
    CHECK(ball_lp_norm(one2, 1.0) == doctest::Approx(M_PI).epsilon(1e-9));

    MultiPolyCoeffs one3 = MultiPolyCoeffs::monomial(3, {0, 0, 0});
    CHECK(ball_lp_norm(one3, 2.0) == doctest::Approx(std::sqrt(4.0 * M_PI / 3.0)).epsilon(1e-9));

    MultiPolyCoeffs x1 = MultiPolyCoeffs::monomial(2, {1, 0, 0});
    CHECK(ball_lp_norm(x1, 2.0) == doctest::Approx(std::sqrt(M_PI / 4.0)).epsilon(1e-9));

    CHECK(sphere_lp_norm(one2, 2.0) == doctest::Approx(std::sqrt(2.0 * M_PI)).epsilon(1e-9));
    MultiPolyCoeffs x13 = MultiPolyCoeffs::monomial(3, {1, 0, 0});
    CHECK(sphere_lp_norm(x13, 2.0) ==
          doctest::Approx(std::sqrt(4.0 * M_PI / 3.0)).epsilon(1e-9));

    // x1^2 + x2^2 + x3^2 restricted to S^2 is 1
    for (double p : {1.0, 3.0, kInf})
        CHECK(sphere_lp_norm(norm_sq(3), p) ==
              doctest::Approx(p == kInf ? 1.0 : std::pow(4.0 * M_PI, 1.0 / p)).epsilon(1e-8));

    CHECK_THROWS_AS(sphere_lp_norm(MultiPolyCoeffs::monomial(1, {1, 0, 0}), 2.0),
                    UnsupportedDimension);
}

TEST_CASE("haar symmetrization over O(m)") {
    MultiPolyCoeffs x1sq = MultiPolyCoeffs::monomial(2, {2, 0, 0});
    EvenPolyCoeffs q = haar_symmetrize_full(x1sq);
    CHECK(q.coeff(1) == doctest::Approx(0.5));  // average of cos^2 over the circle

    MultiPolyCoeffs r2 = norm_sq(3);
    MultiPolyCoeffs r4(3, 4);
    for (const auto& [a, ca] : r2.terms())
        for (const auto& [b, cb] : r2.terms())
            r4.add_term({a[0] + b[0], a[1] + b[1], a[2] + b[2]}, ca * cb);
    EvenPolyCoeffs q4 = haar_symmetrize_full(r4);
    CHECK(q4.coeff(2) == doctest::Approx(1.0));  // already radial

    MultiPolyCoeffs odd = MultiPolyCoeffs::monomial(3, {1, 0, 0});
    EvenPolyCoeffs zero = haar_symmetrize_full(odd);
    for (int k = 0; k <= zero.half_degree(); ++k) CHECK(zero.coeff(k) == 0.0);

    // output half degree bound
    std::mt19937_64 rng(5150);
    for (int n : {3, 5, 6}) {
        MultiPolyCoeffs P = random_poly(rng, 3, n);
        CHECK(haar_symmetrize_full(P).half_degree() <= n / 2);
    }
}

TEST_CASE("haar normalization against the Monte Carlo rotation average") {
    std::mt19937_64 rng(20240101);
    for (int m : {2, 3}) {
        MultiPolyCoeffs P = random_poly(rng, m, 4);
        EvenPolyCoeffs q = haar_symmetrize_full(P);
        std::array<double, 3> x0{0.6, m >= 2 ? 0.3 : 0.0, m >= 3 ? -0.4 : 0.0};
        double r = 0.0;
        for (int j = 0; j < m; ++j) r += x0[j] * x0[j];
        r = std::sqrt(r);
        double acc = 0.0;
        const int reps = 200000;
        for (int i = 0; i < reps; ++i) {
            auto A = random_rotation(rng, m);
            std::array<double, 3> y{0.0, 0.0, 0.0};
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) y[a] += A[a][b] * x0[b];
            acc += P.eval(y);
        }
        acc /= reps;
        CHECK(acc == doctest::Approx(q.eval(r)).epsilon(2e-2));
    }
}

TEST_CASE("zonal symmetrization") {
    MultiPolyCoeffs x1 = MultiPolyCoeffs::monomial(3, {1, 0, 0});
    PolyCoeffs1D q = zonal_symmetrize(x1, {1.0, 0.0, 0.0});
    CHECK(q.coeff(1) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(q.coeff(0)) < 1e-10);

    MultiPolyCoeffs x2 = MultiPolyCoeffs::monomial(3, {0, 1, 0});
    PolyCoeffs1D z = zonal_symmetrize(x2, {1.0, 0.0, 0.0});
    for (int k = 0; k <= z.degree(); ++k) CHECK(std::abs(z.coeff(k)) < 1e-10);

    // x2^2 averaged around e1 on S^2: (1 - u^2)/2
    MultiPolyCoeffs x2sq = MultiPolyCoeffs::monomial(3, {0, 2, 0});
    PolyCoeffs1D h = zonal_symmetrize(x2sq, {1.0, 0.0, 0.0});
    CHECK(h.coeff(0) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(h.coeff(2) == doctest::Approx(-0.5).epsilon(1e-10));

    // the zonal profile reproduces P on zonal inputs: Q((x,a)) vs direct
    // Monte Carlo average over rotations fixing a
    std::mt19937_64 rng(77);
    MultiPolyCoeffs P = random_poly(rng, 3, 3);
    std::vector<double> a{0.0, 0.0, 1.0};
    PolyCoeffs1D prof = zonal_symmetrize(P, a);
    const double u = 0.35;
    const double s = std::sqrt(1.0 - u * u);
    double acc = 0.0;
    const int reps = 20000;
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    for (int i = 0; i < reps; ++i) {
        const double psi = ang(rng);
        acc += P.eval({s * std::cos(psi), s * std::sin(psi), u});
    }
    CHECK(prof.eval(u) == doctest::Approx(acc / reps).epsilon(2e-2));
}

TEST_CASE("symmetrization contracts norms") {
    std::mt19937_64 rng(31337);
    for (int m : {2, 3}) {
        for (double p : {1.0, 2.0, kInf}) {
            for (int rep = 0; rep < 3; ++rep) {
                MultiPolyCoeffs P = random_poly(rng, m, 5);
                EvenPolyCoeffs q = haar_symmetrize_full(P);
                // ||q(|x|)||_p <= ||P||_p: lift q(|x|) via powers of |x|^2
                MultiPolyCoeffs lifted(m, 2 * q.half_degree());
                MultiPolyCoeffs pw = MultiPolyCoeffs::monomial(m, {0, 0, 0}, 1.0);
                for (int k = 0; k <= q.half_degree(); ++k) {
                    for (const auto& [a, c] : pw.terms()) lifted.add_term(a, q.coeff(k) * c);
                    MultiPolyCoeffs next(m, pw.degree() + 2);
                    for (const auto& [a, c] : pw.terms())
                        for (const auto& [b, cb] : norm_sq(m).terms())
                            next.add_term({a[0] + b[0], a[1] + b[1], a[2] + b[2]}, c * cb);
                    pw = next;
                }
                CHECK(ball_lp_norm(lifted, p) <= ball_lp_norm(P, p) + 1e-8);
            }
        }
    }
}

TEST_CASE("functional preservation under symmetrization") {
    std::mt19937_64 rng(246);
    for (int m : {2, 3}) {
        for (int N : {0, 1, 2}) {
            MultiPolyCoeffs P = random_poly(rng, m, 6);
            const double direct = laplacian_apply(P, N).coeff({0, 0, 0});
            const double reduced = bessel_at_zero(haar_symmetrize_full(P), m / 2.0 - 1.0, N);
            CHECK(direct == doctest::Approx(reduced).epsilon(1e-8).scale(1.0 + std::abs(direct)));
        }
    }
}

TEST_CASE("rotation invariance of norms") {
    std::mt19937_64 rng(8080);
    for (int m : {2, 3}) {
        MultiPolyCoeffs P = random_poly(rng, m, 4);
        auto A = random_rotation(rng, m);
        MultiPolyCoeffs PA = compose_linear(P, A);
        for (double p : {1.0, 2.0}) {
            CHECK(ball_lp_norm(PA, p) ==
                  doctest::Approx(ball_lp_norm(P, p)).epsilon(1e-8));
            CHECK(sphere_lp_norm(PA, p) ==
                  doctest::Approx(sphere_lp_norm(P, p)).epsilon(1e-8));
        }
        CHECK(ball_lp_norm(PA, kInf) == doctest::Approx(ball_lp_norm(P, kInf)).epsilon(1e-8));
    }
}

TEST_CASE("reduction factors") {
    CHECK(reduction_factor(DomainSpec::ball(2, 2.0)) ==
          doctest::Approx(std::sqrt(1.0 / M_PI)));
    CHECK(reduction_factor(DomainSpec::sphere(3, 1.0)) ==
          doctest::Approx(1.0 / (2.0 * M_PI)));
    CHECK(reduction_factor(DomainSpec::ball(3, kInf)) == doctest::Approx(1.0));
    CHECK(reduction_factor(DomainSpec::sphere(2, kInf)) == doctest::Approx(1.0));
}

TEST_CASE("direct multivariate constants") {
    // trivial constant space
    auto triv = multivariate_sharp_constant(2, 0, 0, DomainSpec::ball(2, kInf));
    CHECK(triv.value == doctest::Approx(1.0).epsilon(1e-9));

    // Corollary 2.11 at m=2, n=2, p=2: direct solve equals the reduced
    // univariate constant times (2/|S^1|)^{1/2}
    auto dom = DomainSpec::ball(2, 2.0);
    auto multi = multivariate_sharp_constant(2, 2, 0, dom);
    auto uni = sharp_constant_p2(ExtremalProblem::even(
        1, WeightSpec::jacobi(1.0, 0.0, 2.0), OperatorSpec::bessel_at_zero(0.0, 0)));
    CHECK(multi.value == doctest::Approx(reduction_factor(dom) * uni.value).epsilon(1e-10));

    // Corollary 2.15 at m=3, n=1, p=2 with the Legendre kernel oracle
    auto sph = multivariate_sharp_constant(3, 1, 0, DomainSpec::sphere(3, 2.0));
    CHECK(sph.value ==
          doctest::Approx(std::sqrt(1.0 / (2.0 * M_PI)) * std::sqrt(2.0)).epsilon(1e-10));

    CHECK_THROWS_AS(multivariate_sharp_constant(1, 2, 0, DomainSpec::ball(1, 2.0)),
                    UnsupportedDimension);
}

TEST_CASE("spherical laplacian on zonal polynomials reduces to Gegenbauer") {
    // delta_x(phi((x,a)))(x) = Ge_{m/2-1}(phi)((x,a)) on the sphere
    std::mt19937_64 rng(99);
    for (int m : {2, 3}) {
        std::vector<double> a(m, 0.0);
        a[m - 1] = 1.0;
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        std::vector<double> phi(5);
        for (auto& c : phi) c = unif(rng);
        // zonal polynomial phi((x, a))
        MultiPolyCoeffs P(m, 4);
        for (int k = 0; k < 5; ++k) {
            MultiIndex idx{0, 0, 0};
            idx[m - 1] = k;
            P.add_term(idx, phi[k]);
        }
        MultiPolyCoeffs dP = spherical_laplacian_apply(P, 1);
        auto phi_poly = PolyCoeffs1D::monomial(phi);
        // compare at sphere points with (x, a) = u
        for (double u : {-0.8, -0.2, 0.4, 0.9}) {
            const double s = std::sqrt(1.0 - u * u);
            std::array<double, 3> x{0.0, 0.0, 0.0};
            x[0] = s;
            x[m - 1] = u;
            auto geg = phi_poly.to_gegenbauer(m / 2.0 - 1.0 == 0.0 ? 0.0 : m / 2.0 - 1.0);
            const double expected = gegenbauer_apply(geg, 1).eval(u);
            CHECK(dP.eval(x) == doctest::Approx(expected).epsilon(1e-10));
        }
    }
}
