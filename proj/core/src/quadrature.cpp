#include "sharpconst/quadrature.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>

#include "sharpconst/errors.hpp"

namespace sharpconst {

void WeightSpec::validate() const {
    if (!(alpha > -1.0)) throw InvalidExponent("weight exponent alpha must exceed -1");
    if (!(beta > -1.0)) throw InvalidExponent("weight exponent beta must exceed -1");
    if (!(half_width > 0.0)) throw std::invalid_argument("interval half width must be positive");
    if (beta != 0.0 && half_width != 1.0)
        throw std::invalid_argument("(1-t^2)^beta weight requires the unit interval");
    if (!(p > 0.0)) throw std::invalid_argument("p must be positive");
}

namespace {

// Golub-Welsch for the Jacobi weight (1-x)^a (1+x)^b on [-1,1]: nodes from
// the eigenvalues of the Jacobi matrix, weights as reciprocal Christoffel
// sums 1 / sum_k p_k(x_i)^2 over the orthonormal family. Eigenvalues-only
// keeps large rules O(n^2) in time and O(n) in memory.
QuadratureRule jacobi_rule_reference(int n, double a, double b) {
    Eigen::VectorXd diag(n), sub(std::max(n - 1, 0));
    const double apb = a + b;
    for (int k = 0; k < n; ++k) {
        if (k == 0)
            diag(k) = (b - a) / (apb + 2.0);
        else {
            const double den = (2.0 * k + apb) * (2.0 * k + apb + 2.0);
            diag(k) = (b * b - a * a) / den;
        }
    }
    for (int k = 1; k < n; ++k) {
        double bk;
        if (k == 1) {
            bk = 4.0 * (1.0 + a) * (1.0 + b) /
                 ((2.0 + apb) * (2.0 + apb) * (3.0 + apb));
        } else {
            const double t = 2.0 * k + apb;
            bk = 4.0 * k * (k + a) * (k + b) * (k + apb) /
                 (t * t * (t + 1.0) * (t - 1.0));
        }
        sub(k - 1) = std::sqrt(bk);
    }
    const double mu0 = std::pow(2.0, apb + 1.0) *
                       std::exp(std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                                std::lgamma(apb + 2.0));
    QuadratureRule rule;
    rule.exactness_degree = 2 * n - 1;
    if (n == 1) {
        rule.nodes = {diag(0)};
        rule.weights = {mu0};
        return rule;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double p0 = 1.0 / std::sqrt(mu0);
    for (int i = 0; i < n; ++i) {
        const double x = es.eigenvalues()(i);
        rule.nodes[i] = x;
        double pm = 0.0, pk = p0, christoffel = p0 * p0;
        for (int k = 0; k < n - 1; ++k) {
            const double pn = ((x - diag(k)) * pk - (k > 0 ? sub(k - 1) : 0.0) * pm) / sub(k);
            pm = pk;
            pk = pn;
            christoffel += pk * pk;
        }
        rule.weights[i] = 1.0 / christoffel;
    }
    return rule;
}

struct RuleKey {
    int n;
    double a, b;
    bool operator<(const RuleKey& o) const {
        return std::tie(n, a, b) < std::tie(o.n, o.a, o.b);
    }
};

std::shared_mutex g_rule_mutex;
std::map<RuleKey, QuadratureRule> g_rule_cache;

}  // namespace

QuadratureRule gauss_jacobi(int n_nodes, double a_exp, double b_exp) {
    if (n_nodes < 1) throw std::invalid_argument("gauss_jacobi: need at least one node");
    if (!(a_exp > -1.0) || !(b_exp > -1.0))
        throw InvalidExponent("gauss_jacobi: exponents must exceed -1");

    const RuleKey key{n_nodes, a_exp, b_exp};
    {
        std::shared_lock lock(g_rule_mutex);
        auto it = g_rule_cache.find(key);
        if (it != g_rule_cache.end()) return it->second;
    }
    // Reference Jacobi weight on [-1,1] with (1-x)^{b_exp} (1+x)^{a_exp};
    // u = (1+x)/2 turns it into u^{a_exp} (1-u)^{b_exp} up to 2^{a+b+1}.
    QuadratureRule ref = jacobi_rule_reference(n_nodes, b_exp, a_exp);
    QuadratureRule rule;
    rule.exactness_degree = ref.exactness_degree;
    rule.nodes.resize(n_nodes);
    rule.weights.resize(n_nodes);
    const double scale = std::pow(2.0, -(a_exp + b_exp + 1.0));
    for (int i = 0; i < n_nodes; ++i) {
        rule.nodes[i] = 0.5 * (1.0 + ref.nodes[i]);
        rule.weights[i] = scale * ref.weights[i];
    }
    {
        std::unique_lock lock(g_rule_mutex);
        g_rule_cache.emplace(key, rule);
    }
    return rule;
}

namespace {

// One fixed-size pass of the weighted p-integral (not yet the 1/p root).
double lp_integral(const std::function<double(double)>& f, const WeightSpec& w, int n_nodes,
                   bool f_even) {
    const double c = w.half_width;
    const double p = w.p;
    if (f_even) {
        // int_{-c}^{c} |f|^p |t|^a (1-t^2)^b dt = c^{a+1} int_0^1 |f(c sqrt(u))|^p
        //   u^{(a-1)/2} (1-u)^b du   (b = 0 unless c = 1)
        QuadratureRule rule = gauss_jacobi(n_nodes, (w.alpha - 1.0) / 2.0, w.beta);
        double acc = 0.0;
        for (int i = 0; i < n_nodes; ++i) {
            const double t = c * std::sqrt(rule.nodes[i]);
            acc += rule.weights[i] * std::pow(std::abs(f(t)), p);
        }
        return std::pow(c, w.alpha + 1.0) * acc;
    }
    // Split at the |t|^alpha singularity: each half maps to u in [0,1] with
    // weight u^alpha (1-u)^beta and a smooth extra factor (1+u)^beta.
    QuadratureRule rule = gauss_jacobi(n_nodes, w.alpha, w.beta);
    double acc = 0.0;
    for (int i = 0; i < n_nodes; ++i) {
        const double u = rule.nodes[i];
        const double extra = (w.beta == 0.0) ? 1.0 : std::pow(1.0 + u, w.beta);
        const double plus = std::pow(std::abs(f(c * u)), p);
        const double minus = std::pow(std::abs(f(-c * u)), p);
        acc += rule.weights[i] * extra * (plus + minus);
    }
    return std::pow(c, w.alpha + 1.0) * acc;
}

}  // namespace

NormResult weighted_lp_norm_full(const std::function<double(double)>& f, const WeightSpec& w,
                                 double tol, bool f_even) {
    w.validate();
    if (w.is_sup()) throw std::invalid_argument("weighted_lp_norm: p = inf, use sup_norm");
    const int max_nodes = 1 << 16;
    double prev = std::pow(lp_integral(f, w, 16, f_even), 1.0 / w.p);
    for (int n = 32; n <= max_nodes; n *= 2) {
        const double cur = std::pow(lp_integral(f, w, n, f_even), 1.0 / w.p);
        const double change = std::abs(cur - prev);
        const double scale = std::max(std::abs(cur), 1e-300);
        if (change <= tol * scale) return {cur, change / scale};
        prev = cur;
    }
    throw NoConvergence("weighted_lp_norm: 2^16 nodes reached without meeting tolerance");
}

double weighted_lp_norm(const std::function<double(double)>& f, const WeightSpec& w, double tol,
                        bool f_even) {
    return weighted_lp_norm_full(f, w, tol, f_even).value;
}

namespace {

// Roots of q in (0,1): sign changes on a Chebyshev sample, bisected down.
std::vector<double> unit_interval_roots(const std::function<double(double)>& q, int degree) {
    const int count = 8 * std::max(degree, 1) + 65;
    std::vector<double> roots;
    double prev_u = 0.0, prev_v = q(0.0);
    for (int i = 1; i < count; ++i) {
        const double u = 0.5 * (1.0 - std::cos(M_PI * i / (count - 1)));
        const double v = q(u);
        if ((prev_v < 0.0 && v > 0.0) || (prev_v > 0.0 && v < 0.0)) {
            double lo = prev_u, hi = u, flo = prev_v;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = q(mid);
                if ((flo < 0.0) == (fm < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev_u = u;
        prev_v = v;
    }
    return roots;
}

// integral_0^1 |q(u)|^p u^{a} (1-u)^{b} extra(u) du with panels between the
// sign changes of q; exact endpoint powers go into per-panel Jacobi rules.
double signed_piece_integral(const std::function<double(double)>& q,
                             const std::function<double(double)>& extra, int degree, double p,
                             double a, double b, int nq) {
    std::vector<double> roots = unit_interval_roots(q, degree);
    std::vector<double> brk{0.0};
    double add_left = 0.0, add_right = 0.0;
    for (double r : roots) {
        if (r < 1e-12)
            add_left = p;
        else if (r > 1.0 - 1e-12)
            add_right = p;
        else if (brk.empty() || r - brk.back() > 1e-12)
            brk.push_back(r);
    }
    brk.push_back(1.0);

    double total = 0.0;
    for (std::size_t k = 0; k + 1 < brk.size(); ++k) {
        const double lo = brk[k], hi = brk[k + 1];
        const double len = hi - lo;
        const bool at0 = (k == 0), at1 = (k + 2 == brk.size());
        const bool root_lo = !at0 || add_left > 0.0;
        const bool root_hi = !at1 || add_right > 0.0;
        const double L = (at0 ? a : 0.0) + (root_lo ? p : 0.0);
        const double R = (at1 ? b : 0.0) + (root_hi ? p : 0.0);
        QuadratureRule rule = gauss_jacobi(nq, L, R);
        const double fixed = std::pow(len, 1.0 + L + R);  // du plus the powers in the rule
        double acc = 0.0;
        for (int i = 0; i < nq; ++i) {
            const double s = rule.nodes[i];
            const double u = lo + len * s;
            double h = extra(u);
            // analytic root-quotient |q / ((u-lo)(hi-u))|^p
            double base = q(u);
            if (root_lo) base /= (u - lo);
            if (root_hi) base /= (hi - u);
            h *= std::pow(std::abs(base), p);
            // global weight factors not absorbed by the rule
            if (!at0 && a != 0.0) h *= std::pow(u, a);
            if (!at1 && b != 0.0) h *= std::pow(1.0 - u, b);
            acc += rule.weights[i] * h;
        }
        total += fixed * acc;
    }
    return total;
}

}  // namespace

double polynomial_lp_norm(const std::function<double(double)>& f, int degree,
                          const WeightSpec& w, bool f_even, double tol) {
    w.validate();
    if (w.is_sup()) throw std::invalid_argument("polynomial_lp_norm: p = inf, use sup_norm");
    const double c = w.half_width;
    const double p = w.p;

    auto integral_at = [&](int nq) {
        if (f_even) {
            // int = c^{alpha+1} int_0^1 |f(c sqrt(u))|^p u^{(alpha-1)/2} (1-u)^beta du
            auto q = [&](double u) { return f(c * std::sqrt(u)); };
            auto extra = [](double) { return 1.0; };
            return std::pow(c, w.alpha + 1.0) *
                   signed_piece_integral(q, extra, degree, p, (w.alpha - 1.0) / 2.0, w.beta,
                                         nq);
        }
        double acc = 0.0;
        for (double sgn : {1.0, -1.0}) {
            auto q = [&](double u) { return f(sgn * c * u); };
            auto extra = [&](double u) {
                return (w.beta == 0.0) ? 1.0 : std::pow(1.0 + u, w.beta);
            };
            acc += signed_piece_integral(q, extra, degree, p, w.alpha, w.beta, nq);
        }
        return std::pow(c, w.alpha + 1.0) * acc;
    };

    double prev = std::pow(integral_at(24), 1.0 / p);
    for (int nq : {48, 96, 192}) {
        const double cur = std::pow(integral_at(nq), 1.0 / p);
        if (std::abs(cur - prev) <= tol * std::max(std::abs(cur), 1e-300)) return cur;
        prev = cur;
    }
    return prev;
}

namespace {

// Golden-section maximization of |f| on [a, b].
double golden_refine(const std::function<double(double)>& f, double a, double b, double tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = std::abs(f(x1));
    double f2 = std::abs(f(x2));
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = std::abs(f(x2));
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = std::abs(f(x1));
        }
    }
    return 0.5 * (a + b);
}

std::vector<double> chebyshev_points(double lo, double hi, int count) {
    std::vector<double> pts(count);
    for (int j = 0; j < count; ++j) {
        const double x = std::cos(M_PI * j / (count - 1));
        pts[count - 1 - j] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * x;
    }
    pts.front() = lo;
    pts.back() = hi;
    return pts;
}

}  // namespace

SupResult sup_norm(const std::function<double(double)>& f, double lo, double hi, double tol,
                   int degree_hint) {
    if (!(lo < hi)) throw std::invalid_argument("sup_norm: empty interval");
    const int count = degree_hint > 0 ? 8 * degree_hint + 64 : 4096;
    const auto pts = chebyshev_points(lo, hi, count);
    std::vector<double> vals(count);
    for (int i = 0; i < count; ++i) vals[i] = std::abs(f(pts[i]));

    SupResult best{vals[0], pts[0]};
    auto consider = [&](double v, double x) {
        if (v > best.value) best = {v, x};
    };
    consider(vals[count - 1], pts[count - 1]);
    const double arg_tol = std::max(tol, 1e-15 * (hi - lo));
    for (int i = 1; i + 1 < count; ++i) {
        if (vals[i] >= vals[i - 1] && vals[i] >= vals[i + 1]) {
            const double x = golden_refine(f, pts[i - 1], pts[i + 1], arg_tol);
            consider(std::abs(f(x)), x);
        }
    }
    return best;
}

std::vector<double> local_maxima_of_abs(const std::function<double(double)>& f, double lo,
                                        double hi, double tol, int degree_hint) {
    const int count = degree_hint > 0 ? 8 * degree_hint + 64 : 4096;
    const auto pts = chebyshev_points(lo, hi, count);
    std::vector<double> vals(count);
    for (int i = 0; i < count; ++i) vals[i] = std::abs(f(pts[i]));

    std::vector<double> args;
    if (vals[0] >= vals[1]) args.push_back(pts[0]);
    const double arg_tol = std::max(tol, 1e-15 * (hi - lo));
    for (int i = 1; i + 1 < count; ++i) {
        if (vals[i] >= vals[i - 1] && vals[i] >= vals[i + 1])
            args.push_back(golden_refine(f, pts[i - 1], pts[i + 1], arg_tol));
    }
    if (vals[count - 1] >= vals[count - 2]) args.push_back(pts[count - 1]);
    return args;
}

}  // namespace sharpconst
