#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "sharpconst/errors.hpp"
#include "sharpconst/extremal.hpp"
#include "sharpconst/limits.hpp"
#include "sharpconst/multivar.hpp"
#include "sharpconst/operators.hpp"

namespace sharpconst::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kSchemaVersion = "1";

std::string fmt(double x) {
    if (x == WeightSpec::inf()) return "inf";
    if (x == -WeightSpec::inf()) return "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

// Deterministic serialization: fixed key order (insertion), doubles always
// printed with 12 significant digits.
void dump_json(const json& node, std::ostringstream& os, int indent) {
    const std::string pad(indent, ' ');
    switch (node.type()) {
        case json::value_t::object: {
            if (node.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            bool first = true;
            for (auto it = node.begin(); it != node.end(); ++it) {
                if (!first) os << ",\n";
                first = false;
                os << pad << "  \"" << it.key() << "\": ";
                dump_json(it.value(), os, indent + 2);
            }
            os << "\n" << pad << "}";
            return;
        }
        case json::value_t::array: {
            if (node.empty()) {
                os << "[]";
                return;
            }
            os << "[\n";
            bool first = true;
            for (const auto& item : node) {
                if (!first) os << ",\n";
                first = false;
                os << pad << "  ";
                dump_json(item, os, indent + 2);
            }
            os << "\n" << pad << "]";
            return;
        }
        case json::value_t::number_float:
            os << fmt(node.get<double>());
            return;
        default:
            os << node.dump();
            return;
    }
}

std::string dump_document(const json& doc) {
    std::ostringstream os;
    dump_json(doc, os, 0);
    os << "\n";
    return os.str();
}

double parse_p(const std::string& text) {
    if (text == "inf" || text == "Inf" || text == "INF") return WeightSpec::inf();
    std::size_t pos = 0;
    const double value = std::stod(text, &pos);
    if (pos != text.size() || !(value > 0.0))
        throw std::invalid_argument("--p must be a positive number or 'inf'");
    return value;
}

std::string method_name(ExtrapolationMethod m) {
    switch (m) {
        case ExtrapolationMethod::LastValue: return "last-value";
        case ExtrapolationMethod::Aitken: return "aitken";
        case ExtrapolationMethod::Richardson: return "richardson";
    }
    return "?";
}

json sequence_to_json(const ScaledSequence& seq) {
    json rows = json::array();
    for (const auto& e : seq.entries) {
        json row;
        row["n"] = e.n;
        row["ok"] = e.ok;
        row["raw"] = e.raw;
        row["scaled"] = e.scaled;
        if (!e.error.empty()) row["error"] = e.error;
        rows.push_back(row);
    }
    json out;
    out["family"] = seq.family == SequenceFamily::BesselOrigin ? "bessel-origin"
                                                               : "gegenbauer-endpoint";
    out["nu"] = seq.nu;
    out["N"] = seq.N;
    out["p"] = fmt(seq.p);
    out["scaling_exponent"] = seq.scaling_exponent;
    out["rows"] = rows;
    return out;
}

json estimate_to_json(const LimitEstimate& lim) {
    json out;
    out["value"] = lim.value;
    out["error_estimate"] = lim.error_estimate;
    out["method"] = method_name(lim.method);
    if (lim.trial_lower_bound) out["trial_lower_bound"] = *lim.trial_lower_bound;
    return out;
}

json result_to_json(const SharpConstantResult& res) {
    json out;
    out["value"] = res.value;
    out["lower_bound"] = res.lower_bound;
    if (res.upper_bound)
        out["upper_bound"] = *res.upper_bound;
    else
        out["upper_bound"] = nullptr;
    out["converged"] = res.converged;
    out["degenerate_functional"] = res.degenerate_functional;
    out["iterations"] = res.iterations;
    json ext;
    ext["space"] = res.space == SpaceKind::EvenPoly ? "even" : "full";
    ext["basis"] = "weight-orthonormal";
    ext["coefficients"] = res.extremizer_coeffs();
    out["extremizer"] = ext;
    return out;
}

// ----- command implementations ---------------------------------------------

struct DerivedNu {
    double nu = 0.0;
    std::string source = "flag";
};

DerivedNu derive_nu(const RunConfig& cfg) {
    if (cfg.nu) return {*cfg.nu, "flag"};
    if (cfg.domain == "ball") return {cfg.m / 2.0 - 1.0, "nu = m/2 - 1 (ball reduction)"};
    if (cfg.domain == "sphere") return {(cfg.m - 3.0) / 2.0, "nu = (m-3)/2 (sphere reduction)"};
    return {0.0, "default"};
}

json echo_inputs(const RunConfig& cfg, const DerivedNu& dn) {
    json in;
    if (!cfg.domain.empty()) {
        in["domain"] = cfg.domain;
        in["m"] = cfg.m;
    } else if (cfg.command == RunConfig::Command::Constant) {
        in["space"] = cfg.space;
    }
    in["n"] = cfg.n;
    in["N"] = cfg.big_n;
    in["p"] = fmt(cfg.p);
    in["nu"] = dn.nu;
    in["nu_source"] = dn.source;
    in["seed"] = cfg.seed;
    // thread count deliberately not echoed: output must not depend on it
    return in;
}

json run_constant(const RunConfig& cfg, const DerivedNu& dn) {
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "constant";
    doc["inputs"] = echo_inputs(cfg, dn);
    if (!cfg.domain.empty()) {
        const bool sphere = cfg.domain == "sphere";
        DomainSpec dom =
            sphere ? DomainSpec::sphere(cfg.m, cfg.p) : DomainSpec::ball(cfg.m, cfg.p);
        MultivarConstantResult res = multivariate_sharp_constant(cfg.m, cfg.n, cfg.big_n, dom);
        json out;
        out["value"] = res.value;
        out["lower_bound"] = res.lower_bound;
        if (res.upper_bound)
            out["upper_bound"] = *res.upper_bound;
        else
            out["upper_bound"] = nullptr;
        out["converged"] = res.converged;
        out["iterations"] = res.iterations;
        out["reduction_factor"] = reduction_factor(dom);
        json terms = json::array();
        for (const auto& [alpha, coeff] : res.extremizer.terms()) {
            json term;
            term["alpha"] = {alpha[0], alpha[1], alpha[2]};
            term["coeff"] = coeff;
            terms.push_back(term);
        }
        out["extremizer_terms"] = terms;
        doc["result"] = out;
        return doc;
    }
    ExtremalProblem prob =
        cfg.space == "even"
            ? ExtremalProblem::even(cfg.n / 2, WeightSpec::jacobi(2.0 * dn.nu + 1.0, 0.0, cfg.p),
                                    OperatorSpec::bessel_at_zero(dn.nu, cfg.big_n))
            : ExtremalProblem::full(cfg.n, WeightSpec::jacobi(0.0, dn.nu, cfg.p),
                                    OperatorSpec::gegenbauer_at_one(dn.nu + 0.5, cfg.big_n));
    doc["result"] = result_to_json(sharp_constant(prob));
    return doc;
}

json run_sweep(const RunConfig& cfg, const DerivedNu& dn) {
    std::vector<int> ns = cfg.ns.empty() ? default_sweep_ns(cfg.p) : cfg.ns;
    std::cerr << "sweeping " << cfg.family << " over " << ns.size() << " degrees\n";
    ScaledSequence seq =
        cfg.family == "bessel-origin"
            ? bessel_origin_sequence(dn.nu, cfg.big_n, cfg.p, ns, 1e-7, cfg.threads)
            : gegenbauer_endpoint_sequence(dn.nu, cfg.big_n, cfg.p, ns, 1e-7, cfg.threads);
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "sweep";
    doc["inputs"] = echo_inputs(cfg, dn);
    doc["inputs"]["family"] = cfg.family;
    doc["sequence"] = sequence_to_json(seq);
    try {
        LimitEstimate lim = extrapolate(seq);
        if (cfg.family == "bessel-origin") {
            try {
                lim.trial_lower_bound = trial_lower_bound(dn.nu, cfg.big_n, cfg.p);
            } catch (const std::exception&) {
            }
        }
        doc["extrapolation"] = estimate_to_json(lim);
    } catch (const InsufficientData&) {
        doc["extrapolation"] = nullptr;  // needs at least 4 successful entries
    }
    return doc;
}

Relation parse_relation(const std::string& name) {
    if (name == "t4_1") return Relation::T4_1;
    if (name == "t4_3") return Relation::T4_3;
    if (name == "c4_4") return Relation::C4_4;
    if (name == "c4_5") return Relation::C4_5;
    return Relation::C4_6;
}

json run_verify(const RunConfig& cfg, const DerivedNu& dn) {
    RelationParams params;
    params.nu = dn.nu;
    params.N = cfg.big_n;
    params.p = cfg.p;
    params.m = cfg.m > 0 ? cfg.m : 2;
    std::cerr << "verifying relation " << cfg.relation << "\n";
    RelationReport report =
        verify_relation(parse_relation(cfg.relation), params, cfg.ns, cfg.tol);
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "verify";
    doc["inputs"] = echo_inputs(cfg, dn);
    doc["inputs"]["relation"] = cfg.relation;
    doc["inputs"]["tol"] = cfg.tol;
    json rel;
    rel["name"] = relation_name(report.which);
    rel["description"] = report.description;
    json checks = json::array();
    for (const auto& chk : report.checks) {
        json c;
        c["name"] = chk.name;
        c["lhs"] = chk.lhs;
        c["rhs"] = chk.rhs;
        c["tolerance"] = chk.tolerance;
        c["pass"] = chk.pass;
        if (!chk.note.empty()) c["note"] = chk.note;
        checks.push_back(c);
    }
    rel["checks"] = checks;
    json seqs = json::array();
    for (const auto& s : report.sequences) seqs.push_back(sequence_to_json(s));
    json lims = json::array();
    for (const auto& l : report.limits) lims.push_back(estimate_to_json(l));
    rel["sequences"] = seqs;
    rel["limits"] = lims;
    rel["pass"] = report.pass;
    doc["relation"] = rel;
    return doc;
}

MultiPolyCoeffs random_multipoly(int m, int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
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

// |x|^{2k}-weighted lift of a radial profile back to a polynomial, for the
// ball-norm comparison.
MultiPolyCoeffs lift_radial(const EvenPolyCoeffs& radial, int m) {
    MultiPolyCoeffs lifted(m, 2 * radial.half_degree());
    for (int k = 0; k <= radial.half_degree(); ++k) {
        MultiPolyCoeffs pw = MultiPolyCoeffs::monomial(m, {0, 0, 0}, radial.coeff(k));
        for (int rep = 0; rep < k; ++rep) {
            MultiPolyCoeffs acc(m, pw.degree() + 2);
            for (const auto& [a, cf] : pw.terms())
                for (int j = 0; j < m; ++j) {
                    MultiIndex b = a;
                    b[j] += 2;
                    acc.add_term(b, cf);
                }
            pw = acc;
        }
        for (const auto& [a, cf] : pw.terms()) lifted.add_term(a, cf);
    }
    return lifted;
}

json run_symmetrize(const RunConfig& cfg, const DerivedNu& dn) {
    const int m = cfg.m > 0 ? cfg.m : 2;
    const bool sphere = cfg.domain == "sphere";
    const MultiPolyCoeffs P = random_multipoly(m, cfg.n, cfg.seed);

    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "symmetrize";
    doc["inputs"] = echo_inputs(cfg, dn);
    doc["inputs"]["domain"] = sphere ? "sphere" : "ball";

    json sym;
    if (!sphere) {
        EvenPolyCoeffs radial = haar_symmetrize_full(P);
        sym["radial_profile"] = radial.coeffs();
        const double before = ball_lp_norm(P, cfg.p);
        const double after = ball_lp_norm(lift_radial(radial, m), cfg.p);
        sym["norm_before"] = before;
        sym["norm_after"] = after;
        sym["contracts"] = after <= before * (1.0 + 1e-8);
        sym["functional_direct"] = laplacian_apply(P, cfg.big_n).coeff({0, 0, 0});
        sym["functional_reduced"] = bessel_at_zero(radial, m / 2.0 - 1.0, cfg.big_n);
    } else {
        std::vector<double> pole(m, 0.0);
        pole[m - 1] = 1.0;
        PolyCoeffs1D zonal = zonal_symmetrize(P, pole);
        sym["zonal_profile"] = zonal.coeffs();
        const double before = sphere_lp_norm(P, cfg.p);
        MultiPolyCoeffs lifted(m, std::max(zonal.degree(), 0));
        for (int k = 0; k <= zonal.degree(); ++k) {
            MultiIndex a{0, 0, 0};
            a[m - 1] = k;
            lifted.add_term(a, zonal.coeff(k));
        }
        const double after = sphere_lp_norm(lifted, cfg.p);
        sym["norm_before"] = before;
        sym["norm_after"] = after;
        sym["contracts"] = after <= before * (1.0 + 1e-8);
        std::array<double, 3> pole3{0.0, 0.0, 0.0};
        pole3[m - 1] = 1.0;
        sym["functional_direct"] = spherical_laplacian_apply(P, cfg.big_n).eval(pole3);
        sym["functional_reduced"] = gegenbauer_at_one(zonal, m / 2.0 - 1.0, cfg.big_n);
    }
    doc["symmetrization"] = sym;
    return doc;
}

// ----- CSV -------------------------------------------------------------------

std::string to_csv(const json& doc) {
    std::ostringstream os;
    const std::string command = doc["command"].get<std::string>();
    auto cell = [&](const json& v) -> std::string {
        if (v.is_number_float()) return fmt(v.get<double>());
        if (v.is_string()) return v.get<std::string>();
        return v.dump();
    };
    if (command == "sweep") {
        os << "n,ok,raw,scaled,error\n";
        for (const auto& row : doc["sequence"]["rows"]) {
            os << row["n"].get<int>() << "," << (row["ok"].get<bool>() ? 1 : 0) << ","
               << cell(row["raw"]) << "," << cell(row["scaled"]) << ","
               << (row.contains("error") ? row["error"].get<std::string>() : "") << "\n";
        }
        if (!doc["extrapolation"].is_null()) {
            os << "limit," << cell(doc["extrapolation"]["value"]) << ","
               << cell(doc["extrapolation"]["error_estimate"]) << ","
               << doc["extrapolation"]["method"].get<std::string>() << ",\n";
        }
        return os.str();
    }
    if (command == "verify") {
        os << "check,lhs,rhs,tolerance,pass\n";
        for (const auto& chk : doc["relation"]["checks"]) {
            os << chk["name"].get<std::string>() << "," << cell(chk["lhs"]) << ","
               << cell(chk["rhs"]) << "," << cell(chk["tolerance"]) << ","
               << (chk["pass"].get<bool>() ? 1 : 0) << "\n";
        }
        return os.str();
    }
    if (command == "constant") {
        os << "value,lower_bound,upper_bound,converged\n";
        const auto& r = doc["result"];
        os << cell(r["value"]) << "," << cell(r["lower_bound"]) << ","
           << (r["upper_bound"].is_null() ? "" : cell(r["upper_bound"])) << ","
           << (r["converged"].get<bool>() ? 1 : 0) << "\n";
        return os.str();
    }
    os << "k,coefficient\n";
    const auto& sym = doc["symmetrization"];
    const auto& coeffs =
        sym.contains("radial_profile") ? sym["radial_profile"] : sym["zonal_profile"];
    int k = 0;
    for (const auto& c : coeffs) os << k++ << "," << cell(c) << "\n";
    return os.str();
}

}  // namespace

RunOutcome run(const RunConfig& cfg) {
    RunOutcome outcome;
    try {
        const DerivedNu dn = derive_nu(cfg);
        if (dn.nu < -0.5) throw std::invalid_argument("nu >= -1/2 required");
        json doc;
        bool verify_failed = false;
        switch (cfg.command) {
            case RunConfig::Command::Constant: doc = run_constant(cfg, dn); break;
            case RunConfig::Command::Sweep: doc = run_sweep(cfg, dn); break;
            case RunConfig::Command::Verify:
                doc = run_verify(cfg, dn);
                verify_failed = !doc["relation"]["pass"].get<bool>();
                break;
            case RunConfig::Command::Symmetrize: doc = run_symmetrize(cfg, dn); break;
        }
        outcome.document = (cfg.output == "csv") ? to_csv(doc) : dump_document(doc);
        outcome.exit_code = verify_failed ? 4 : 0;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        outcome.exit_code = 2;
    } catch (const std::exception& ex) {
        std::cerr << "solver failure: " << ex.what() << "\n";
        outcome.exit_code = 3;
    }
    return outcome;
}

int main_entry(int argc, char** argv) {
    CLI::App app{"sharp Markov-Bernstein-Nikolskii constants for weighted polynomial spaces"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string p_text = "2";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--p", p_text, "integrability exponent, a number or 'inf'");
        sub->add_option("--nu", cfg.nu, "weight parameter nu (>= -1/2)");
        sub->add_option("--N", cfg.big_n, "operator power N")->check(CLI::NonNegativeNumber);
        sub->add_option("--n", cfg.n, "polynomial degree")->check(CLI::NonNegativeNumber);
        sub->add_option("--m", cfg.m, "space dimension for ball/sphere domains")
            ->check(CLI::Range(1, 3));
        sub->add_option("--seed", cfg.seed, "seed for randomized steps");
        sub->add_option("--threads", cfg.threads, "worker pool size")
            ->check(CLI::PositiveNumber);
        sub->add_option("--output", cfg.output, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", cfg.out_path, "write the document to this file");
    };

    CLI::App* constant = app.add_subcommand("constant", "compute one sharp constant");
    constant->add_option("--space", cfg.space, "univariate space: even or full")
        ->check(CLI::IsMember({"even", "full"}));
    constant->add_option("--domain", cfg.domain, "multivariate domain: ball or sphere")
        ->check(CLI::IsMember({"ball", "sphere"}));
    add_common(constant);

    CLI::App* sweep = app.add_subcommand("sweep", "sharp constants along a degree sweep");
    sweep->add_option("--family", cfg.family, "bessel-origin or gegenbauer-endpoint")
        ->check(CLI::IsMember({"bessel-origin", "gegenbauer-endpoint"}));
    sweep->add_option("--ns", cfg.ns, "degrees, e.g. 8,16,32")->delimiter(',');
    add_common(sweep);

    CLI::App* verify = app.add_subcommand("verify", "check one of the limit relations");
    verify->add_option("--relation", cfg.relation, "t4_1, t4_3, c4_4, c4_5, or c4_6")
        ->check(CLI::IsMember({"t4_1", "t4_3", "c4_4", "c4_5", "c4_6"}));
    verify->add_option("--ns", cfg.ns, "degrees for the sweeps")->delimiter(',');
    verify->add_option("--tol", cfg.tol, "relative tolerance for limit comparisons");
    add_common(verify);

    CLI::App* symmetrize =
        app.add_subcommand("symmetrize", "Haar symmetrization demo on a random polynomial");
    symmetrize->add_option("--domain", cfg.domain, "ball or sphere")
        ->check(CLI::IsMember({"ball", "sphere"}));
    add_common(symmetrize);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        cfg.p = parse_p(p_text);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    if (cfg.threads == 1) {
        if (const char* env = std::getenv("SHARPCONST_THREADS")) {
            const int t = std::atoi(env);
            if (t > 0) cfg.threads = t;
        }
    }
    if (constant->parsed()) cfg.command = RunConfig::Command::Constant;
    if (sweep->parsed()) cfg.command = RunConfig::Command::Sweep;
    if (verify->parsed()) cfg.command = RunConfig::Command::Verify;
    if (symmetrize->parsed()) {
        cfg.command = RunConfig::Command::Symmetrize;
        if (cfg.domain.empty()) cfg.domain = "ball";
    }
    if (!cfg.domain.empty() && cfg.m == 0) cfg.m = 2;

    RunOutcome outcome = run(cfg);
    if (outcome.exit_code == 0 || outcome.exit_code == 4) {
        if (!cfg.out_path.empty()) {
            std::ofstream out(cfg.out_path);
            if (!out) {
                std::cerr << "error: cannot write " << cfg.out_path << "\n";
                return 2;
            }
            out << outcome.document;
        } else {
            std::cout << outcome.document;
        }
    }
    return outcome.exit_code;
}

}  // namespace sharpconst::cli
