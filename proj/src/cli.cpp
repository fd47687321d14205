#include "fostab/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "fostab/errors.hpp"
#include "fostab/oracle.hpp"
#include "fostab/solver.hpp"

namespace fostab {

namespace {

constexpr int kSchemaVersion = 1;
constexpr double kLemmaTolerance = 1e-9;

RealMatrix parse_real_matrix(const Json& node, const std::string& what) {
    if (!node.is_array() || node.empty()) {
        throw ConfigError(what + " must be a non-empty array of rows");
    }
    const std::size_t rows = node.size();
    if (!node[0].is_array() || node[0].empty()) {
        throw ConfigError(what + " rows must be non-empty arrays");
    }
    const std::size_t cols = node[0].size();
    RealMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const Json& row = node[i];
        if (!row.is_array() || row.size() != cols) {
            throw ConfigError(what + " rows must all have the same length");
        }
        for (std::size_t j = 0; j < cols; ++j) {
            if (!row[j].is_number()) {
                throw ConfigError(what + " entries must be numbers");
            }
            m(i, j) = row[j].get<double>();
        }
    }
    return m;
}

ComplexMatrix parse_complex_matrix(const Json& node, const std::string& what) {
    if (!node.is_array() || node.empty()) {
        throw ConfigError(what + " must be a non-empty array of rows");
    }
    const std::size_t rows = node.size();
    if (!node[0].is_array() || node[0].empty()) {
        throw ConfigError(what + " rows must be non-empty arrays");
    }
    const std::size_t cols = node[0].size();
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const Json& row = node[i];
        if (!row.is_array() || row.size() != cols) {
            throw ConfigError(what + " rows must all have the same length");
        }
        for (std::size_t j = 0; j < cols; ++j) {
            const Json& e = row[j];
            if (!e.is_object() || !e.contains("re") || !e.contains("im") ||
                !e["re"].is_number() || !e["im"].is_number()) {
                throw ConfigError(what + " entries must be objects with numeric re and im");
            }
            m(i, j) = Complex(e["re"].get<double>(), e["im"].get<double>());
        }
    }
    return m;
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open " + path);
    }
    return Json::parse(in);
}

std::string verdict_word(Verdict v) {
    switch (v) {
        case Verdict::Feasible: return "feasible";
        case Verdict::Infeasible: return "infeasible";
        default: return "unknown";
    }
}

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::Feasible: return 0;
        case Verdict::Infeasible: return 1;
        default: return 2;
    }
}

Json complex_to_json(Complex z) {
    return Json{{"re", z.real()}, {"im", z.imag()}};
}

void print_complex_matrix(std::ostream& out, const ComplexMatrix& m, const std::string& indent) {
    std::ostringstream line;
    line << std::scientific << std::setprecision(9);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        line.str("");
        line << indent << "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Complex z = m(i, j);
            line << " " << z.real() << (z.imag() < 0.0 ? " - " : " + ")
                 << std::abs(z.imag()) << "j";
        }
        line << " ]";
        out << line.str() << "\n";
    }
}

void print_real_matrix(std::ostream& out, const RealMatrix& m, const std::string& indent) {
    std::ostringstream line;
    line << std::scientific << std::setprecision(9);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        line.str("");
        line << indent << "[";
        for (std::size_t j = 0; j < m.cols(); ++j) line << " " << m(i, j);
        line << " ]";
        out << line.str() << "\n";
    }
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

Json base_report(const std::string& command, const std::string& verdict, int exit_code,
                 Json config, double wall_ms) {
    return Json{{"schema_version", kSchemaVersion},
                {"command", command},
                {"verdict", verdict},
                {"exit_code", exit_code},
                {"config", std::move(config)},
                {"wall_time_ms", wall_ms}};
}

void emit(std::ostream& out, bool json_mode, const Json& report,
          const std::function<void(std::ostream&)>& text) {
    if (json_mode) {
        out << report.dump(2) << "\n";
    } else {
        text(out);
    }
}

struct CommonOpts {
    std::string system_path;
    bool json = false;
    std::uint64_t seed = 0;
    std::size_t max_iters = 5000;
    std::size_t samples = 10000;
    std::size_t divisions = 5;
    std::size_t vertex_cap = kDefaultVertexCap;
    std::size_t instances = 200;
    double tol_certify = tol::feasibility;
    double tol_verify = 0.0;
    std::string certificate_path;
    std::string matrix_path;
};

int do_certify(const CommonOpts& opt, std::ostream& out) {
    const SystemFile sys = load_system(opt.system_path);
    const FractionalOrder ord(sys.alpha);
    SolverConfig cfg;
    cfg.seed = opt.seed;
    cfg.max_iters = opt.max_iters;
    cfg.tol_feas = opt.tol_certify;
    cfg.vertex_cap = opt.vertex_cap;

    const Timer timer;
    const FeasibilityResult res = find_common_p(sys.interval, ord, cfg);
    const double ms = timer.elapsed_ms();

    const int code = verdict_exit(res.verdict);
    Json report = base_report("certify", verdict_word(res.verdict), code,
                              Json{{"seed", cfg.seed},
                                   {"max_iters", cfg.max_iters},
                                   {"tol", cfg.tol_feas},
                                   {"vertex_cap", cfg.vertex_cap}},
                              ms);
    report["alpha"] = sys.alpha;
    report["dim"] = sys.interval.dim();
    report["margin"] = res.margin;
    report["iterations"] = res.iterations;
    report["runs"] = res.runs;
    if (res.certificate) {
        report["certificate"] = Json{{"p", complex_matrix_to_json(res.certificate->matrix())}};
    }
    if (res.witness) {
        report["witness"] = Json{{"matrix", real_matrix_to_json(*res.witness)},
                                 {"index", *res.witness_index},
                                 {"arg_margin", res.margin}};
    }

    emit(out, opt.json, report, [&](std::ostream& o) {
        o << "verdict: " << verdict_word(res.verdict) << "\n";
        o << "margin: " << res.margin << "\n";
        o << "iterations: " << res.iterations << " (runs: " << res.runs << ")\n";
        if (res.certificate) {
            o << "certificate:\n";
            print_complex_matrix(o, res.certificate->matrix(), "  ");
        }
        if (res.witness) {
            o << "unstable vertex (index " << *res.witness_index << "):\n";
            print_real_matrix(o, *res.witness, "  ");
        }
    });
    return code;
}

int do_verify(const CommonOpts& opt, std::ostream& out) {
    const SystemFile sys = load_system(opt.system_path);
    const FractionalOrder ord(sys.alpha);

    ComplexMatrix cert(1, 1);
    if (!opt.certificate_path.empty()) {
        cert = load_certificate(opt.certificate_path);
    } else if (sys.certificate) {
        cert = *sys.certificate;
    } else {
        throw ConfigError("no certificate: pass --certificate or embed one in the system file");
    }

    const Timer timer;
    const CertificateCheck check = verify_certificate(cert, sys.interval, ord, opt.tol_verify,
                                                      opt.vertex_cap);
    const double ms = timer.elapsed_ms();

    const int code = check.pass ? 0 : 1;
    Json report = base_report("verify", check.pass ? "pass" : "fail", code,
                              Json{{"tol", check.tol}, {"vertex_cap", opt.vertex_cap}}, ms);
    report["alpha"] = sys.alpha;
    report["dim"] = sys.interval.dim();
    report["margin"] = -check.lambda_bar;
    report["stages"] = Json{
        {"hermitian", Json{{"ok", check.hermitian_ok},
                           {"max_deviation", check.max_hermitian_deviation}}},
        {"positive_definite",
         Json{{"ok", check.positive_definite}, {"min_eigenvalue", check.min_eigenvalue}}},
        {"vertex_lmis", Json{{"ok", check.vertex_lmis_ok},
                             {"lambda_bar", check.lambda_bar},
                             {"argmax_index", check.lambda_bar_index}}}};

    emit(out, opt.json, report, [&](std::ostream& o) {
        o << "verdict: " << (check.pass ? "pass" : "fail") << "\n";
        o << "hermitian: " << (check.hermitian_ok ? "ok" : "FAIL")
          << " (max deviation " << check.max_hermitian_deviation << ")\n";
        o << "positive definite: " << (check.positive_definite ? "ok" : "FAIL")
          << " (min eigenvalue " << check.min_eigenvalue << ")\n";
        o << "vertex LMIs: " << (check.vertex_lmis_ok ? "ok" : "FAIL")
          << " (lambda_bar " << check.lambda_bar << " at vertex " << check.lambda_bar_index
          << ")\n";
    });
    return code;
}

int do_check_point(const CommonOpts& opt, std::ostream& out) {
    const SystemFile sys = load_system(opt.matrix_path);
    if (!free_positions(sys.interval).empty()) {
        throw ConfigError("check-point requires a point system: lower and upper must coincide");
    }
    const FractionalOrder ord(sys.alpha);
    const RealMatrix a = sys.interval.lower();

    const Timer timer;
    const PointVerdict pv = point_stability(a, ord);
    std::optional<HermitianMatrix> cert;
    std::string cert_error;
    if (pv.stable) {
        try {
            cert = point_lyapunov_certificate(a, ord);
        } catch (const NotPointStableError& e) {
            cert_error = e.what();
        }
    }
    const double ms = timer.elapsed_ms();

    const int code = pv.stable ? 0 : 1;
    Json report = base_report("check-point", pv.stable ? "stable" : "unstable", code,
                              Json::object(), ms);
    report["alpha"] = sys.alpha;
    report["dim"] = sys.interval.dim();
    report["margin"] = pv.min_arg_margin;
    Json spectrum = Json::array();
    for (const Complex& z : pv.spectrum) spectrum.push_back(complex_to_json(z));
    report["spectrum"] = spectrum;
    if (cert) {
        report["certificate"] = Json{{"p", complex_matrix_to_json(cert->matrix())}};
    } else if (!cert_error.empty()) {
        report["certificate_error"] = cert_error;
    }

    emit(out, opt.json, report, [&](std::ostream& o) {
        o << "verdict: " << (pv.stable ? "stable" : "unstable") << "\n";
        o << "argument margin: " << pv.min_arg_margin << "\n";
        o << "spectrum:\n";
        for (const Complex& z : pv.spectrum) {
            o << "  " << z.real() << (z.imag() < 0.0 ? " - " : " + ") << std::abs(z.imag())
              << "j\n";
        }
        if (cert) {
            o << "certificate:\n";
            print_complex_matrix(o, cert->matrix(), "  ");
        }
    });
    return code;
}

int do_falsify(const CommonOpts& opt, std::ostream& out) {
    const SystemFile sys = load_system(opt.system_path);
    const FractionalOrder ord(sys.alpha);

    const Timer timer;
    const FalsificationResult res =
        mc_falsify(sys.interval, ord, opt.samples, opt.seed, opt.vertex_cap);
    const double ms = timer.elapsed_ms();

    const bool found = res.counterexample.has_value();
    const int code = found ? 1 : 0;
    Json report = base_report("falsify", found ? "unstable" : "pass", code,
                              Json{{"samples", opt.samples},
                                   {"seed", opt.seed},
                                   {"vertex_cap", opt.vertex_cap}},
                              ms);
    report["alpha"] = sys.alpha;
    report["dim"] = sys.interval.dim();
    report["margin"] = res.worst_margin;
    report["samples_checked"] = res.samples_checked;
    report["vertex_scan_skipped"] = res.vertex_scan_skipped;
    if (found) {
        report["counterexample"] = Json{{"matrix", real_matrix_to_json(*res.counterexample)}};
    }

    emit(out, opt.json, report, [&](std::ostream& o) {
        o << "verdict: " << (found ? "unstable" : "pass") << "\n";
        o << "checked: " << res.samples_checked << " matrices"
          << (res.vertex_scan_skipped ? " (vertex scan skipped: cap exceeded)" : "") << "\n";
        o << "worst argument margin: " << res.worst_margin << "\n";
        if (found) {
            o << "counterexample:\n";
            print_real_matrix(o, *res.counterexample, "  ");
        }
    });
    return code;
}

int do_validate_lemma(const CommonOpts& opt, std::ostream& out) {
    std::optional<SystemFile> sys;
    if (!opt.system_path.empty()) {
        sys = load_system(opt.system_path);
    }

    std::mt19937_64 rng(opt.seed);
    const auto draw_unit = [&]() { return 2.0 * uniform01(rng) - 1.0; };
    const auto random_hermitian = [&](std::size_t n) {
        ComplexMatrix r(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) r(i, j) = Complex(draw_unit(), draw_unit());
        }
        ComplexMatrix h(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                h(i, j) = 0.5 * (r(i, j) + std::conj(r(j, i)));
            }
        }
        return HermitianMatrix(h);
    };

    const GridSpec grid{opt.divisions, kDefaultGridCap};
    constexpr double alphas[] = {1.0, 1.5, 1.9};

    const Timer timer;
    std::size_t failures = 0;
    double max_gap = -std::numeric_limits<double>::infinity();
    for (std::size_t inst = 0; inst < opt.instances; ++inst) {
        FractionalOrder ord(sys ? sys->alpha : alphas[(inst / 3) % 3]);
        std::optional<IntervalMatrix> box;
        std::size_t n;
        if (sys) {
            box = sys->interval;
            n = box->dim();
        } else {
            n = 1 + inst % 3;
            RealMatrix lower(n, n);
            RealMatrix upper(n, n);
            std::size_t free_left = 5;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    const double center = draw_unit();
                    double width = 0.0;
                    if (free_left > 0 && uniform01(rng) < 0.7) {
                        width = 0.6 * uniform01(rng);
                        if (width > 0.0) --free_left;
                    }
                    lower(i, j) = center - width;
                    upper(i, j) = center + width;
                }
            }
            box.emplace(std::move(lower), std::move(upper));
        }

        const HermitianMatrix p = random_hermitian(n);
        const double vertex_value = lambda_bar_vertices(p, *box, ord).value;
        const double grid_value = grid_max_lambda(p, *box, ord, grid);
        const double gap = grid_value - vertex_value;
        max_gap = std::max(max_gap, gap);
        if (!(gap <= kLemmaTolerance) || gap < -kLemmaTolerance) ++failures;
    }
    const double ms = timer.elapsed_ms();

    const bool pass = failures == 0;
    const int code = pass ? 0 : 1;
    Json report = base_report("validate-vertex-lemma", pass ? "pass" : "fail", code,
                              Json{{"instances", opt.instances},
                                   {"divisions", opt.divisions},
                                   {"seed", opt.seed}},
                              ms);
    if (sys) {
        report["alpha"] = sys->alpha;
        report["dim"] = sys->interval.dim();
    }
    report["failures"] = failures;
    report["max_gap"] = max_gap;
    report["tolerance"] = kLemmaTolerance;

    emit(out, opt.json, report, [&](std::ostream& o) {
        o << "verdict: " << (pass ? "pass" : "fail") << "\n";
        o << "instances: " << opt.instances << ", failures: " << failures << "\n";
        o << "max grid-vs-vertex gap: " << max_gap << " (tolerance " << kLemmaTolerance << ")\n";
    });
    return code;
}

} // namespace

SystemFile parse_system(const Json& doc) {
    if (!doc.is_object()) {
        throw ConfigError("system document must be a JSON object");
    }
    if (!doc.contains("alpha") || !doc["alpha"].is_number()) {
        throw ConfigError("system document needs a numeric alpha");
    }
    if (!doc.contains("lower") || !doc.contains("upper")) {
        throw ConfigError("system document needs lower and upper bound matrices");
    }
    RealMatrix lower = parse_real_matrix(doc["lower"], "lower");
    RealMatrix upper = parse_real_matrix(doc["upper"], "upper");
    SystemFile sys{doc["alpha"].get<double>(),
                   IntervalMatrix(std::move(lower), std::move(upper)), std::nullopt};
    if (doc.contains("certificate")) {
        const Json& cert = doc["certificate"];
        if (!cert.is_object() || !cert.contains("p")) {
            throw ConfigError("embedded certificate must be an object with a p matrix");
        }
        sys.certificate = parse_complex_matrix(cert["p"], "certificate p");
    }
    return sys;
}

SystemFile load_system(const std::string& path) {
    return parse_system(load_json(path));
}

ComplexMatrix parse_certificate(const Json& doc) {
    if (!doc.is_object() || !doc.contains("p")) {
        throw ConfigError("certificate document must be an object with a p matrix");
    }
    return parse_complex_matrix(doc["p"], "certificate p");
}

ComplexMatrix load_certificate(const std::string& path) {
    return parse_certificate(load_json(path));
}

Json complex_matrix_to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json real_matrix_to_json(const RealMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quadratic stability certification for fractional-order interval systems"};
    app.require_subcommand(1);

    CommonOpts opt;

    CLI::App* certify = app.add_subcommand(
        "certify", "Search for a common Lyapunov certificate over the vertex set");
    certify->add_option("system", opt.system_path, "system JSON file")->required();
    certify->add_flag("--json", opt.json, "emit a JSON report");
    certify->add_option("--seed", opt.seed, "solver seed");
    certify->add_option("--max-iters", opt.max_iters, "subgradient iterations per run");
    certify->add_option("--tol", opt.tol_certify, "required feasibility margin");
    certify->add_option("--vertex-cap", opt.vertex_cap, "max free interval entries");

    CLI::App* verify = app.add_subcommand("verify", "Check a candidate certificate");
    verify->add_option("system", opt.system_path, "system JSON file")->required();
    verify->add_option("--certificate", opt.certificate_path, "certificate JSON file");
    verify->add_flag("--json", opt.json, "emit a JSON report");
    verify->add_option("--tol", opt.tol_verify, "required margin on every stage");
    verify->add_option("--vertex-cap", opt.vertex_cap, "max free interval entries");

    CLI::App* check_point = app.add_subcommand(
        "check-point", "Argument test and per-point certificate for one matrix");
    check_point->add_option("--matrix", opt.matrix_path, "point system JSON file")->required();
    check_point->add_flag("--json", opt.json, "emit a JSON report");

    CLI::App* falsify = app.add_subcommand(
        "falsify", "Search vertices and random samples for an unstable matrix");
    falsify->add_option("system", opt.system_path, "system JSON file")->required();
    falsify->add_flag("--json", opt.json, "emit a JSON report");
    falsify->add_option("--samples", opt.samples, "random samples after the vertex scan");
    falsify->add_option("--seed", opt.seed, "sampling seed");
    falsify->add_option("--vertex-cap", opt.vertex_cap, "max free interval entries");

    CLI::App* lemma = app.add_subcommand(
        "validate-vertex-lemma", "Compare the vertex maximum against a dense grid");
    lemma->add_option("system", opt.system_path, "optional system JSON file");
    lemma->add_flag("--json", opt.json, "emit a JSON report");
    lemma->add_option("--instances", opt.instances, "number of random instances");
    lemma->add_option("--divisions", opt.divisions, "grid divisions per free entry");
    lemma->add_option("--seed", opt.seed, "instance generation seed");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("fostab");
    for (const std::string& s : args) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (*certify) return do_certify(opt, out);
        if (*verify) return do_verify(opt, out);
        if (*check_point) return do_check_point(opt, out);
        if (*falsify) return do_falsify(opt, out);
        return do_validate_lemma(opt, out);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 3;
    } catch (const Json::parse_error& e) {
        err << "malformed JSON: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        err << "input rejected: " << e.what() << "\n";
        return 3;
    }
}

} // namespace fostab
