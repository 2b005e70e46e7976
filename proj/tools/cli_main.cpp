// Command line front end for the sniep5 library.
//
// Subcommands: check, construct, verify, boundary, sample, scan.
// Exit codes are part of the interface: 0 yes/pass, 1 no/fail,
// 2 malformed input or parameters, 3 matrix property violation.

#include <sniep5/sniep5.hpp>

#include "CLI11.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace sniep5;

int guarded(const std::function<int()>& fn) {
    try {
        return fn();
    } catch (const MatrixPropertyError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << content;
}

Spectrum5 parse_values(const std::vector<double>& vals, const Config& cfg) {
    return validate_and_sort(vals, cfg);
}

int run_check(const std::vector<double>& vals, bool as_json, const Config& cfg) {
    const Spectrum5 s = parse_values(vals, cfg);

    Verdict region{true, RegionLabel::none, {}};
    Verdict power{true, RegionLabel::none, {}};
    if (!s.is_zero()) {
        try {
            const NormalizedSpectrum n = normalize(s, cfg);
            region = theorem2_check(n.region_point(), cfg);
            power = theorem3_check(n, cfg);
        } catch (const NotPerronDominantError&) {
            region.realizable = power.realizable = false;
            region.failed_condition = power.failed_condition =
                "lambda1 must dominate: |lambda5| > lambda1";
        } catch (const NonPositiveLeadingError&) {
            region.realizable = power.realizable = false;
            region.failed_condition = power.failed_condition =
                "largest eigenvalue must be positive";
        }
    }

    const bool agree = region.realizable == power.realizable;
    if (as_json) {
        nlohmann::json j;
        j["eigenvalues"] = to_json(s)["eigenvalues"];
        j["region_test"] = to_json(region);
        j["power_sum_test"] = to_json(power);
        j["agree"] = agree;
        j["realizable"] = region.realizable;
        std::printf("%s\n", j.dump(2).c_str());
    } else {
        auto describe = [](const Verdict& v) {
            if (v.realizable) return std::string("realizable");
            return "not realizable (" + v.failed_condition + ")";
        };
        std::printf("region test: %s\n", describe(region).c_str());
        std::printf("power sum test: %s\n", describe(power).c_str());
        std::printf("verdicts %s\n", agree ? "agree" : "disagree");
        if (region.realizable)
            std::printf("realizable\n");
        else
            std::printf("not realizable: %s\n", region.failed_condition.c_str());
    }
    return region.realizable ? 0 : 1;
}

int run_construct(const std::vector<double>& vals, const std::string& output,
                  const Config& cfg) {
    const Spectrum5 s = parse_values(vals, cfg);
    const ConstructResult res = construct(s, cfg);
    if (!res.verdict.realizable) {
        std::printf("not realizable: %s\n", res.verdict.failed_condition.c_str());
        return 1;
    }
    const Certificate& cert = *res.certificate;
    const std::string body = to_json(cert).dump(2) + "\n";
    if (output.empty()) {
        std::fputs(body.c_str(), stdout);
    } else {
        write_file(output, body);
        std::printf("method: %s\n", to_string(cert.method));
        std::printf("residual: %g\n", cert.residual);
        std::printf("certificate written to %s\n", output.c_str());
    }
    return 0;
}

int run_verify(const std::string& path, const std::vector<double>& vals,
               const Config& cfg) {
    const SymMatrix m = parse_matrix(read_file(path), cfg);
    const Spectrum5 s = parse_values(vals, cfg);
    const double residual = verify(m, s);
    std::printf("residual: %g\n", residual);
    if (residual <= cfg.tol_eig) {
        std::printf("within tolerance %g\n", cfg.tol_eig);
        return 0;
    }
    std::printf("exceeds tolerance %g\n", cfg.tol_eig);
    return 1;
}

int run_boundary(double d, int samples, const std::string& format,
                 const std::string& output, const Config& cfg) {
    if (format != "json" && format != "csv")
        throw DomainError("format must be json or csv");
    const BoundaryPolyline poly = boundary_polyline(d, samples, cfg);
    const std::string body =
        format == "csv" ? to_csv(poly) : to_json(poly).dump(2) + "\n";
    if (output.empty())
        std::fputs(body.c_str(), stdout);
    else {
        write_file(output, body);
        std::printf("%zu vertices written to %s\n", poly.vertices.size(),
                    output.c_str());
    }
    return 0;
}

int report_and_exit(const ScanReport& rep, bool as_json) {
    if (as_json) {
        std::printf("%s\n", to_json(rep).dump(2).c_str());
    } else {
        std::printf("claim: %s\n", rep.claim.c_str());
        std::printf("checked: %ld\n", rep.checked);
        std::printf("violations: %zu\n", rep.violations.size());
        std::printf("max violation: %g (tolerance %g)\n", rep.max_violation,
                     rep.tolerance);
        std::printf("%s\n", rep.pass() ? "PASS" : "FAIL");
    }
    return rep.pass() ? 0 : 1;
}

int run_sample(long trials, unsigned long seed, bool as_json, const Config& cfg) {
    return report_and_exit(mc_necessity(trials, seed, cfg), as_json);
}

int run_scan(int lemma, double d, int k, int resolution, bool as_json) {
    if (lemma == 1) return report_and_exit(grid_scan_lemma1(d, k, resolution), as_json);
    if (lemma == 2) return report_and_exit(grid_scan_lemma2(d, resolution), as_json);
    throw DomainError("lemma must be 1 or 2");
}

}  // namespace

int main(int argc, char** argv) {
    const Config cfg;
    CLI::App app{"trace zero symmetric nonnegative inverse eigenvalue problem, n = 5"};
    app.require_subcommand(1);

    std::vector<double> check_vals;
    bool check_json = false;
    auto* cmd_check = app.add_subcommand(
        "check", "decide whether five eigenvalues are realizable");
    cmd_check->add_option("values", check_vals, "five eigenvalues")
        ->expected(5)
        ->required();
    cmd_check->add_flag("--json", check_json, "emit JSON");

    std::vector<double> construct_vals;
    std::string construct_out;
    auto* cmd_construct = app.add_subcommand(
        "construct", "build a realizing matrix with a certificate");
    cmd_construct->add_option("values", construct_vals, "five eigenvalues")
        ->expected(5)
        ->required();
    cmd_construct->add_option("-o,--output", construct_out,
                              "certificate file (stdout if omitted)");

    std::string verify_path;
    std::vector<double> verify_vals;
    auto* cmd_verify = app.add_subcommand(
        "verify", "check a matrix file against five eigenvalues");
    cmd_verify->add_option("matrix", verify_path, "matrix file (JSON or text)")
        ->required();
    cmd_verify->add_option("values", verify_vals, "five eigenvalues")
        ->expected(5)
        ->required();

    double boundary_d = 0.0;
    int boundary_samples = 64;
    std::string boundary_format = "json";
    std::string boundary_out;
    auto* cmd_boundary =
        app.add_subcommand("boundary", "emit the region boundary polyline");
    cmd_boundary->add_option("d", boundary_d, "value of lambda2+lambda3+lambda4")
        ->required();
    cmd_boundary->add_option("--samples", boundary_samples,
                             "points on the curved part");
    cmd_boundary->add_option("--format", boundary_format, "json or csv");
    cmd_boundary->add_option("-o,--output", boundary_out,
                             "output file (stdout if omitted)");

    long sample_trials = 10000;
    unsigned long sample_seed = 12345;
    bool sample_json = false;
    auto* cmd_sample = app.add_subcommand(
        "sample", "Monte Carlo necessity sweep over random matrices");
    cmd_sample->add_option("--trials", sample_trials, "number of matrices");
    cmd_sample->add_option("--seed", sample_seed, "base seed");
    cmd_sample->add_flag("--json", sample_json, "emit JSON");

    int scan_lemma = 0;
    double scan_d = 0.0;
    int scan_k = 2;
    int scan_resolution = 200;
    bool scan_json = false;
    auto* cmd_scan =
        app.add_subcommand("scan", "grid scan of a power sum claim");
    cmd_scan->add_option("--lemma", scan_lemma, "1 or 2")->required();
    cmd_scan->add_option("--d", scan_d, "value of lambda2+lambda3+lambda4")
        ->required();
    cmd_scan->add_option("--k", scan_k, "power for lemma 1");
    cmd_scan->add_option("--resolution", scan_resolution, "grid resolution");
    cmd_scan->add_flag("--json", scan_json, "emit JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (*cmd_check)
        return guarded([&] { return run_check(check_vals, check_json, cfg); });
    if (*cmd_construct)
        return guarded([&] { return run_construct(construct_vals, construct_out, cfg); });
    if (*cmd_verify)
        return guarded([&] { return run_verify(verify_path, verify_vals, cfg); });
    if (*cmd_boundary)
        return guarded([&] {
            return run_boundary(boundary_d, boundary_samples, boundary_format,
                                boundary_out, cfg);
        });
    if (*cmd_sample)
        return guarded([&] { return run_sample(sample_trials, sample_seed, sample_json, cfg); });
    if (*cmd_scan)
        return guarded([&] {
            return run_scan(scan_lemma, scan_d, scan_k, scan_resolution, scan_json);
        });
    return 2;
}
