// Command-line front end: invariant computations, parameter sweeps and the
// acceptance suite, emitted as json-lines or csv.
#include <algorithm>
#include <chrono>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cmcvol/acceptance.hpp"
#include "cmcvol/cli_config.hpp"
#include "cmcvol/closedform.hpp"
#include "cmcvol/lawson.hpp"
#include "cmcvol/solver.hpp"

namespace {

using namespace cmcvol;
using cli::Record;
using cli::RunConfig;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

class Emitter {
  public:
    Emitter(const RunConfig& cfg) : cfg_(cfg) {
        if (!cfg.output.empty()) {
            file_.open(cfg.output);
            if (!file_) throw std::runtime_error("cannot open output file " + cfg.output);
        }
        if (cfg_.format == cli::Format::Csv) line(cli::csv_header());
    }

    void emit(const Record& r) {
        line(cfg_.format == cli::Format::Csv ? cli::to_csv_line(r) : cli::to_json_line(r));
    }

  private:
    void line(const std::string& s) { (file_.is_open() ? file_ : std::cout) << s << "\n"; }
    RunConfig cfg_;
    std::ofstream file_;
};

Record base_record(const RunConfig& cfg, const std::string& command) {
    Record r;
    r.command = command;
    r.method = cli::method_name(cfg.method);
    return r;
}

// log Hol on order-2 Taylor data by the configured formula; the darboux
// route is single-cover and gets doubled to the common normalization.
cplx taylor_log_hol(const RunConfig& cfg, const lawson::Family& fam, double s) {
    double theta = lawson::theta_series(fam, s);
    LawsonAnsatz ansatz = lawson::taylor_x(fam, s, 2);
    switch (cfg.method) {
        case cli::Method::Lev:
            return hol_lawson_lev(ansatz.x1, ansatz.x2, ansatz.x3, theta, cfg.quad_tol);
        case cli::Method::Regularizing: {
            double vtol = std::max(1e-10, 100.0 * s * s * s);
            return hol_regularizing(lawson::fake_gauges(ansatz), lawson::lawson_h(),
                                    make_sym_theta(theta), cfg.quad_tol, vtol);
        }
        case cli::Method::Darboux: {
            const double cut = 0.45;
            cplx single = hol_darboux(ansatz.x1, ansatz.x2, ansatz.x3, -theta, -cut, cfg.quad_tol) +
                          hol_darboux_rdu(ansatz.x1, ansatz.x2, ansatz.x3, -cut, cut, cfg.quad_tol) +
                          hol_darboux(ansatz.x1, ansatz.x2, ansatz.x3, cut, theta, cfg.quad_tol);
            return 2.0 * single;
        }
    }
    return 0.0;
}

Record lawson_point(const RunConfig& cfg, double phi, int genus) {
    auto t0 = Clock::now();
    Record r = base_record(cfg, "lawson-holonomy");
    double s = 1.0 / (2.0 * genus + 2.0);
    lawson::Family fam = lawson::make_family(phi);
    auto [theta, w] = lawson::series_invariants(phi, s);
    cplx log_hol = taylor_log_hol(cfg, fam, s);
    double anchor = lawson::volume_expansion(phi, genus);
    double v = volume_from_log_hol(log_hol, theta, w, anchor);
    r.phi = phi;
    r.genus = genus;
    r.s = s;
    r.theta = theta;
    r.W = w;
    r.V = v;
    r.log_hol_re = mod_2pi_i(log_hol).real();
    r.log_hol_im = mod_2pi_i(log_hol).imag();
    r.runtime_ms = ms_since(t0);
    return r;
}

int cmd_sphere_check(const RunConfig& cfg, double alpha) {
    Emitter out(cfg);
    auto t0 = Clock::now();
    auto pipe = closedform::sphere_pipeline(alpha);
    cplx log_hol = mod_2pi_i(hol_regularizing(pipe.poles, pipe.h, pipe.sym, cfg.quad_tol));
    auto rep = closedform::sphere_case(alpha);
    Record r = base_record(cfg, "sphere-check");
    r.method = "regularizing";
    r.theta = 2.0 * alpha;
    r.W = rep.W;
    r.V = volume_from_invariants(rep.W, -alpha, alpha, log_hol);
    r.log_hol_re = log_hol.real();
    r.log_hol_im = log_hol.imag();
    r.residual = std::abs(log_hol);
    r.runtime_ms = ms_since(t0);
    if (std::abs(log_hol) > 1e-8) r.status = "suspect";
    out.emit(r);
    return r.status == "ok" ? 0 : 1;
}

int cmd_torus(const RunConfig& cfg, double rr, double ss) {
    Emitter out(cfg);
    auto t0 = Clock::now();
    closedform::TorusCase c{rr, ss};
    auto rep = closedform::torus_case(c);
    auto transport = closedform::torus_transport_check(c, cfg.quad_tol);
    Record r = base_record(cfg, "torus");
    r.method = "closed-form";
    r.W = rep.W;
    r.V = rep.V;
    r.log_hol_re = rep.log_hol.real();
    r.log_hol_im = rep.log_hol.imag();
    r.residual = std::abs(transport.x_xi2 - transport.x_xi2_closed);
    r.runtime_ms = ms_since(t0);
    out.emit(r);
    return 0;
}

int cmd_lawson_volume(const RunConfig& cfg) {
    Emitter out(cfg);
    auto t0 = Clock::now();
    Record r = base_record(cfg, "lawson-volume");
    double s = 1.0 / (2.0 * cfg.genus + 2.0);
    auto [theta, w] = lawson::series_invariants(cfg.phi, s);
    r.phi = cfg.phi;
    r.genus = cfg.genus;
    r.s = s;
    r.theta = theta;
    r.W = w;
    r.V = lawson::volume_expansion(cfg.phi, cfg.genus);
    r.method = "series";
    r.runtime_ms = ms_since(t0);
    out.emit(r);
    return 0;
}

int cmd_lawson_holonomy(const RunConfig& cfg, const std::string& ansatz_path) {
    Emitter out(cfg);
    if (ansatz_path.empty()) {
        out.emit(lawson_point(cfg, cfg.phi, cfg.genus));
        return 0;
    }
    // holonomy of a stored ansatz (e.g. previously solved coefficients)
    auto t0 = Clock::now();
    std::ifstream in(ansatz_path);
    if (!in) throw cli::ConfigError(0, "cannot read ansatz file " + ansatz_path);
    std::stringstream buf;
    buf << in.rdbuf();
    LawsonAnsatz ansatz = cli::parse_ansatz(buf.str());
    double theta = kPi / 2.0 + 2.0 * lawson::shape_constants(ansatz.phi).nu * ansatz.s;
    cplx log_hol = hol_lawson_lev(ansatz.x1, ansatz.x2, ansatz.x3, theta, cfg.quad_tol);
    double w = willmore_residue(lawson::true_gauges(ansatz, 0.5));
    Record r = base_record(cfg, "lawson-holonomy");
    r.method = "lev";
    r.phi = ansatz.phi;
    r.s = ansatz.s;
    r.theta = theta;
    r.W = w;
    r.V = volume_from_log_hol(log_hol, theta, w,
                              2.0 * kPi * kPi - 4.0 * kPi * ansatz.phi);
    r.log_hol_re = mod_2pi_i(log_hol).real();
    r.log_hol_im = mod_2pi_i(log_hol).imag();
    r.runtime_ms = ms_since(t0);
    out.emit(r);
    return 0;
}

int cmd_solve(const RunConfig& cfg, const std::string& ansatz_out) {
    Emitter out(cfg);
    auto t0 = Clock::now();
    double s = 1.0 / (2.0 * cfg.genus + 2.0);
    msolver::SolverConfig scfg;
    scfg.degree = cfg.degree;
    scfg.samples = cfg.samples;
    scfg.tol = cfg.solver_tol;
    scfg.ode_tol = std::min(cfg.ode_tol, 1e-12);
    auto solved = msolver::solve(cfg.phi, s, scfg);
    if (!ansatz_out.empty()) {
        std::ofstream dump(ansatz_out);
        if (!dump) throw std::runtime_error("cannot open ansatz output file " + ansatz_out);
        dump << cli::serialize_ansatz(solved.ansatz);
    }

    Record r = base_record(cfg, "solve-monodromy");
    r.method = "gauss-newton";
    r.phi = cfg.phi;
    r.genus = cfg.genus;
    r.s = s;
    r.theta = solved.theta;
    double w = willmore_residue(lawson::true_gauges(solved.ansatz, 0.5));
    cplx log_hol = hol_lawson_lev(solved.ansatz.x1, solved.ansatz.x2, solved.ansatz.x3,
                                  solved.theta, cfg.quad_tol);
    r.W = w;
    r.V = volume_from_log_hol(log_hol, solved.theta, w,
                              lawson::volume_expansion(cfg.phi, cfg.genus));
    r.log_hol_re = mod_2pi_i(log_hol).real();
    r.log_hol_im = mod_2pi_i(log_hol).imag();
    r.residual = solved.residual_norm;
    r.runtime_ms = ms_since(t0);
    r.status = solved.converged ? "ok" : "not-converged";
    out.emit(r);
    return solved.converged ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg) {
    Emitter out(cfg);
    auto results = acceptance::run_all();
    bool all_pass = true;
    for (const auto& res : results) {
        Record r = base_record(cfg, "verify");
        char label[32];
        std::snprintf(label, sizeof(label), "criterion-%02d", res.id);
        r.method = label;
        r.residual = res.worst_error;
        r.runtime_ms = res.runtime_ms;
        r.status = res.pass ? "pass" : "fail";
        out.emit(r);
        all_pass = all_pass && res.pass;
    }
    return all_pass ? 0 : 1;
}

std::vector<double> parse_phi_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(cli::parse_angle(item));
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

int cmd_sweep(const RunConfig& cfg, const std::string& phis, const std::string& genera) {
    std::vector<double> phi_list = phis.empty() ? std::vector<double>{cfg.phi} : parse_phi_list(phis);
    std::vector<int> genus_list =
        genera.empty() ? std::vector<int>{cfg.genus} : parse_int_list(genera);
    for (double phi : phi_list)
        if (!(phi > 0.0 && phi < kPi / 2.0))
            throw cli::ConfigError(0, "range violation: phi must lie in (0, pi/2)");
    for (int g : genus_list)
        if (g < 2) throw cli::ConfigError(0, "range violation: genus must be >= 2");

    // grid points evaluate in parallel; emission is sorted by (phi, genus)
    std::vector<std::pair<double, int>> grid;
    for (double phi : phi_list)
        for (int g : genus_list) grid.emplace_back(phi, g);
    std::sort(grid.begin(), grid.end());

    std::vector<std::future<Record>> jobs;
    for (auto [phi, g] : grid)
        jobs.push_back(std::async(std::launch::async, [&cfg, phi = phi, g = g]() {
            Record r = lawson_point(cfg, phi, g);
            r.command = "sweep";
            return r;
        }));
    std::vector<Record> records;
    for (auto& job : jobs) records.push_back(job.get());
    std::sort(records.begin(), records.end(), [](const Record& a, const Record& b) {
        return std::make_pair(*a.phi, *a.genus) < std::make_pair(*b.phi, *b.genus);
    });
    Emitter out(cfg);
    for (const auto& r : records) out.emit(r);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conserved invariants (Willmore energy, enclosed volume) of CMC surfaces in "
                 "the 3-sphere from Fuchsian spectral data"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand

    std::string config_path, phi_text, format_text, method_text, output_path;
    RunConfig cfg;

    app.add_option("--config", config_path, "flat key = value config file");
    app.add_option("--phi", phi_text, "angle in (0, pi/2); accepts pi literals like pi/4");
    auto* genus_opt = app.add_option("--genus", cfg.genus, "genus (>= 2)");
    auto* degree_opt = app.add_option("--degree", cfg.degree, "loop truncation degree");
    auto* samples_opt = app.add_option("--samples", cfg.samples, "circle collocation count");
    auto* ode_opt = app.add_option("--ode-tol", cfg.ode_tol, "transport tolerance");
    auto* quad_opt = app.add_option("--quad-tol", cfg.quad_tol, "quadrature tolerance");
    auto* solver_opt = app.add_option("--solver-tol", cfg.solver_tol, "solver tolerance");
    app.add_option("--method", method_text, "holonomy formula: lev|regularizing|darboux");
    app.add_option("--format", format_text, "output format: json-lines|csv");
    app.add_option("--output", output_path, "output path (default stdout)");

    double alpha = 0.7, torus_r = 0.8, torus_s = 0.6;
    std::string phis, genera, ansatz_path, ansatz_out;
    auto* sphere = app.add_subcommand("sphere-check", "closed-form sphere suite");
    sphere->add_option("--alpha", alpha, "Sym half-angle in (0, pi)");
    auto* torus = app.add_subcommand("torus", "homogeneous torus invariants");
    torus->add_option("--r", torus_r, "horizontal radius");
    torus->add_option("--s", torus_s, "vertical radius (r^2 + s^2 = 1)");
    auto* lawson_vol = app.add_subcommand("lawson-volume", "second-order volume series");
    auto* lawson_hol = app.add_subcommand("lawson-holonomy", "holonomy on Taylor data");
    lawson_hol->add_option("--ansatz", ansatz_path, "stored ansatz file instead of Taylor data");
    auto* solve_cmd = app.add_subcommand("solve-monodromy", "Gauss-Newton monodromy solve");
    solve_cmd->add_option("--ansatz-out", ansatz_out, "write the solved coefficients here");
    auto* verify = app.add_subcommand("verify", "run the acceptance suite");
    auto* sweep = app.add_subcommand("sweep", "grid over phi x genus");
    sweep->add_option("--phi-list", phis, "comma-separated angles");
    sweep->add_option("--genus-list", genera, "comma-separated genera");

    try {
        app.parse(argc, argv);

        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw cli::ConfigError(0, "cannot read config file " + config_path);
            std::stringstream buf;
            buf << in.rdbuf();
            RunConfig from_file = cli::parse_config(buf.str());
            // flags override file values
            RunConfig merged = from_file;
            if (genus_opt->count()) merged.genus = cfg.genus;
            if (degree_opt->count()) merged.degree = cfg.degree;
            if (samples_opt->count()) merged.samples = cfg.samples;
            if (ode_opt->count()) merged.ode_tol = cfg.ode_tol;
            if (quad_opt->count()) merged.quad_tol = cfg.quad_tol;
            if (solver_opt->count()) merged.solver_tol = cfg.solver_tol;
            cfg = merged;
        }
        if (!phi_text.empty()) cfg.phi = cli::parse_angle(phi_text);
        if (!method_text.empty()) {
            if (method_text == "lev") cfg.method = cli::Method::Lev;
            else if (method_text == "regularizing") cfg.method = cli::Method::Regularizing;
            else if (method_text == "darboux") cfg.method = cli::Method::Darboux;
            else throw cli::ConfigError(0, "unknown method '" + method_text + "'");
        }
        if (!format_text.empty()) {
            if (format_text == "json-lines") cfg.format = cli::Format::JsonLines;
            else if (format_text == "csv") cfg.format = cli::Format::Csv;
            else throw cli::ConfigError(0, "unknown format '" + format_text + "'");
        }
        if (!output_path.empty()) cfg.output = output_path;
        if (!(cfg.phi > 0.0 && cfg.phi < kPi / 2.0))
            throw cli::ConfigError(0, "range violation: phi must lie in (0, pi/2)");
        if (cfg.genus < 2) throw cli::ConfigError(0, "range violation: genus must be >= 2");
        if (!(cfg.ode_tol > 0.0 && cfg.quad_tol > 0.0 && cfg.solver_tol > 0.0))
            throw cli::ConfigError(0, "range violation: tolerances must be positive");

        if (sphere->parsed()) return cmd_sphere_check(cfg, alpha);
        if (torus->parsed()) return cmd_torus(cfg, torus_r, torus_s);
        if (lawson_vol->parsed()) return cmd_lawson_volume(cfg);
        if (lawson_hol->parsed()) return cmd_lawson_holonomy(cfg, ansatz_path);
        if (solve_cmd->parsed()) return cmd_solve(cfg, ansatz_out);
        if (verify->parsed()) return cmd_verify(cfg);
        if (sweep->parsed()) return cmd_sweep(cfg, phis, genera);
        return 2;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        Record diag;
        diag.command = "error";
        diag.status = std::string("exception: ") + e.what();
        std::cout << cli::to_json_line(diag) << "\n";
        return 1;
    }
}
