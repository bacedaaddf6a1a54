#include "cmcvol/cli_config.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "cmcvol/fuchsian.hpp"

namespace cmcvol {
namespace cli {

namespace {

constexpr double kPiLocal = 3.14159265358979323846;

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text) {
    size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing characters in number");
    return v;
}

}  // namespace

double parse_angle(const std::string& raw) {
    std::string text = trim(raw);
    size_t pi_pos = text.find("pi");
    if (pi_pos == std::string::npos) return parse_number(text);
    std::string head = trim(text.substr(0, pi_pos));
    if (!head.empty() && head.back() == '*') head = trim(head.substr(0, head.size() - 1));
    std::string tail = trim(text.substr(pi_pos + 2));
    double num = head.empty() ? 1.0 : parse_number(head);
    double den = 1.0;
    if (!tail.empty()) {
        if (tail.front() != '/') throw std::invalid_argument("expected '/' after pi");
        den = parse_number(trim(tail.substr(1)));
        if (den == 0.0) throw std::invalid_argument("zero denominator");
    }
    return num * kPiLocal / den;
}

std::string method_name(Method m) {
    switch (m) {
        case Method::Lev: return "lev";
        case Method::Regularizing: return "regularizing";
        case Method::Darboux: return "darboux";
    }
    return "lev";
}

std::string format_name(Format f) { return f == Format::JsonLines ? "json-lines" : "csv"; }

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string stripped = line;
        size_t hash = stripped.find('#');
        if (hash != std::string::npos) stripped = stripped.substr(0, hash);
        stripped = trim(stripped);
        if (stripped.empty()) continue;
        size_t eq = stripped.find('=');
        if (eq == std::string::npos) throw ConfigError(lineno, "expected key = value");
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        if (value.empty()) throw ConfigError(lineno, "empty value for key '" + key + "'");
        try {
            if (key == "phi") {
                cfg.phi = parse_angle(value);
            } else if (key == "genus") {
                cfg.genus = static_cast<int>(parse_number(value));
            } else if (key == "degree") {
                cfg.degree = static_cast<int>(parse_number(value));
            } else if (key == "samples") {
                cfg.samples = static_cast<int>(parse_number(value));
            } else if (key == "ode_tol") {
                cfg.ode_tol = parse_number(value);
            } else if (key == "quad_tol") {
                cfg.quad_tol = parse_number(value);
            } else if (key == "solver_tol") {
                cfg.solver_tol = parse_number(value);
            } else if (key == "method") {
                if (value == "lev") cfg.method = Method::Lev;
                else if (value == "regularizing") cfg.method = Method::Regularizing;
                else if (value == "darboux") cfg.method = Method::Darboux;
                else throw ConfigError(lineno, "unknown method '" + value + "'");
            } else if (key == "format") {
                if (value == "json-lines") cfg.format = Format::JsonLines;
                else if (value == "csv") cfg.format = Format::Csv;
                else throw ConfigError(lineno, "unknown format '" + value + "'");
            } else if (key == "output") {
                cfg.output = value;
            } else {
                throw ConfigError(lineno, "unknown key '" + key + "'");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(lineno, "malformed value for '" + key + "': " + e.what());
        }
        if (key == "phi" && !(cfg.phi > 0.0 && cfg.phi < kPiLocal / 2.0))
            throw ConfigError(lineno, "range violation: phi must lie in (0, pi/2)");
        if (key == "genus" && cfg.genus < 2)
            throw ConfigError(lineno, "range violation: genus must be >= 2");
        if (key == "degree" && cfg.degree < 1)
            throw ConfigError(lineno, "range violation: degree must be >= 1");
        if (key == "samples" && cfg.samples < 1)
            throw ConfigError(lineno, "range violation: samples must be >= 1");
        if ((key == "ode_tol" || key == "quad_tol" || key == "solver_tol") &&
            !(parse_number(value) > 0.0))
            throw ConfigError(lineno, "range violation: tolerances must be positive");
    }
    return cfg;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) return "nan";
    return std::string(buf, ptr);
}

namespace {

void append_json_field(std::string& out, const char* name, const std::optional<double>& v,
                       bool& first) {
    if (!first) out += ",";
    first = false;
    out += "\"";
    out += name;
    out += "\":";
    out += v ? format_double(*v) : "null";
}

void append_csv_field(std::string& out, const std::optional<double>& v, bool& first) {
    if (!first) out += ",";
    first = false;
    if (v) out += format_double(*v);
}

}  // namespace

std::string to_json_line(const Record& r) {
    std::string out = "{\"command\":\"" + r.command + "\"";
    bool first = false;
    append_json_field(out, "phi", r.phi, first);
    append_json_field(out, "genus", r.genus, first);
    append_json_field(out, "s", r.s, first);
    append_json_field(out, "theta", r.theta, first);
    append_json_field(out, "W", r.W, first);
    append_json_field(out, "V", r.V, first);
    append_json_field(out, "log_hol_re", r.log_hol_re, first);
    append_json_field(out, "log_hol_im", r.log_hol_im, first);
    out += ",\"method\":\"" + r.method + "\"";
    append_json_field(out, "residual", r.residual, first);
    out += ",\"runtime_ms\":" + format_double(r.runtime_ms);
    out += ",\"status\":\"" + r.status + "\"}";
    return out;
}

std::string csv_header() {
    return "command,phi,genus,s,theta,W,V,log_hol_re,log_hol_im,method,residual,runtime_ms,status";
}

std::string serialize_ansatz(const LawsonAnsatz& ansatz) {
    std::string out;
    out += "phi = " + format_double(ansatz.phi) + "\n";
    out += "s = " + format_double(ansatz.s) + "\n";
    const ScalarLoop* xs[3] = {&ansatz.x1, &ansatz.x2, &ansatz.x3};
    for (int i = 0; i < 3; ++i)
        for (int k = xs[i]->min_degree(); k <= xs[i]->max_degree(); ++k) {
            cplx c = xs[i]->coef(k);
            out += "x" + std::to_string(i + 1) + "." + std::to_string(k) + " = " +
                   format_double(c.real()) + " " + format_double(c.imag()) + "\n";
        }
    return out;
}

LawsonAnsatz parse_ansatz(const std::string& text) {
    LawsonAnsatz ansatz;
    std::map<int, std::map<int, cplx>> coefs;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(lineno, "expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "phi") {
                ansatz.phi = parse_angle(value);
            } else if (key == "s") {
                ansatz.s = parse_number(value);
            } else if (key.size() > 3 && key[0] == 'x' && key[2] == '.') {
                int comp = key[1] - '1';
                if (comp < 0 || comp > 2) throw ConfigError(lineno, "unknown key '" + key + "'");
                int degree = std::stoi(key.substr(3));
                std::istringstream pair(value);
                double re, im;
                if (!(pair >> re >> im))
                    throw ConfigError(lineno, "expected two floats for '" + key + "'");
                coefs[comp][degree] = cplx(re, im);
            } else {
                throw ConfigError(lineno, "unknown key '" + key + "'");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(lineno, "malformed value for '" + key + "': " + e.what());
        }
    }
    ScalarLoop* xs[3] = {&ansatz.x1, &ansatz.x2, &ansatz.x3};
    for (int i = 0; i < 3; ++i) {
        if (coefs[i].empty()) continue;
        int lo = coefs[i].begin()->first;
        int hi = coefs[i].rbegin()->first;
        std::vector<cplx> dense(static_cast<size_t>(hi - lo + 1), cplx(0.0));
        for (auto& [k, c] : coefs[i]) dense[static_cast<size_t>(k - lo)] = c;
        *xs[i] = ScalarLoop(lo, std::move(dense));
    }
    return ansatz;
}

std::string to_csv_line(const Record& r) {
    std::string out = r.command;
    bool first = false;
    append_csv_field(out, r.phi, first);
    append_csv_field(out, r.genus, first);
    append_csv_field(out, r.s, first);
    append_csv_field(out, r.theta, first);
    append_csv_field(out, r.W, first);
    append_csv_field(out, r.V, first);
    append_csv_field(out, r.log_hol_re, first);
    append_csv_field(out, r.log_hol_im, first);
    out += "," + r.method;
    append_csv_field(out, r.residual, first);
    out += "," + format_double(r.runtime_ms);
    out += "," + r.status;
    return out;
}

}  // namespace cli
}  // namespace cmcvol
