#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmcvol {
namespace cli {

enum class Method { Lev, Regularizing, Darboux };
enum class Format { JsonLines, Csv };

struct RunConfig {
    std::string command;
    double phi{3.14159265358979323846 / 4.0};
    int genus{50};
    int degree{3};
    int samples{8};
    double ode_tol{1e-10};
    double quad_tol{1e-10};
    double solver_tol{1e-6};  // matched to the default truncation degree
    Method method{Method::Lev};
    Format format{Format::JsonLines};
    std::string output;  // empty: stdout
};

/// Error in the flat key=value config text; carries the 1-based line number.
struct ConfigError : std::runtime_error {
    int line;
    ConfigError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

/// Angles in radians, accepting `pi`-rational literals: "pi", "pi/4",
/// "3pi/8", "0.7853981".
double parse_angle(const std::string& text);

/// One `key = value` pair per line, `#` comments. Unknown keys, malformed
/// values and range violations raise ConfigError with the line number.
RunConfig parse_config(const std::string& text);

std::string method_name(Method m);
std::string format_name(Format f);

/// One emitted result row. Optional fields render as null (json) or an
/// empty cell (csv); both formats share the exact decimal rendering.
struct Record {
    std::string command;
    std::optional<double> phi, genus, s, theta, W, V, log_hol_re, log_hol_im;
    std::string method;
    std::optional<double> residual;
    double runtime_ms{0.0};
    std::string status{"ok"};
};

/// Shortest round-trip decimal rendering (IEEE-754 faithful).
std::string format_double(double v);

std::string to_json_line(const Record& r);
std::string csv_header();
std::string to_csv_line(const Record& r);

}  // namespace cli
}  // namespace cmcvol

namespace cmcvol {
struct LawsonAnsatz;
namespace cli {

/// Ansatz coefficients in the flat config grammar: `phi`, `s` and one
/// `x<i>.<degree> = <re> <im>` pair per stored coefficient.
std::string serialize_ansatz(const LawsonAnsatz& ansatz);
LawsonAnsatz parse_ansatz(const std::string& text);

}  // namespace cli
}  // namespace cmcvol
