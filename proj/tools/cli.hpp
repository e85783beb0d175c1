#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "zmc/report.hpp"

namespace zmc::cli {

/// Run the command line `args` (args[0] is the program name). Returns 0 when
/// every requested check passes, 1 on a failed check or computational error,
/// and 2 on a usage or parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "a", "bi", "a+bi", "a-bi" (i may stand alone), else any constant
/// expression accepted by the expression parser.
std::complex<double> parse_complex(std::string_view text);

/// A real constant expression; `pi` is available, e.g. "pi/6".
double parse_real(std::string_view text);

/// Comma-separated reals.
std::vector<double> parse_list(std::string_view text);

/// Report as JSON text (schema 1). The timestamp is the only field that may
/// differ between identical runs.
std::string report_json(const VerificationReport& report, std::string_view command);

}  // namespace zmc::cli
