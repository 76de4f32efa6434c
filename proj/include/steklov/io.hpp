#ifndef STEKLOV_IO_HPP
#define STEKLOV_IO_HPP

// Deterministic artifact emission. All floating-point values are printed
// with 9 significant digits so identical runs produce byte-identical files.

#include <string>
#include <utility>
#include <vector>

#include "steklov/bounds.hpp"
#include "steklov/spectrum.hpp"

namespace steklov {

/// Locale-independent "%.9g" with canonical "-0" and exponent cleanup.
std::string fmt9(double x);

/// Ordered key=value pairs embedded in artifacts (the run configuration).
using HeaderLines = std::vector<std::pair<std::string, std::string>>;

/// CSV with "# key = value" comment header and
/// "k,m,branch,sigma,lambda,certified" rows.
std::string spectrum_csv(const SpectrumTable& table, const HeaderLines& header);

/// JSON mirror of the same table with the header under "config".
std::string spectrum_json(const SpectrumTable& table, const HeaderLines& header);

/// CSV with "theorem,n,p,k,lhs,rhs,margin,verdict" rows.
std::string reports_csv(const std::vector<BoundReport>& reports,
                        const HeaderLines& header);

/// JSON mirror of the reports (includes tolerance, tag and note fields).
std::string reports_json(const std::vector<BoundReport>& reports,
                         const HeaderLines& header);

/// Two-column "r psi" text dump of a radial solution.
std::string radial_dump(const RadialSolution& sol);

/// Parses a two-column "r h" profile file. Lines starting with '#' and
/// blank lines are skipped. Throws ProfileInvalid on malformed content.
std::pair<std::vector<double>, std::vector<double>> parse_profile_file(
    const std::string& content);

}  // namespace steklov

#endif
