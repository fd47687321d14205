#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fostab/interval.hpp"
#include "fostab/matrix.hpp"
#include "fostab/stability.hpp"

namespace fostab {

using Json = nlohmann::json;

/// On-disk description of a system under study: the order alpha, the
/// interval bounds, and optionally an embedded candidate certificate.
struct SystemFile {
    double alpha;
    IntervalMatrix interval;
    std::optional<ComplexMatrix> certificate;
};

/// Parses {"alpha": x, "lower": [[..]], "upper": [[..]]} with an optional
/// "certificate" entry holding {"p": [[{"re":..,"im":..}]]}. Structural
/// problems raise ConfigError; semantic problems raise the matching library
/// error (BoundsViolationError, OrderOutOfRangeError, ...).
SystemFile parse_system(const Json& doc);
SystemFile load_system(const std::string& path);

/// Parses a certificate document {"p": [[{"re":..,"im":..}]]}.
ComplexMatrix parse_certificate(const Json& doc);
ComplexMatrix load_certificate(const std::string& path);

Json complex_matrix_to_json(const ComplexMatrix& m);
Json real_matrix_to_json(const RealMatrix& m);

/// Entry point shared by the installed binary and the tests. Reports go to
/// `out`; diagnostics for rejected inputs go to `err` with exit code 3.
/// Verdict exit codes: 0 feasible/stable/pass, 1 infeasible/unstable/fail,
/// 2 unknown.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fostab
