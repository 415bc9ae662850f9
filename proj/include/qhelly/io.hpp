#ifndef QHELLY_IO_HPP
#define QHELLY_IO_HPP

/*! \file
    \brief JSON reading and writing.

    Polytopes use {"dim": d, "hrep": [{"a": [...], "b": x}, ...]} and/or
    {"dim": d, "vrep": [[...], ...]}. Matrices are arrays of rows. Numbers
    are written in the shortest form that parses back to the same double;
    non-finite values are written as null.
*/

#include "qhelly/core.hpp"
#include "qhelly/generate.hpp"
#include "qhelly/helly.hpp"
#include "qhelly/john.hpp"
#include "qhelly/oracle.hpp"
#include "qhelly/sparse_select.hpp"
#include "qhelly/suite.hpp"

#include <json.hpp>

#include <string>

namespace qhelly::io {

using Json = nlohmann::ordered_json;

Json to_json(const Vec& v);
Json to_json(const Mat& m);
Json to_json(const HPolytope& h);
Json to_json(const VPolytope& v);
Json to_json(const Instance& inst);
Json to_json(const SelectionCertificate& cert);
Json to_json(const VerifyResult& result);
Json to_json(const HellyReport& report);
Json to_json(const JohnResult& john);
Json to_json(const OracleResult& result);
Json to_json(const MutationOutcome& outcome);
Json to_json(const SuiteSummary& summary);

/// Both parsers throw InvalidArgument with the offending key on malformed input.
Instance instance_from_json(const Json& j);
SelectionCertificate certificate_from_json(const Json& j);

/// "-" reads stdin. Throws InvalidArgument on unreadable files or bad JSON.
Json read_json(const std::string& path);
/// Two-space indented dump plus a trailing newline; "-" writes stdout.
void write_json(const std::string& path, const Json& j);
std::string dump(const Json& j);

}  // namespace qhelly::io

#endif  // QHELLY_IO_HPP
