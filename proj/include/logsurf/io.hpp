#pragma once

// JSON scenario and trace files, id lists and DOT export.  Rationals always
// travel as "p/q" strings.

#include "logsurf/decompose.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace logsurf::io {

struct Scenario {
  CurveConfig config;
  std::optional<CurveSet> contracted;  // default contracted set
  std::optional<BaseDesignation> base;
};

/// Throws Error(Parse) on malformed documents.  The configuration is not
/// validated here.
Scenario parse_scenario(std::string_view text);
std::string dump_scenario(const Scenario& s);

/// FNV-1a 64 over the canonical dump of the configuration alone, as hex.
std::string scenario_digest(const CurveConfig& c);

struct TraceFile {
  std::string scenario_digest;
  DecompositionTrace trace;
};

inline constexpr std::string_view trace_format = "logsurf-trace/1";

TraceFile parse_trace(std::string_view text);
std::string dump_trace(const TraceFile& t);

/// Comma-separated curve names or ids; the empty string is the empty set.
CurveSet parse_id_list(const CurveConfig& c, std::string_view text);

/// "target:IDS" or "point".
BaseDesignation parse_base(const CurveConfig& c, std::string_view text);

/// Undirected dual graph; contracted curves are drawn boxed and filled.
std::string to_dot(const CurveConfig& c, const CurveSet& contracted);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace logsurf::io
