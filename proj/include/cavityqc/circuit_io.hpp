// circuit_io.hpp — Line-oriented text formats for circuits and native schedules.
//
// Circuit:
//   QUBITS <n>                       (optional; otherwise 1 + largest index)
//   SQ <target> <8 components>       u00re u00im u01re u01im u10re u10im u11re u11im
//   CZ <a> <b>
//   CU <control> <target> <8 components>
//
// Schedule:
//   LAYOUT <slots> <vacuum|plus>
//   PERM <site per logical qubit>     initial placement
//   FINAL <site per logical qubit>    placement after the last op
//   XY <s1> <s2> <s3>
//   MEAS <site> <id>
//   ROT <site> <8 components>
//   CONDZ <site> <id>
//
// '#' starts a comment; indices are 0-based; numbers are written with %.17g so
// a parse/format round trip is exact.

#pragma once

#include "cavityqc/compiler.hpp"

#include <string>

namespace cavityqc {

Circuit parse_circuit(const std::string& text);
std::string format_circuit(const Circuit& circuit);

NativeSchedule parse_schedule(const std::string& text);
std::string format_schedule(const NativeSchedule& schedule);

std::string format_number(double x);

}  // namespace cavityqc
