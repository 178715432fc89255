#pragma once

// Flat key = value measure files:
//
//   support.kind = circle | interval | ellipse | lemniscate
//   support.params = 1                 # circle: r, or cx, cy, r
//                                      # interval: a, b
//                                      # ellipse: a, b [, cx, cy [, rotation]]
//                                      # lemniscate: re, im pairs, ascending
//   weight.A = 2
//   weight.B = 1
//   weight.jump_param = pi/2           # decimal or multiple of pi
//   weight.w0 = 1                      # or ascending coefficients in t
//   weight.reference = arclength       # or chebyshev (intervals only)
//   eval.z0 = auto-jump                # or re, im
//
// '#' starts a comment; values may be quoted; numbers are separated by
// commas and/or spaces.

#include <map>
#include <string>

#include "xlab/measure.hpp"

namespace xlab {

struct MeasureFile {
    std::map<std::string, std::string> entries;
    std::string origin;  // file name, for messages
};

/// Throws InputError with the line number on malformed lines, duplicate or
/// unknown keys.
MeasureFile parse_measure_text(const std::string& text, const std::string& origin = "<string>");
MeasureFile read_measure_file(const std::string& path);

/// Builds the measure. z0_override replaces eval.z0 ("auto-jump" or "re,im").
MeasureSpec build_measure(const MeasureFile& file, const std::string& z0_override = "");

/// "re,im" or "re im" as a complex number.
Complex parse_complex(const std::string& text);

}  // namespace xlab
