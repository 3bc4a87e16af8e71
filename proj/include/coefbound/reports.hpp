#pragma once

// CSV and JSON writers for suite rows, the bounds table and expand results.
// Output depends only on the rows, so reruns are byte-identical; timings are
// left to the caller.

#include <ostream>
#include <vector>

#include "coefbound/harness.hpp"

namespace coefbound {

enum class Format { Csv, Json };

void write_suite(std::ostream& out, const std::vector<SuiteReport>& rows, Format format);
void write_bounds(std::ostream& out, const std::vector<BoundsRow>& rows, Format format);

template <Scalar S>
void write_expand(std::ostream& out, const ExpandResult<S>& result, Format format);

/// RFC 4180 quoting, applied only when the field needs it.
std::string csv_field(std::string_view text);

}  // namespace coefbound
