#pragma once

#include "partcount/counting.hpp"
#include "partcount/emulator.hpp"
#include "partcount/instance.hpp"

namespace partcount {

/// Dispatch a count to any backend. Formula and amplitude methods pick their
/// constrained variants automatically; physical and spectral reject
/// constrained instances.
CountResult count_by_method(const Instance& inst, CountMethod method,
                            const EmulatorConfig& cfg = {});

/// Parse a CLI method name: bruteforce|formula|dp|quantum|physical|spectral.
CountMethod parse_method_name(const std::string& name);

}  // namespace partcount
