#pragma once

#include <spdlog/spdlog.h>

namespace longtail {

/// Library logger ("longtail"), writing to stderr. Level comes from the
/// LONGTAIL_LOG environment variable (trace, debug, info, warn, error, off;
/// default warn).
spdlog::logger& log();

}  // namespace longtail
