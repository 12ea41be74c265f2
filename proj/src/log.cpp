#include "longtail/log.hpp"

#include <cstdlib>
#include <memory>

#include <spdlog/sinks/stdout_color_sinks.h>

namespace longtail {

spdlog::logger& log() {
    static const std::shared_ptr<spdlog::logger> logger = [] {
        auto l = spdlog::stderr_color_mt("longtail");
        l->set_pattern("[%l] %v");
        spdlog::level::level_enum level = spdlog::level::warn;
        if (const char* env = std::getenv("LONGTAIL_LOG")) level = spdlog::level::from_str(env);
        l->set_level(level);
        return l;
    }();
    return *logger;
}

}  // namespace longtail
