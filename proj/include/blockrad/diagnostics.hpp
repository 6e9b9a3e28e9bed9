#pragma once

#include <functional>
#include <string>

namespace blockrad {

// Non-fatal warnings (under-resolved grids, window asymmetry, ...). The default handler
// writes to stderr; tests and tools may install their own.
using WarningHandler = std::function<void(const std::string&)>;

void set_warning_handler(WarningHandler handler);
void warn(const std::string& message);

}  // namespace blockrad
