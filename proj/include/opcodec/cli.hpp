#pragma once

#include <string>
#include <vector>

namespace opcodec {

/// Entry point behind the command-line binary. Returns the process exit
/// code: 0 on success, 1 on runtime failure, 2 on bad flags.
int cli_main(const std::vector<std::string>& args);

}  // namespace opcodec
