#pragma once

#include <string>

namespace testenv {

// Path to the built CLI binary, handed to the test runner via --cli <path>.
extern std::string cli_path;

} // namespace testenv
