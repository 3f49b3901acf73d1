#pragma once

#include <string>
#include <string_view>

#include "surf/dsl/ast.hpp"
#include "surf/report.hpp"

namespace surf::dsl {

/// Executes a parsed script. Engine errors inside an assert fail that assert;
/// any other error stops execution and is recorded in Report::errors.
Report run_script(const Script& script, const std::string& scenario);

/// Parses then runs. Parse diagnostics land in Report::errors.
Report execute_text(std::string_view text, const std::string& scenario);

}  // namespace surf::dsl
