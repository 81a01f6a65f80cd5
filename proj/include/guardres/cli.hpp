#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace guardres::cli {

enum ExitCode : int {
	kModelsFound = 0,
	kFailure     = 1,
	kUsage       = 2,
	kResource    = 3,
	kNoModels    = 10,
	kNotTight    = 11,
};

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace guardres::cli
