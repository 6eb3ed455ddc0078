#pragma once

namespace deform::cli {

/// Exit codes: 0 success, 2 usage or validation error, 3 solver failure,
/// 4 inconclusive sweep.
int run(int argc, char** argv);

}  // namespace deform::cli
