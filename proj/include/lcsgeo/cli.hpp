#ifndef LCSGEO_CLI_HPP
#define LCSGEO_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace lcsgeo {

/// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitEventFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct PaperCheckRow {
  std::string name;
  std::string expected;
  std::string got;
  bool pass = false;
};

/// The worked examples and numeric scenarios, recomputed with the library.
std::vector<PaperCheckRow> run_paper_check();

}  // namespace lcsgeo

#endif  // LCSGEO_CLI_HPP
