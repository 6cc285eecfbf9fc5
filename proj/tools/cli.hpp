// The `zipper` command line, callable in-process for tests.
//
//   zipper build     --template PDB --sequence XXXXXX --out PDB [--seed N] ...
//   zipper mutate    --in PDB --sequence XXXXXX --out PDB [--chain C]...
//   zipper transform --in PDB --chain C --out PDB (--matrix 9 reals --translate 3 reals | --sheet2)
//   zipper energy    --in PDB --report JSON [--sigma --epsilon --hb-c --hb-d]
//   zipper bench     --suite classic --dims 2,5,10 --runs 30 --report JSON [--seed N]
//
// Exit codes: 0 success, 1 domain failure (parse error, clash, failed
// benchmark cell), 2 usage error. Nothing is written on exit 2.

#ifndef ZIPPER_TOOLS_CLI_HPP_
#define ZIPPER_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace zipper::cli {

enum ExitCode { kSuccess = 0, kFailure = 1, kUsage = 2 };

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace zipper::cli

#endif
