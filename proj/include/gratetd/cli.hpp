#ifndef GRATETD_CLI_HPP
#define GRATETD_CLI_HPP

#include <string>
#include <vector>

namespace gratetd {

// Exit codes: 0 ok, 2 configuration/usage, 3 medium validation,
// 4 solver failure, 5 property/check failure.
int cli_main(const std::vector<std::string>& args);

} // namespace gratetd

#endif
