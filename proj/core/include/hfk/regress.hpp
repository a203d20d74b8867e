#pragma once

#include <string>
#include <vector>

namespace hfk {

struct RegressResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Replays the worked examples as fixtures: the +1 trefoil bordered module
/// and its equivariant truncation diagram, the tensor-square decomposition,
/// the half-surgery classes of the figure eight, the lens-space table, and
/// the bordered/cone comparison.  An empty filter runs everything.
std::vector<RegressResult> run_regressions(const std::string& filter = "");

} // namespace hfk
