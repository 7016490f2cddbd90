#pragma once

// Property and oracle checks shared by the unit tests and the acceptance gate.

#include <lbga/graph.hpp>

#include <string>
#include <vector>

namespace lbga::checks {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Small three-block, four-layer collection with some edges in every layer.
GraphCollection smallCollection(std::uint64_t seed);

Check learnedWithinUnion();
Check unanimousEdgesKept();
Check singleLayerIsIdentity();
Check probabilitiesInRange();
Check freezingIsMonotone();
Check rerunsAreIdentical();
std::vector<Check> propertySuite();

Check modularityMatchesBruteForce();
Check nmiMatchesEntropyFormula();
Check walktrapSplitsTwoCliques();
Check walktrapRecoversTwoBlocks();
std::vector<Check> oracleSuite();

} // namespace lbga::checks
