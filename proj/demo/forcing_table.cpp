// Library usage example: compute 2-color forcing numbers for a few catalog
// configurations and print a small table.
#include <iostream>

#include "rampr/search.hpp"

using namespace rampr;

int main() {
    std::cout << "configuration        forcing number (2 colors)\n";
    for (const char* name : {"schur-classical", "3ap-distinct"}) {
        auto cfg = *catalog_lookup(name);
        search::SearchStats stats;
        auto n = search::forcing_number(cfg, 2, 20, FunctionTable::builtins(),
                                        search::Budget{}, stats);
        std::cout << name << std::string(21 - std::string(name).size(), ' ')
                  << (n ? std::to_string(*n) : "> 20") << "  (" << stats.nodes << " nodes)\n";
    }
    return 0;
}
