// Library usage example: track how the maximum finite Ramsey set for x+y=z
// grows with the bound under a seeded random 2-coloring, against the flat
// curve of the sum-product configuration under its obstruction coloring.
#include <iostream>

#include "rampr/search.hpp"

using namespace rampr;

int main() {
    auto schur = *catalog_lookup("schur");
    auto psp = *catalog_lookup("pairwise-sum-product");
    auto obstruction = parse_descriptor_spec("tuple(vpmod(2,4),lmmod(2,4),resmod(3))");

    std::cout << "N      x+y=z (random seed 7)   sum-product (obstruction)\n";
    for (uint64_t N : {100, 400, 1600}) {
        auto grow = search::max_ramsey_set(schur, Coloring::random(7, 2, N), N,
                                           search::HMode::Uniform, FunctionTable::builtins(),
                                           search::Budget{});
        auto flat = search::max_ramsey_set(psp, Coloring::from_invariant(obstruction, N), N,
                                           search::HMode::PerPair, FunctionTable::builtins(),
                                           search::Budget{});
        std::cout << N << std::string(7 - std::to_string(N).size(), ' ') << "|H| = "
                  << grow.size << "                 |H| = " << flat.size << "\n";
    }
    return 0;
}
