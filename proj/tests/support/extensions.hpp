#pragma once

#include <string>
#include <vector>

#include "cosys/sofic.hpp"

// Small central extensions realized as matrix groups over Z/p, acting on
// themselves by left multiplication. The alpha values in each extension are
// written by hand from the matrices and are not derived by library code.
namespace cosys::ext {

struct Example {
    std::string name;
    ExtensionSpec spec;
    AlmostHom phi;  // regular action of the extension group
    std::size_t order = 0;
};

std::vector<Example> library();
Example by_name(const std::string& name);

// Regular action of the subgroup of GL(k, Z/p) generated by the given
// matrices (row-major), points in breadth-first order from the identity.
AlmostHom regular_action(std::size_t k, std::uint32_t p, const std::vector<std::pair<char, std::vector<std::uint32_t>>>& gens);

}  // namespace cosys::ext
