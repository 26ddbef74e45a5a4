#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "zpindex/json.hpp"
#include "zpindex/simplicial.hpp"

namespace zpindex {

/// {"p", "vertices", "perm", "simplices"}; simplices lists maximal simplices.
Json to_json(const FreeZpComplex& complex);

/// Inverse of to_json. The downward closure is recomputed and every
/// FreeZpComplex invariant is re-validated.
FreeZpComplex free_complex_from_json(const Json& j);

Json to_json(const HomologyProfile& profile);

/// 64-bit FNV-1a; used for stable content hashes in artifacts.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

/// Stable identifier of a complex: hash of its canonical JSON.
std::string content_id(const FreeZpComplex& complex);

}  // namespace zpindex
