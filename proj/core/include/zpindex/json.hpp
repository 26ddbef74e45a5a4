#pragma once

#ifdef ZPINDEX_VENDORED_JSON
#include <json.hpp>
#else
#include <nlohmann/json.hpp>
#endif

namespace zpindex {
using Json = nlohmann::json;
}
