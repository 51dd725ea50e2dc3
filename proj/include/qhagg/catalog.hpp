#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qhagg/aggregation.hpp"

namespace qhagg {

using CatalogParams = std::map<std::string, std::string, std::less<>>;

struct CatalogEntry {
    std::string name;
    std::vector<std::string> params;
    std::string description;
};

/// min, max, product, drastic, harmonic_min, flat, boundary_only.
const std::vector<CatalogEntry>& catalog_entries();

class CatalogError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Named aggregation functions:
///   drastic        T_D: min(x,y) when either argument is 1, else 0
///   harmonic_min   2xy/(x+y) for x <= y (y != 0), y otherwise
///   flat           params alpha, beta (numbers in [0,1])
///   boundary_only  params g, h (expressions)
/// Throws CatalogError for unknown names and missing, unexpected or
/// out-of-range params.
AggregationFunction catalog_lookup(std::string_view name, const CatalogParams& params = {});

}  // namespace qhagg
