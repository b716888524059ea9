#pragma once

#include <string>
#include <vector>

#include "qseries/congruence.hpp"

namespace qseries {

/* The data-driven claim registry: interpretations, congruence families and
 * plain progressions, and displayed intermediate steps. Ships as JSON so new
 * conjectures can be registered without a rebuild. */
struct Registry {
    std::vector<InterpretationCheck> interpretations;
    std::vector<CongruenceCheck> congruences;
    std::vector<IntermediateCheck> intermediates;
};

Registry load_registry(const std::string &path);
Registry parse_registry(const std::string &json_text);

} // namespace qseries
