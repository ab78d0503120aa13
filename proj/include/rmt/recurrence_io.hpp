// Text record of a RecurrenceTable (JSON), for caching tables between runs.
#pragma once

#include <string>

#include "rmt/orthopoly.hpp"

namespace rmt {

// Doubles are written with round-trip precision, so parse(serialize(t)) == t.
std::string serialize_recurrence(const RecurrenceTable& t);
RecurrenceTable parse_recurrence(const std::string& text);

// Stable key for (V, alpha, n, degree), usable as a cache file name.
std::string recurrence_cache_key(const Potential& p, const EnsembleParams& e, int degree);

}  // namespace rmt
