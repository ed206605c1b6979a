#pragma once

#include "aah/model.hpp"
#include "aah/query.hpp"

#include <random>
#include <vector>

namespace aah::testing {

struct TableData;

using Rng = std::mt19937_64;

// Valid, normalized records with mixed-case and non-ASCII text, and literal
// '%' / '_' characters so LIKE patterns have something to trip over.
PaperRecord random_paper(Rng& rng, int serial);
std::vector<PaperRecord> random_papers(Rng& rng, int count);
std::vector<ConferenceRecord> random_conferences(Rng& rng, int count);

// A chain of one to six builder calls on a random table, biased towards
// values present in `data`. The result may be invalid; callers retry.
query::Builder random_chain(Rng& rng, const TableData& data);

}  // namespace aah::testing
