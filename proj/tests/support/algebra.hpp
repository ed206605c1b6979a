#pragma once

#include "aah/paperlist.hpp"

#include "generators.hpp"

#include <string>
#include <vector>

namespace aah::testing {

struct ListTriple {
  PaperList a;
  PaperList b;
  PaperList c;
  PaperList universe;
};

// Subsets of a shared universe in shuffled order; some shared ids carry
// different field values so record provenance is observable.
ListTriple random_triple(Rng& rng);

// Checks the set operations against a naive id-based model plus the algebraic
// laws. Returns one message per violated property.
std::vector<std::string> check_set_algebra(const ListTriple& t);

}  // namespace aah::testing
