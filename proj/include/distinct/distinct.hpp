#ifndef DISTINCT_DISTINCT_HPP
#define DISTINCT_DISTINCT_HPP

#include "distinct/error.hpp"
#include "distinct/family.hpp"
#include "distinct/genpoly.hpp"
#include "distinct/linalg.hpp"
#include "distinct/locus.hpp"
#include "distinct/pattern.hpp"
#include "distinct/perturb.hpp"
#include "distinct/poly.hpp"
#include "distinct/resultant.hpp"

#endif  // DISTINCT_DISTINCT_HPP
