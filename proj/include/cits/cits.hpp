#ifndef CITS_CITS_HPP
#define CITS_CITS_HPP

#include "cits/anneal.hpp"
#include "cits/bench.hpp"
#include "cits/cim.hpp"
#include "cits/config.hpp"
#include "cits/errors.hpp"
#include "cits/experiment.hpp"
#include "cits/graph.hpp"
#include "cits/oracle.hpp"
#include "cits/plot.hpp"
#include "cits/tree_search.hpp"

#endif  // CITS_CITS_HPP
