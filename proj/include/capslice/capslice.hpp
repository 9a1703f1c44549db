#pragma once

#include "capslice/ap_analysis.hpp"
#include "capslice/bounds.hpp"
#include "capslice/capsearch.hpp"
#include "capslice/chain.hpp"
#include "capslice/clp.hpp"
#include "capslice/error.hpp"
#include "capslice/field.hpp"
#include "capslice/hypergraph.hpp"
#include "capslice/set_io.hpp"
#include "capslice/slice_rank.hpp"
#include "capslice/tensor.hpp"
