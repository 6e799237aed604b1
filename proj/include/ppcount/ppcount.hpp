#pragma once

#include "ppcount/error.hpp"
#include "ppcount/modarith.hpp"
#include "ppcount/unipoly.hpp"
#include "ppcount/curve.hpp"
#include "ppcount/fpcount.hpp"
#include "ppcount/counter.hpp"
#include "ppcount/parse.hpp"
#include "ppcount/tree_export.hpp"
