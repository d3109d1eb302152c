#pragma once

#include "oa/aberration.hpp"
#include "oa/catalog.hpp"
#include "oa/cone.hpp"
#include "oa/counting.hpp"
#include "oa/design.hpp"
#include "oa/errors.hpp"
#include "oa/fraction_union.hpp"
#include "oa/hilbert.hpp"
#include "oa/io.hpp"
#include "oa/parallel.hpp"
#include "oa/rational.hpp"
