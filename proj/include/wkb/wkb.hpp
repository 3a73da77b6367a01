#pragma once

/* Umbrella header for the whole library. */

#include "wkb/cli.hpp"
#include "wkb/descent.hpp"
#include "wkb/errors.hpp"
#include "wkb/expr.hpp"
#include "wkb/json_io.hpp"
#include "wkb/multipoly.hpp"
#include "wkb/quantize.hpp"
#include "wkb/rational.hpp"
#include "wkb/symbol.hpp"
#include "wkb/text.hpp"
